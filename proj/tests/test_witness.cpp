#include <doctest.h>

#include "support.hpp"

using namespace testing;

namespace {

// (c, l) with f_t = sum c (l + t m)^3 for the wild cubic
ParamPoly wild_family() {
  const VarTable t = wild_table();
  const VarTable tt({"x0", "x1", "y0", "y1", "y2", "t"});
  const Poly ft = P("1/3*(x0+t*y0)^3 - 1/3*((x0+x1)+t*y1)^3 - 1/12*(2*x1-t*y2)^3 - 1/9*(x0-x1)^3 + 1/9*(x0+2*x1)^3",
                    tt);
  return ParamPoly::split_parameter(ft, 5, t);
}

}  // namespace

TEST_CASE("tangent family in degree 2") {
  const VarTable xy({"x", "y"});
  std::vector<TangentDatum> data{{-2, P("x", xy), P("y", xy)},
                                 {-2, P("y", xy), Poly(xy, Ring::Primal)},
                                 {1, P("x+y", xy), Poly(xy, Ring::Primal)},
                                 {1, P("x-y", xy), Poly(xy, Ring::Primal)}};
  const auto fam = tangent_limit_family(data, 2);
  CHECK(fam.limit == P("-4*x*y", xy));
  CHECK(fam.r == 4);
  CHECK(verify_limit(fam.family, 1, fam.limit));
  CHECK(fam.border_upper.value == 4);

  for (auto& d : data) d.direction = Poly(xy, Ring::Primal);
  CHECK(tangent_limit_family(data, 2).limit.is_zero());
}

TEST_CASE("tangent family requires dependent points") {
  const VarTable xy({"x", "y"});
  const std::vector<TangentDatum> data{{1, P("x", xy), P("y", xy)}, {1, P("y", xy), P("x", xy)}};
  CHECK_THROWS_AS(tangent_limit_family(data, 3), InputError);
  const std::vector<TangentDatum> bad{{1, P("x^2", xy), P("y", xy)}};
  CHECK_THROWS_AS(tangent_limit_family(bad, 3), InputError);
}

TEST_CASE("the wild family has the wild cubic as first-order limit") {
  const auto fam = wild_family();
  CHECK(fam.coefficient(0).is_zero());
  CHECK(verify_limit(fam, 1, wild()));
  CHECK_FALSE(verify_limit(fam, 0, wild()));
  CHECK_FALSE(verify_limit(fam, 2, wild()));
  CHECK(limit_order(fam) == 1);
  CHECK(verify_limit_auto(fam, wild()));
  CHECK(fam.max_power() == 3);
}

TEST_CASE("ParamPoly evaluation agrees with substitution") {
  const auto fam = wild_family();
  for (int k = -2; k <= 2; ++k) {
    Rational s(k, 3);
    s.canonicalize();
    Poly sum(fam.table(), Ring::Primal);
    Rational tp = 1;
    for (int e = 0; e <= 3; ++e) {
      sum = add(sum, scale(fam.coefficient(e), tp));
      tp *= s;
    }
    CHECK(fam.evaluate(s) == sum);
  }
  CHECK(fam.shift(-1).min_power() == 0);
}

TEST_CASE("double points") {
  const auto t = wild_table();
  const std::vector<std::pair<Poly, Poly>> pairs{
      {P("x0", t), P("y0", t)}, {P("x0+x1", t), P("-y1", t)}, {P("x1", t), P("y2", t)}};
  const auto span = double_point_span(wild(), pairs);
  REQUIRE(span);
  CHECK(span->a == std::vector<Rational>{0, 0, 0});
  CHECK(span->b == std::vector<Rational>{1, 1, 1});
  CHECK(span->length == 6);
  CHECK(span->recombine(3) == wild());

  const VarTable x({"x"});
  const std::vector<std::pair<Poly, Poly>> one{{P("x", x), Poly(x, Ring::Primal)}};
  const auto s1 = double_point_span(P("x^3", x), one);
  REQUIRE(s1);
  CHECK(s1->a[0] == 1);

  const VarTable v = vars(3);
  const std::vector<std::pair<Poly, Poly>> single{{P("x0", v), P("x1", v)}};
  CHECK_FALSE(double_point_span(P("x0^3 + x1^3 + x2^3", v), single));
}

TEST_CASE("direct sums") {
  const VarTable t = vars(2);
  const auto rep = direct_sum_extend(P("x0^3", t), P("x1^3", t));
  CHECK(rep.concise_sum == 2);
  CHECK(rep.concise_additive());
  CHECK(rep.slices_equal);
  CHECK(rep.slice_sum.dim() == 1);
  CHECK_THROWS_AS(direct_sum_extend(P("x0^3", t), Poly(t, Ring::Primal)), InputError);
  CHECK_THROWS_AS(direct_sum_extend(P("x0^3", t), P("x0*x1^2", t)), InputError);
  CHECK_THROWS_AS(direct_sum_extend(P("x0^3", t), P("x1^2", t)), InputError);
}

TEST_CASE("wild cubic plus a cube in a new variable") {
  const VarTable t({"x0", "x1", "y0", "y1", "y2", "y3"});
  const Poly f = parse_poly(kWild, t);
  const auto rep = direct_sum_extend(f, P("y3^3", t));
  CHECK(rep.concise_f == 5);
  CHECK(rep.concise_g == 1);
  CHECK(rep.concise_sum == 6);
  CHECK(rep.slices_equal);
  CHECK(rep.slice_sum.dim() == 15);
}

TEST_CASE("variable support") {
  const auto t = wild_table();
  CHECK(variable_support(wild()) == std::vector<std::size_t>{0, 1, 2, 3, 4});
  CHECK(variable_support(P("x1*y2", t)) == std::vector<std::size_t>{1, 4});
}

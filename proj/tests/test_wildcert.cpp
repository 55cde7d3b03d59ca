#include <doctest.h>

#include "support.hpp"

using namespace testing;

namespace {

VarTable six() { return VarTable({"x0", "x1", "y0", "y1", "y2", "y3"}); }
Poly wild_plus_cube() { return parse_poly(std::string(kWild) + " + y3^3", six()); }

std::vector<Poly> dual_vars(const VarTable& t, std::initializer_list<std::size_t> idx) {
  std::vector<Poly> out;
  for (auto i : idx) out.push_back(Poly::variable(t, Ring::Dual, i));
  return out;
}

bool proportional(const QVector& a, const QVector& b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a.size(); ++j)
      if (a[i] * b[j] != a[j] * b[i]) return false;
  return !is_zero(a) && !is_zero(b);
}

}  // namespace

TEST_CASE("cactus lower bound from the degree-2 slice") {
  const auto ev = cactus_lower_via_slice(wild());
  REQUIRE(ev.bound);
  CHECK(*ev.bound == 6);
  CHECK(ev.slice_codim == 5);
  CHECK(ev.concise == 5);
  CHECK(ev.ann2.dim() == 10);
  CHECK(ev.saturating_forms.size() == 3);
  CHECK(ev.saturated_h1 == 2);
  CHECK(verify(ev, wild()));

  auto tampered = ev;
  tampered.bound = 7;
  CHECK_FALSE(verify(tampered, wild()));
  tampered = ev;
  tampered.saturating_forms.push_back(Poly::variable(wild_table(), Ring::Dual, 0));
  CHECK_FALSE(verify(tampered, wild()));
}

TEST_CASE("cactus lower bound examples") {
  const VarTable t = vars(3);
  CHECK_FALSE(cactus_lower_via_slice(P("x0^3 + x1^3 + x2^3", t)).bound.has_value());
  const auto ev = cactus_lower_via_slice(wild_plus_cube());
  REQUIRE(ev.bound);
  CHECK(*ev.bound == 7);
  CHECK(ev.ann2.dim() == 15);
  CHECK(ev.saturated_h1 == 3);
  CHECK(verify(ev, wild_plus_cube()));
  CHECK_THROWS_AS(cactus_lower_via_slice(P("x0^2 + x1^2", t)), InputError);
}

TEST_CASE("linear saturation space") {
  const auto t = wild_table();
  const auto gens = ann_slice(wild(), 2).basis;
  const auto gamma = linear_saturation_space(t, gens, 3);
  CHECK(gamma == dual_vars(t, {2, 3, 4}));
  CHECK(linear_saturation_space(t, gens, 1).empty());
  const VarTable t6 = six();
  const auto g6 = linear_saturation_space(t6, ann_slice(wild_plus_cube(), 2).basis, 3);
  CHECK(g6 == dual_vars(t6, {2, 3, 4}));
}

TEST_CASE("product locus of the wild cubic is a smooth conic") {
  const auto t = wild_table();
  const std::vector<std::size_t> beta{2, 3, 4}, alpha{0, 1};
  const auto loc = product_locus(wild(), beta, alpha);
  CHECK(loc.shape == LocusShape::Conic);
  REQUIRE(loc.conic);
  const VarTable a({"a0", "a1", "a2"});
  CHECK(*loc.conic == P("a0*a1 - a0*a2 + a1*a2", a));
  CHECK(loc.samples.size() >= 5);
  CHECK(loc.fit_agrees);
  for (const auto& s : loc.samples) {
    CHECK(evaluate(*loc.conic, s.a) == 0);
    Poly beta_a(t, Ring::Dual), alpha_c(t, Ring::Dual);
    for (std::size_t i = 0; i < 3; ++i) beta_a = add(beta_a, scale(loc.beta_forms[i], s.a[i]));
    for (std::size_t i = 0; i < 2; ++i) alpha_c = add(alpha_c, scale(loc.alpha_forms[i], s.c[i]));
    CHECK(contract(multiply(beta_a, alpha_c), wild()).is_zero());
  }
}

TEST_CASE("product locus of a four-variable cubic") {
  const VarTable t({"x0", "x1", "y0", "y1"});
  const Poly f = P("x0^2*y0 + x1^2*y1", t);
  const std::vector<std::size_t> beta{2, 3}, alpha{0, 1};
  const auto loc = product_locus(f, beta, alpha);
  CHECK(loc.shape == LocusShape::NotConic);
  CHECK_FALSE(loc.diagnostic.empty());
  bool seen = false;
  for (const auto& s : loc.samples)
    if (proportional(s.a, QVector{1, 0})) {
      seen = true;
      CHECK(proportional(s.c, QVector{0, 1}));
    }
  CHECK(seen);
  const auto bf = dual_vars(t, {2, 3}), af = dual_vars(t, {0, 1});
  const auto c = solve_product(f, bf, af, QVector{1, 0});
  REQUIRE(c);
  CHECK(proportional(*c, QVector{0, 1}));
}

TEST_CASE("conic points and rational point search") {
  const VarTable a({"a0", "a1", "a2"});
  const Poly q = P("a0*a1 - a0*a2 + a1*a2", a);
  const auto p = find_rational_point(q);
  REQUIRE(p);
  CHECK(evaluate(q, *p) == 0);
  for (int k = -3; k <= 3; ++k) {
    const QVector x = conic_point(q, *p, QVector{1, 0, 0}, QVector{0, 1, 1}, Rational(k));
    CHECK(evaluate(q, x) == 0);
  }
  CHECK(find_rational_point(P("a0^2 + a1^2 + a2^2", a)) == std::nullopt);
  const auto circle = find_rational_point(P("a0^2 + a1^2 - 2*a2^2", a));
  REQUIRE(circle);
  CHECK(evaluate(P("a0^2 + a1^2 - 2*a2^2", a), *circle) == 0);
}

TEST_CASE("gamma spaces") {
  const auto t = wild_table();
  const auto beta = dual_vars(t, {2, 3, 4});
  const auto g = gamma_space(wild(), beta, QVector{1, 0, 0});
  CHECK(g.dim == 4);
  CHECK(g.basis == dual_vars(t, {1, 2, 3, 4}));
  const auto g2 = gamma_space(wild(), beta, QVector{0, 0, 1});
  CHECK(g2.dim == 4);
  const auto basis = monomials_of_degree(5, 1);
  std::vector<QVector> vs;
  for (const auto& b : g2.basis) vs.push_back(coefficient_vector(b, basis));
  CHECK(in_span(coefficient_vector(D("a0", t), basis), vs));
  CHECK_THROWS_AS(gamma_space(wild(), beta, QVector{0, 0, 0}), InputError);
  CHECK(common_gamma_space(wild(), beta).basis == beta);
}

TEST_CASE("forced squares") {
  const auto t = wild_table();
  CHECK(forced_square_check(wild(), dual_vars(t, {2, 3, 4})));
  CHECK(forced_square_check(wild_plus_cube(), dual_vars(six(), {2, 3, 4, 5})));
  const VarTable v = vars(3);
  CHECK_FALSE(forced_square_check(P("x0^3 + x1^3 + x2^3", v), dual_vars(v, {1})));
}

TEST_CASE("squares in the beta span") {
  const auto t = wild_table();
  CHECK(squares_in_span(wild(), dual_vars(t, {2, 3, 4}), dual_vars(t, {0, 1})));
  const VarTable v({"x0", "x1", "y0"});
  CHECK_FALSE(squares_in_span(P("x0*x1*y0", v), dual_vars(v, {2}), dual_vars(v, {0, 1})));
}

TEST_CASE("rank lower certificate for the wild cubic") {
  const auto out = rank9_lower_cert(wild(), 8);
  REQUIRE(out.certificate);
  const auto& cert = *out.certificate;
  CHECK(out.failing_stage.empty());
  CHECK(cert.rank_lower == 9);
  CHECK(cert.ann2_dim == 10);
  CHECK(cert.locus.samples.size() >= 5);
  for (auto d : cert.gamma_dims) CHECK(d == 4);
  CHECK(cert.stages.size() == 7);
  for (const auto& s : cert.stages) CHECK(s.passed);
  CHECK(verify(cert, wild()));

  auto tampered = cert;
  tampered.gamma_dims.back() = 3;
  CHECK_FALSE(verify(tampered, wild()));
  tampered = cert;
  tampered.locus.samples.front().c[0] += 1;
  CHECK_FALSE(verify(tampered, wild()));

  const auto small = rank9_lower_cert(wild(), 4);
  REQUIRE(small.certificate);
  CHECK(small.certificate->rank_lower == 5);
}

TEST_CASE("rank lower certificate fails for a diagonal cubic") {
  const VarTable v = vars(3);
  const auto out = rank9_lower_cert(P("x0^3 + x1^3 + x2^3", v), 8);
  CHECK_FALSE(out.certificate);
  CHECK(out.failing_stage == "a:slice_shape");
  CHECK_FALSE(out.log.empty());

  const VarTable v5 = vars(5);
  const Poly d5 = P("x0^3 + x1^3 + x2^3 + x3^3 + x4^3", v5);
  CHECK(ann_slice(d5, 2).dim() == 10);
  const auto out5 = rank9_lower_cert(d5, 8);
  CHECK_FALSE(out5.certificate);
  CHECK(out5.failing_stage == "a:slice_shape");
}

TEST_CASE("power sum from z^2 w shape") {
  const VarTable t({"x0", "y0"});
  const std::vector<std::pair<Poly, Poly>> shape{{P("x0", t), P("y0", t)}};
  const auto ps = rank9_upper(P("x0^2*y0", t), shape);
  CHECK(ps.forms.size() == 3);
  CHECK(ps.recombine(t) == P("x0^2*y0", t));
  const Poly expect = scale(power(P("x0+y0", t), 3), Rational(1, 6)) - scale(power(P("x0-y0", t), 3), Rational(1, 6)) -
                      scale(power(P("y0", t), 3), Rational(1, 3));
  CHECK(expect == P("x0^2*y0", t));
  for (std::size_t i = 0; i < ps.forms.size(); ++i) {
    const Poly term = scale(power(ps.forms[i], 3), ps.coeffs[i]);
    const bool known = term == scale(power(P("x0+y0", t), 3), Rational(1, 6)) ||
                       term == scale(power(P("x0-y0", t), 3), Rational(-1, 6)) ||
                       term == scale(power(P("y0", t), 3), Rational(-1, 3));
    CHECK(known);
  }
  CHECK_THROWS_AS(rank9_upper(P("x0^3", t), shape), InputError);
}

TEST_CASE("wild structure and nine cubes") {
  const auto ws = discover_wild_structure(wild());
  REQUIRE(ws);
  CHECK(ws->beta_forms.size() == 3);
  CHECK(ws->x_forms.size() == 2);
  CHECK(ws->shape.size() == 3);
  const auto ps = rank9_upper(wild(), ws->shape);
  CHECK(ps.forms.size() == 9);
  CHECK(ps.recombine(wild_table()) == wild());
  const auto fam = tangent_limit_family(ws->tangent_data, 3);
  CHECK(fam.limit == wild());
  CHECK(fam.r == 5);

  const VarTable v = vars(3);
  CHECK_FALSE(discover_wild_structure(P("x0^3 + x1^3 + x2^3", v)));
}

TEST_CASE("full report for the wild cubic") {
  const auto rep = theorem2_report(wild());
  CHECK(rep.concise == 5);
  CHECK(rep.hilbert.values == std::vector<std::size_t>{1, 5, 5, 1});
  CHECK(rep.final[RankNotion::Border].exact() == 5u);
  CHECK(rep.final[RankNotion::Cactus].exact() == 6u);
  CHECK(rep.final[RankNotion::Smoothable].exact() == 6u);
  CHECK(rep.final[RankNotion::Rank].exact() == 9u);
  CHECK(rep.border_witness_verified);
  REQUIRE(rep.double_points);
  CHECK(rep.double_points->length == 6);
}

TEST_CASE("full report for small examples") {
  const VarTable t = vars(5);
  const auto r = theorem2_report(P("x0^2*x1", t));
  CHECK(r.concise == 2);
  CHECK(r.final[RankNotion::Border].exact() == 2u);
  CHECK(r.final[RankNotion::Rank].exact() == 3u);
  REQUIRE(r.sylvester);

  const auto q = theorem2_report(P("x0*x1 + x2^2", t));
  CHECK(q.final[RankNotion::Rank].exact() == 3u);
  CHECK(q.final[RankNotion::Border].exact() == 3u);
}

TEST_CASE("full report for the wild cubic plus a cube") {
  const auto rep = theorem2_report(wild_plus_cube());
  CHECK(rep.concise == 6);
  CHECK(rep.final[RankNotion::Border].exact() == 6u);
  REQUIRE(rep.final[RankNotion::Cactus].lower);
  CHECK(*rep.final[RankNotion::Cactus].lower >= 7);
  CHECK(rep.final[RankNotion::Rank].upper == 10u);
  REQUIRE(rep.direct_sum);
  CHECK(rep.direct_sum->slices_equal);
}

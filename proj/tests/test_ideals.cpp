#include <doctest.h>

#include "support.hpp"

using namespace testing;

namespace {

std::vector<Poly> ann2_generators() { return ann_slice(wild(), 2).basis; }

std::vector<Poly> duals(const VarTable& t, std::initializer_list<const char*> texts) {
  std::vector<Poly> out;
  for (const char* s : texts) out.push_back(D(s, t));
  return out;
}

}  // namespace

TEST_CASE("membership of a0^3*b0 with a re-expanding certificate") {
  const auto t = wild_table();
  const auto gens = ann2_generators();
  const Poly target = D("a0^3*b0", t);
  auto cert = membership(target, gens);
  REQUIRE(cert);
  CHECK(cert->verify());
  CHECK(cert->recombine() == target);
}

TEST_CASE("a hand certificate for a0^3*b0") {
  const auto t = wild_table();
  const Poly phi1 = D("a1*b0", t), phi2 = D("a0*b2", t), phi3 = D("-a0*b1 + a1*b1", t),
             phi4 = D("a0*b0 + a0*b1 + a1*b2", t);
  const Poly sum = D("a0^2 - a0*a1", t) * phi4 - D("a0*a1 - a1^2", t) * phi2 + D("a0^2", t) * phi3 +
                   D("a0^2", t) * phi1;
  CHECK(sum == D("a0^3*b0", t));
}

TEST_CASE("membership fails outside the ideal") {
  const auto t = wild_table();
  const auto gens = ann2_generators();
  CHECK_FALSE(membership(D("a0^3", t), gens));
  CHECK_FALSE(membership(D("a0*a1", t), gens));
  auto zero = membership(Poly(t, Ring::Dual), gens);
  REQUIRE(zero);
  CHECK(zero->verify());
}

TEST_CASE("generated slices of the wild annihilator") {
  const auto t = wild_table();
  const auto gens = ann2_generators();
  CHECK(generated_slice(t, gens, 2).dim() == 10);
  CHECK(generated_slice(t, gens, 3).dim() == 30);
  CHECK(generated_slice(t, gens, 4).dim() == 65);
  CHECK(ann_slice(wild(), 4).dim() == 70);
}

TEST_CASE("saturation witnesses") {
  const auto t = wild_table();
  const auto gens = ann2_generators();
  const auto b = duals(t, {"b0", "b1", "b2"});
  for (const auto& g : b) {
    CHECK(saturation_witness(gens, g, 3));
    CHECK_FALSE(saturation_witness(gens, g, 1));
  }
  CHECK_FALSE(saturation_witness(gens, D("a0", t), 3));
  CHECK(saturation_obstruction(gens, D("a0", t), 3).has_value());

  const VarTable one({"x"});
  const std::vector<Poly> sq{D("d_x^2", one)};
  CHECK_FALSE(saturation_witness(sq, D("d_x", one), 0));
  CHECK(saturation_witness(sq, D("d_x", one), 1));

  const auto two = wild_table();
  const std::vector<Poly> b0sq{D("b0^2", two)};
  CHECK_FALSE(saturation_witness(b0sq, D("b0", two), 1));
}

TEST_CASE("quotient Hilbert functions") {
  const auto t = wild_table();
  const auto b = duals(t, {"b0", "b1", "b2"});
  const auto hb = quotient_hilbert(t, b, 3);
  CHECK(hb == std::vector<std::size_t>{1, 2, 3, 4});

  const auto free = quotient_hilbert(t, std::vector<Poly>{}, 4);
  for (unsigned i = 0; i <= 4; ++i) CHECK(Integer(static_cast<unsigned long>(free[i])) == binomial(Integer(4 + i), i));

  const auto h = quotient_hilbert(t, ann2_generators(), 4);
  CHECK(h == std::vector<std::size_t>{1, 5, 5, 5, 5});
}

TEST_CASE("Macaulay representations and bounds") {
  CHECK(macaulay_bound(5, 2) == 7);
  CHECK(macaulay_bound(5, 3) == 6);
  CHECK(macaulay_bound(1, 1) == 1);
  CHECK(macaulay_bound(3, 1) == 6);
  const auto rep = macaulay_representation(5, 2);
  REQUIRE(rep.size() == 2);
  CHECK(rep[0] == std::pair<Integer, unsigned>{3, 2});
  CHECK(rep[1] == std::pair<Integer, unsigned>{2, 1});
  CHECK_THROWS_AS(macaulay_representation(4, 0), InputError);
  CHECK(binomial(3, 5) == 0);
  CHECK(binomial(-1, 2) == 0);
}

TEST_CASE("Macaulay representation reassembles h") {
  for (long h = 1; h <= 300; ++h) {
    for (unsigned d = 1; d <= 5; ++d) {
      Integer sum = 0;
      std::optional<Integer> prev;
      for (const auto& [k, i] : macaulay_representation(h, d)) {
        CHECK(k >= i);
        if (prev) CHECK(k < *prev);
        prev = k;
        sum += binomial(k, i);
      }
      CHECK(sum == h);
    }
  }
}

TEST_CASE("quotient Hilbert growth respects the Macaulay bound") {
  std::mt19937_64 rng(21);
  for (int it = 0; it < 100; ++it) {
    const VarTable t = vars(3);
    std::vector<Poly> gens;
    const int ng = 1 + it % 3;
    for (int k = 0; k < ng; ++k) gens.push_back(reinterpret(random_nonzero_form(rng, t, 2), Ring::Dual));
    const auto h = quotient_hilbert(t, gens, 4);
    for (unsigned d = 1; d < 4; ++d)
      if (h[d] > 0) CHECK(Integer(static_cast<unsigned long>(h[d + 1])) <= macaulay_bound(h[d], d));
  }
}

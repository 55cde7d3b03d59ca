#pragma once

#include <apolar/apolarity.hpp>
#include <apolar/poly.hpp>

#include <optional>
#include <span>
#include <vector>

namespace apolar {

/// target = sum generator_i * cofactor_i, exactly.
struct MembershipCertificate {
  Poly target;
  std::vector<Poly> generators;
  std::vector<Poly> cofactors;

  Poly recombine() const;
  bool verify() const { return recombine() == target; }
};

/// Degree-d piece of the ideal generated by `gens` in the dual ring over
/// `table`, as the echelonized span of {monomial * g}.
IdealSlice generated_slice(const VarTable& table, std::span<const Poly> gens, unsigned degree);

/// Certificate that target lies in (gens), found in the single degree of
/// target; nullopt if it does not. Returned certificates have been re-expanded.
std::optional<MembershipCertificate> membership(const Poly& target, std::span<const Poly> gens);

/// True iff gamma * mu lies in (gens) for every monomial mu of degree k in
/// all dual variables, i.e. m^k * gamma ⊆ (gens). Sufficient for gamma to be
/// in the saturation of (gens).
bool saturation_witness(std::span<const Poly> gens, const Poly& gamma, unsigned k);

/// First monomial mu of degree k with gamma * mu outside (gens), if any.
std::optional<Monomial> saturation_obstruction(std::span<const Poly> gens, const Poly& gamma, unsigned k);

/// H(Sym V* / (gens))(i) for i = 0..up_to.
std::vector<std::size_t> quotient_hilbert(const VarTable& table, std::span<const Poly> gens, unsigned up_to);

/// Macaulay's upper bound h^<d> on dim A_{d+1} of a standard graded algebra
/// with dim A_d = h.
Integer macaulay_bound(const Integer& h, unsigned d);

/// d-th Macaulay representation h = C(k_d, d) + C(k_{d-1}, d-1) + ... ;
/// returns the pairs (k_i, i) with k_d > k_{d-1} > ... >= i >= 1.
std::vector<std::pair<Integer, unsigned>> macaulay_representation(const Integer& h, unsigned d);

Integer binomial(const Integer& n, unsigned k);

}  // namespace apolar

#include <apolar/errors.hpp>
#include <apolar/ideals.hpp>
#include <apolar/linalg.hpp>

namespace apolar {

namespace {

unsigned generator_degree(const Poly& g) {
  if (g.ring() != Ring::Dual) throw InputError("ideal generators must be dual forms");
  if (g.is_zero()) return 0;
  auto d = g.homogeneous_degree();
  if (!d) throw InputError("inhomogeneous generator " + to_string(g));
  return *d;
}

// The spanning set {mu * g} of the degree-d piece, with the provenance of
// each product.
struct Products {
  std::vector<QVector> vectors;
  std::vector<std::size_t> generator;
  std::vector<Monomial> multiplier;
};

Products degree_products(const VarTable& table, std::span<const Poly> gens, unsigned degree,
                         std::span<const Monomial> basis) {
  Products out;
  for (std::size_t gi = 0; gi < gens.size(); ++gi) {
    const auto& g = gens[gi];
    if (!(g.table() == table)) throw InputError("generator over a different variable table");
    const unsigned e = generator_degree(g);
    if (g.is_zero() || e > degree) continue;
    for (const auto& mu : monomials_of_degree(table.size(), degree - e)) {
      Poly prod = multiply(Poly::term(table, Ring::Dual, mu, Rational(1)), g);
      out.vectors.push_back(coefficient_vector(prod, basis));
      out.generator.push_back(gi);
      out.multiplier.push_back(mu);
    }
  }
  return out;
}

}  // namespace

Poly MembershipCertificate::recombine() const {
  Poly sum(target.table(), Ring::Dual);
  for (std::size_t i = 0; i < generators.size(); ++i) sum = add(sum, multiply(generators[i], cofactors[i]));
  return sum;
}

IdealSlice generated_slice(const VarTable& table, std::span<const Poly> gens, unsigned degree) {
  const auto basis = monomials_of_degree(table.size(), degree);
  const auto prods = degree_products(table, gens, degree, basis);
  IdealSlice s{table, degree, {}};
  for (const auto& v : span_basis(prods.vectors, basis.size()))
    s.basis.push_back(from_coefficients(table, Ring::Dual, basis, v));
  return s;
}

std::optional<MembershipCertificate> membership(const Poly& target, std::span<const Poly> gens) {
  if (target.ring() != Ring::Dual) throw InputError("membership: target must be a dual form");
  MembershipCertificate cert{target, {gens.begin(), gens.end()}, {}};
  cert.cofactors.assign(gens.size(), Poly(target.table(), Ring::Dual));
  if (target.is_zero()) return cert;
  auto d = target.homogeneous_degree();
  if (!d) throw InputError("membership: target is not homogeneous");
  const auto basis = monomials_of_degree(target.table().size(), *d);
  const auto prods = degree_products(target.table(), gens, *d, basis);
  auto coeffs = in_span(coefficient_vector(target, basis), prods.vectors);
  if (!coeffs) return std::nullopt;
  for (std::size_t k = 0; k < coeffs->size(); ++k) {
    if ((*coeffs)[k] == 0) continue;
    auto& cof = cert.cofactors[prods.generator[k]];
    cof = add(cof, Poly::term(target.table(), Ring::Dual, prods.multiplier[k], (*coeffs)[k]));
  }
  if (!cert.verify()) throw CertificateError("membership certificate does not re-expand to its target");
  return cert;
}

std::optional<Monomial> saturation_obstruction(std::span<const Poly> gens, const Poly& gamma, unsigned k) {
  if (gamma.ring() != Ring::Dual) throw InputError("saturation_witness: gamma must be a dual form");
  if (gamma.is_zero()) return std::nullopt;
  auto e = gamma.homogeneous_degree();
  if (!e) throw InputError("saturation_witness: gamma is not homogeneous");
  const VarTable& table = gamma.table();
  const unsigned degree = *e + k;
  const auto basis = monomials_of_degree(table.size(), degree);
  const auto slice = span_basis(degree_products(table, gens, degree, basis).vectors, basis.size());
  for (const auto& mu : monomials_of_degree(table.size(), k)) {
    Poly prod = multiply(Poly::term(table, Ring::Dual, mu, Rational(1)), gamma);
    if (!is_zero(reduce_by_echelon(coefficient_vector(prod, basis), slice))) return mu;
  }
  return std::nullopt;
}

bool saturation_witness(std::span<const Poly> gens, const Poly& gamma, unsigned k) {
  return !saturation_obstruction(gens, gamma, k).has_value();
}

std::vector<std::size_t> quotient_hilbert(const VarTable& table, std::span<const Poly> gens, unsigned up_to) {
  std::vector<std::size_t> h;
  for (unsigned i = 0; i <= up_to; ++i) {
    const std::size_t total = monomials_of_degree(table.size(), i).size();
    h.push_back(total - generated_slice(table, gens, i).dim());
  }
  return h;
}

Integer binomial(const Integer& n, unsigned k) {
  if (n < 0 || n < k) return 0;
  Integer r;
  mpz_bin_ui(r.get_mpz_t(), n.get_mpz_t(), k);
  return r;
}

std::vector<std::pair<Integer, unsigned>> macaulay_representation(const Integer& h, unsigned d) {
  if (d == 0) throw InputError("macaulay_representation: degree must be at least 1");
  std::vector<std::pair<Integer, unsigned>> rep;
  Integer rest = h;
  for (unsigned i = d; i >= 1 && rest > 0; --i) {
    // largest k with C(k, i) <= rest
    Integer k = i;
    while (binomial(k + 1, i) <= rest) ++k;
    rep.emplace_back(k, i);
    rest -= binomial(k, i);
  }
  return rep;
}

Integer macaulay_bound(const Integer& h, unsigned d) {
  Integer bound = 0;
  for (const auto& [k, i] : macaulay_representation(h, d)) bound += binomial(k + 1, i + 1);
  return bound;
}

}  // namespace apolar

#pragma once

#include <apolar/parse.hpp>
#include <apolar/wildcert.hpp>

#include <doctest.h>

#include <ostream>
#include <random>
#include <string>
#include <vector>

namespace testing {

using namespace apolar;

inline const char* kWild = "x0^2*y0 - (x0+x1)^2*y1 + x1^2*y2";

inline VarTable wild_table() {
  return VarTable({"x0", "x1", "y0", "y1", "y2"}, {"a0", "a1", "b0", "b1", "b2"});
}

inline Poly wild() { return parse_poly(kWild, wild_table()); }

inline Poly P(const std::string& text, const VarTable& t) { return parse_poly(text, t); }

/// Dual form written with the dual names of t (a0, a1, b0, ... for the wild table).
inline Poly D(const std::string& text, const VarTable& t) {
  return Poly(t, Ring::Dual, parse_poly(text, VarTable(t.dual_names())).terms());
}

inline Rational small_rational(std::mt19937_64& rng, int range = 3) {
  std::uniform_int_distribution<int> num(-range, range), den(1, 2);
  Rational q(num(rng), den(rng));
  q.canonicalize();
  return q;
}

inline Poly random_form(std::mt19937_64& rng, const VarTable& t, unsigned d, double density = 0.6, int range = 3) {
  std::bernoulli_distribution keep(density);
  Poly::Terms terms;
  for (const auto& m : monomials_of_degree(t.size(), d))
    if (keep(rng)) terms.emplace(m, small_rational(rng, range));
  return Poly(t, Ring::Primal, std::move(terms));
}

inline Poly random_poly(std::mt19937_64& rng, const VarTable& t, unsigned max_deg, double density = 0.3) {
  Poly p(t, Ring::Primal);
  for (unsigned d = 0; d <= max_deg; ++d) p = add(p, random_form(rng, t, d, density));
  return p;
}

inline Poly random_nonzero_form(std::mt19937_64& rng, const VarTable& t, unsigned d) {
  while (true) {
    Poly p = random_form(rng, t, d);
    if (!p.is_zero()) return p;
  }
}

inline VarTable vars(std::size_t n, const std::string& stem = "x") {
  std::vector<std::string> names;
  for (std::size_t i = 0; i < n; ++i) names.push_back(stem + std::to_string(i));
  return VarTable(names);
}

/// Random invertible linear change x_i -> sum_j M_ij x_j with small integer entries.
inline std::vector<Poly> random_change(std::mt19937_64& rng, const VarTable& t) {
  std::uniform_int_distribution<int> entry(-2, 2);
  const std::size_t n = t.size();
  while (true) {
    QMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) m(i, j) = entry(rng);
    if (rank(m) != n) continue;
    std::vector<Poly> images;
    for (std::size_t i = 0; i < n; ++i) images.push_back(Poly::linear(t, Ring::Primal, m.row(i)));
    return images;
  }
}

// ---------------------------------------------------------------- oracles
// Deliberately naive reimplementations used as independent references.

/// Plain Gauss-Jordan rank with rational pivots.
inline std::size_t naive_rank(std::vector<std::vector<Rational>> a) {
  std::size_t r = 0;
  const std::size_t cols = a.empty() ? 0 : a[0].size();
  for (std::size_t c = 0; c < cols && r < a.size(); ++c) {
    std::size_t p = r;
    while (p < a.size() && a[p][c] == 0) ++p;
    if (p == a.size()) continue;
    std::swap(a[p], a[r]);
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (i == r || a[i][c] == 0) continue;
      const Rational f = a[i][c] / a[r][c];
      for (std::size_t j = c; j < cols; ++j) a[i][j] -= f * a[r][j];
    }
    ++r;
  }
  return r;
}

inline std::vector<std::vector<Rational>> rows_of(const QMatrix& m) {
  std::vector<std::vector<Rational>> out;
  for (std::size_t i = 0; i < m.rows(); ++i) out.push_back(m.row(i));
  return out;
}

/// d/dx_i by the power rule, one term at a time.
inline Poly naive_derivative(const Poly& p, std::size_t i) {
  Poly::Terms out;
  for (const auto& [m, c] : p.terms()) {
    if (m.exps[i] == 0) continue;
    Monomial mm = m;
    --mm.exps[i];
    out[mm] += c * m.exps[i];
  }
  return Poly(p.table(), Ring::Primal, std::move(out));
}

/// Apply a dual polynomial by repeated differentiation.
inline Poly naive_contract(const Poly& alpha, const Poly& f) {
  Poly acc(f.table(), Ring::Primal);
  for (const auto& [m, c] : alpha.terms()) {
    Poly g = f;
    for (std::size_t i = 0; i < m.size(); ++i)
      for (std::uint32_t e = 0; e < m.exps[i]; ++e) g = naive_derivative(g, i);
    acc = add(acc, scale(g, c));
  }
  return acc;
}

/// H_f(i) as the rank of {mu f : deg mu = i}, each mu applied by repeated differentiation.
inline std::vector<std::size_t> naive_hilbert(const Poly& f) {
  const unsigned d = *f.homogeneous_degree();
  std::vector<std::size_t> h;
  for (unsigned i = 0; i <= d; ++i) {
    const auto target = monomials_of_degree(f.nvars(), d - i);
    std::vector<std::vector<Rational>> rows;
    for (const auto& mu : monomials_of_degree(f.nvars(), i)) {
      Poly g = naive_contract(Poly::term(f.table(), Ring::Dual, mu, Rational(1)), f);
      rows.push_back(coefficient_vector(g, target));
    }
    h.push_back(naive_rank(rows));
  }
  return h;
}

}  // namespace testing

namespace apolar {
inline std::ostream& operator<<(std::ostream& os, const Poly& p) { return os << to_string(p); }
inline std::ostream& operator<<(std::ostream& os, const Rational& q) { return os << q.get_str(); }
}  // namespace apolar

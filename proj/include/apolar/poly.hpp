#pragma once

#include <apolar/rational.hpp>

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace apolar {

/// Ordered variable names of V together with the paired names of V*.
/// Variable i of the primal ring pairs with dual variable i; by default the
/// dual of `v` is called `d_v`. Copies share storage.
class VarTable {
 public:
  VarTable();
  explicit VarTable(std::vector<std::string> primal);
  VarTable(std::vector<std::string> primal, std::vector<std::string> dual);

  std::size_t size() const { return data_->primal.size(); }
  const std::string& primal(std::size_t i) const { return data_->primal.at(i); }
  const std::string& dual(std::size_t i) const { return data_->dual.at(i); }
  const std::vector<std::string>& primal_names() const { return data_->primal; }
  const std::vector<std::string>& dual_names() const { return data_->dual; }

  std::optional<std::size_t> index_of(std::string_view primal_name) const;
  std::optional<std::size_t> dual_index_of(std::string_view dual_name) const;

  /// Same primal variables, different display names for the dual ones.
  VarTable with_dual_names(std::vector<std::string> dual) const;

  /// Tables are compatible when their primal variables agree; dual names are
  /// presentation only.
  friend bool operator==(const VarTable& a, const VarTable& b) {
    return a.data_ == b.data_ || a.data_->primal == b.data_->primal;
  }

 private:
  struct Data {
    std::vector<std::string> primal;
    std::vector<std::string> dual;
  };
  std::shared_ptr<const Data> data_;
};

/// Exponent vector over a fixed variable table.
struct Monomial {
  std::vector<std::uint32_t> exps;

  Monomial() = default;
  explicit Monomial(std::size_t nvars) : exps(nvars, 0) {}
  explicit Monomial(std::vector<std::uint32_t> e) : exps(std::move(e)) {}

  std::size_t size() const { return exps.size(); }
  unsigned degree() const;
  static Monomial unit(std::size_t nvars, std::size_t i, std::uint32_t power = 1);

  friend bool operator==(const Monomial&, const Monomial&) = default;
};

Monomial operator*(const Monomial& a, const Monomial& b);

/// Graded lexicographic comparison, "a comes before b" when a is larger:
/// higher total degree first, then larger exponent of the earliest variable.
struct GrlexGreater {
  bool operator()(const Monomial& a, const Monomial& b) const;
};

/// All monomials of degree d in n variables, in canonical (graded lex,
/// descending) order. This is the basis order of every matrix downstream.
std::vector<Monomial> monomials_of_degree(std::size_t nvars, unsigned d);

enum class Ring { Primal, Dual };

/// Sparse polynomial with exact rational coefficients. Elements of Sym V
/// live in the primal ring, differential operators from Sym V* in the dual
/// ring. Values are immutable.
class Poly {
 public:
  using Terms = std::map<Monomial, Rational, GrlexGreater>;

  /// Zero polynomial over the empty table.
  Poly() : ring_(Ring::Primal) {}
  Poly(VarTable table, Ring ring);
  /// Zero coefficients are dropped; every monomial must match the table size.
  Poly(VarTable table, Ring ring, Terms terms);

  static Poly constant(VarTable table, Ring ring, const Rational& c);
  static Poly variable(VarTable table, Ring ring, std::size_t i);
  static Poly term(VarTable table, Ring ring, Monomial m, const Rational& c);
  /// Linear form sum coeffs[i] * var_i.
  static Poly linear(VarTable table, Ring ring, std::span<const Rational> coeffs);

  const VarTable& table() const { return table_; }
  Ring ring() const { return ring_; }
  const Terms& terms() const { return terms_; }
  std::size_t nvars() const { return table_.size(); }

  bool is_zero() const { return terms_.empty(); }
  std::size_t term_count() const { return terms_.size(); }
  Rational coefficient(const Monomial& m) const;

  /// Common degree of all terms; nullopt for the zero polynomial or when
  /// terms of different degree are present.
  std::optional<unsigned> homogeneous_degree() const;
  bool is_homogeneous() const { return is_zero() || homogeneous_degree().has_value(); }
  unsigned max_degree() const;

  /// Coefficients of a linear form (all terms must have degree 1).
  std::vector<Rational> linear_coefficients() const;

  friend bool operator==(const Poly& a, const Poly& b);

 private:
  VarTable table_;
  Ring ring_;
  Terms terms_;
};

Poly add(const Poly& a, const Poly& b);
Poly subtract(const Poly& a, const Poly& b);
Poly negate(const Poly& p);
Poly scale(const Poly& p, const Rational& c);
Poly multiply(const Poly& a, const Poly& b);
Poly power(const Poly& p, unsigned k);

inline Poly operator+(const Poly& a, const Poly& b) { return add(a, b); }
inline Poly operator-(const Poly& a, const Poly& b) { return subtract(a, b); }
inline Poly operator-(const Poly& p) { return negate(p); }
inline Poly operator*(const Poly& a, const Poly& b) { return multiply(a, b); }
inline Poly operator*(const Rational& c, const Poly& p) { return scale(p, c); }

/// Replaces variable i by images[i] and expands. Every image must be a linear
/// form (or zero) over the target table; the result lives on that table.
Poly substitute_linear(const Poly& p, std::span<const Poly> images);

/// Value of p at a rational point (one coordinate per variable).
Rational evaluate(const Poly& p, std::span<const Rational> point);

/// Sum of the degree-d terms of p.
Poly graded_component(const Poly& p, unsigned d);

/// Same terms, other ring (primal <-> dual) over the same table.
Poly reinterpret(const Poly& p, Ring ring);

/// Coefficient vector of a homogeneous p in the given monomial basis.
/// Throws InputError if p has a term outside the basis.
std::vector<Rational> coefficient_vector(const Poly& p, std::span<const Monomial> basis);
Poly from_coefficients(const VarTable& table, Ring ring, std::span<const Monomial> basis,
                       std::span<const Rational> coeffs);

/// Human readable form using the grammar accepted by parse_poly, e.g.
/// "x0^2*y0 - 2*x0*x1*y1 + 3/2*x1^2*y2". Dual polynomials use dual names.
std::string to_string(const Poly& p);

}  // namespace apolar

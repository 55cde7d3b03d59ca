#pragma once

#include <apolar/apolarity.hpp>
#include <apolar/poly.hpp>
#include <apolar/ranks.hpp>

#include <map>
#include <optional>
#include <span>
#include <vector>

namespace apolar {

/// Laurent polynomial in the parameter t: power -> nonzero coefficient.
using Laurent = std::map<int, Rational>;

/// Primal polynomial whose coefficients are Laurent polynomials in t.
class ParamPoly {
 public:
  using Terms = std::map<Monomial, Laurent, GrlexGreater>;

  explicit ParamPoly(VarTable table);
  ParamPoly(VarTable table, Terms terms);

  /// sum over parts of t^power * poly.
  static ParamPoly from_parts(VarTable table, std::span<const std::pair<int, Poly>> parts);
  /// Treats primal variable `t_index` of p as the parameter; the result lives
  /// on `table`, which must list p's other variables in order.
  static ParamPoly split_parameter(const Poly& p, std::size_t t_index, VarTable table);

  const VarTable& table() const { return table_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  /// The t^k part.
  Poly coefficient(int k) const;
  Poly evaluate(const Rational& t) const;
  std::optional<int> min_power() const;
  std::optional<int> max_power() const;
  /// Multiply by t^k.
  ParamPoly shift(int k) const;

  friend bool operator==(const ParamPoly&, const ParamPoly&) = default;

 private:
  VarTable table_;
  Terms terms_;
};

/// Point l^d on the Veronese with coefficient c and tangent direction m, so
/// that c (l + t m)^d is a curve through c l^d.
struct TangentDatum {
  Rational coeff;
  Poly base;
  Poly direction;
};

struct TangentFamily {
  ParamPoly family;
  Poly limit;
  unsigned r = 0;
  unsigned degree = 0;
  Deduction border_upper;
};

/// family = sum c_i (l_i + t m_i)^d for linearly dependent points
/// (sum c_i l_i^d = 0, checked exactly); its t^1 coefficient
/// d * sum c_i l_i^{d-1} m_i is a limit of (1/t) * (r d-th powers), so it has
/// border rank at most r.
TangentFamily tangent_limit_family(std::span<const TangentDatum> data, unsigned d);

/// True iff t^{-k} family has no negative powers of t and its t^0 part is
/// exactly target.
bool verify_limit(const ParamPoly& family, int k, const Poly& target);
/// Lowest power of t present (the k making the t^0 part nonzero), if any.
std::optional<int> limit_order(const ParamPoly& family);
bool verify_limit_auto(const ParamPoly& family, const Poly& target);

struct DoublePointSpan {
  std::vector<std::pair<Poly, Poly>> pairs;
  /// f = sum a_i l_i^d + b_i l_i^{d-1} m_i.
  std::vector<Rational> a;
  std::vector<Rational> b;
  unsigned length = 0;
  /// Each piece is a 2-jet on a line, hence curvilinear and smoothable.
  bool curvilinear = true;
  std::vector<Deduction> deductions;

  Poly recombine(unsigned d) const;
};

std::optional<DoublePointSpan> double_point_span(const Poly& f, std::span<const std::pair<Poly, Poly>> pairs);

struct DirectSumReport {
  Poly sum;
  std::size_t concise_f = 0;
  std::size_t concise_g = 0;
  std::size_t concise_sum = 0;
  IdealSlice slice_f;
  IdealSlice slice_g;
  IdealSlice slice_sum;
  std::vector<Poly> intersection;
  bool slices_equal = false;

  bool concise_additive() const { return concise_sum == concise_f + concise_g; }
};

/// f and g over one table with disjoint variable supports, both nonzero of
/// the same degree. Compares Ann(f+g)_2 with Ann(f)_2 ∩ Ann(g)_2.
DirectSumReport direct_sum_extend(const Poly& f, const Poly& g);

/// Indices of variables that occur in p.
std::vector<std::size_t> variable_support(const Poly& p);

}  // namespace apolar

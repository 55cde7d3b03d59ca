#include <apolar/errors.hpp>
#include <apolar/ideals.hpp>
#include <apolar/linalg.hpp>
#include <apolar/witness.hpp>

#include <algorithm>

namespace apolar {

// ---------------------------------------------------------------- ParamPoly

ParamPoly::ParamPoly(VarTable table) : table_(std::move(table)) {}

ParamPoly::ParamPoly(VarTable table, Terms terms) : table_(std::move(table)), terms_(std::move(terms)) {
  for (auto it = terms_.begin(); it != terms_.end();) {
    if (it->first.size() != table_.size()) throw InputError("ParamPoly: monomial length does not match table");
    auto& lp = it->second;
    for (auto jt = lp.begin(); jt != lp.end();) jt = jt->second == 0 ? lp.erase(jt) : std::next(jt);
    it = lp.empty() ? terms_.erase(it) : std::next(it);
  }
}

ParamPoly ParamPoly::from_parts(VarTable table, std::span<const std::pair<int, Poly>> parts) {
  Terms t;
  for (const auto& [k, p] : parts) {
    if (!(p.table() == table) || p.ring() != Ring::Primal) throw InputError("ParamPoly: part over a different table");
    for (const auto& [m, c] : p.terms()) t[m][k] += c;
  }
  return ParamPoly(std::move(table), std::move(t));
}

ParamPoly ParamPoly::split_parameter(const Poly& p, std::size_t t_index, VarTable table) {
  if (t_index >= p.nvars() || table.size() + 1 != p.nvars())
    throw InputError("split_parameter: table does not match the polynomial without its parameter");
  Terms t;
  for (const auto& [m, c] : p.terms()) {
    Monomial rest(table.size());
    for (std::size_t i = 0, j = 0; i < m.size(); ++i) {
      if (i == t_index) continue;
      rest.exps[j++] = m.exps[i];
    }
    t[rest][static_cast<int>(m.exps[t_index])] += c;
  }
  return ParamPoly(std::move(table), std::move(t));
}

Poly ParamPoly::coefficient(int k) const {
  Poly::Terms out;
  for (const auto& [m, lp] : terms_) {
    auto it = lp.find(k);
    if (it != lp.end()) out.emplace(m, it->second);
  }
  return Poly(table_, Ring::Primal, std::move(out));
}

Poly ParamPoly::evaluate(const Rational& t) const {
  if (auto lo = min_power(); t == 0 && lo && *lo < 0)
    throw InputError("ParamPoly::evaluate: negative powers of t at t = 0");
  Poly::Terms out;
  for (const auto& [m, lp] : terms_) {
    Rational acc;
    for (const auto& [k, c] : lp) {
      Rational tp = 1;
      for (int i = 0; i < std::abs(k); ++i) tp *= t;
      acc += k >= 0 ? Rational(c * tp) : Rational(c / tp);
    }
    out.emplace(m, acc);
  }
  return Poly(table_, Ring::Primal, std::move(out));
}

std::optional<int> ParamPoly::min_power() const {
  std::optional<int> best;
  for (const auto& [m, lp] : terms_) {
    const int k = lp.begin()->first;
    if (!best || k < *best) best = k;
  }
  return best;
}

std::optional<int> ParamPoly::max_power() const {
  std::optional<int> best;
  for (const auto& [m, lp] : terms_) {
    const int k = lp.rbegin()->first;
    if (!best || k > *best) best = k;
  }
  return best;
}

ParamPoly ParamPoly::shift(int k) const {
  Terms out;
  for (const auto& [m, lp] : terms_) {
    Laurent moved;
    for (const auto& [p, c] : lp) moved.emplace(p + k, c);
    out.emplace(m, std::move(moved));
  }
  return ParamPoly(table_, std::move(out));
}

// ---------------------------------------------------------------- tangent limits

namespace {

void require_linear(const Poly& p, const char* what, bool allow_zero) {
  if (p.ring() != Ring::Primal) throw InputError(std::string(what) + " must be a primal linear form");
  if (p.is_zero()) {
    if (allow_zero) return;
    throw InputError(std::string(what) + " must be nonzero");
  }
  if (p.homogeneous_degree() != 1u) throw InputError(std::string(what) + " must be linear: " + to_string(p));
}

}  // namespace

TangentFamily tangent_limit_family(std::span<const TangentDatum> data, unsigned d) {
  if (data.empty()) throw InputError("tangent_limit_family: no points");
  if (d == 0) throw InputError("tangent_limit_family: degree must be positive");
  const VarTable table = data.front().base.table();
  Poly dependence(table, Ring::Primal);
  std::vector<std::pair<int, Poly>> parts;
  for (const auto& td : data) {
    require_linear(td.base, "base form", false);
    require_linear(td.direction, "tangent direction", true);
    if (!(td.base.table() == table) || !(td.direction.table() == table))
      throw InputError("tangent_limit_family: data over different tables");
    dependence = add(dependence, scale(power(td.base, d), td.coeff));
    // c (l + t m)^d = sum_k C(d,k) c t^k l^{d-k} m^k
    Integer binom = 1;
    for (unsigned k = 0; k <= d; ++k) {
      if (k > 0) binom = binom * (d - k + 1) / k;
      Poly piece = scale(multiply(power(td.base, d - k), power(td.direction, k)), td.coeff * Rational(binom));
      if (!piece.is_zero()) parts.emplace_back(static_cast<int>(k), std::move(piece));
    }
  }
  if (!dependence.is_zero()) {
    throw InputError("tangent_limit_family: points are not linearly dependent, sum c_i l_i^d = " + to_string(dependence));
  }
  TangentFamily out{ParamPoly::from_parts(table, parts), Poly(table, Ring::Primal),
                    static_cast<unsigned>(data.size()), d, {}};
  out.limit = out.family.coefficient(1);
  out.border_upper = {DeductionKind::WitnessFamily, RankNotion::Border, Side::Upper, out.r,
                      "limit of (1/t) * sum of " + std::to_string(out.r) + " powers along tangent directions",
                      false};
  return out;
}

bool verify_limit(const ParamPoly& family, int k, const Poly& target) {
  const ParamPoly scaled = family.shift(-k);
  if (auto lo = scaled.min_power(); lo && *lo < 0) return false;
  return scaled.coefficient(0) == target;
}

std::optional<int> limit_order(const ParamPoly& family) { return family.min_power(); }

bool verify_limit_auto(const ParamPoly& family, const Poly& target) {
  auto k = limit_order(family);
  if (!k) return target.is_zero();
  return verify_limit(family, *k, target);
}

// ---------------------------------------------------------------- double points

Poly DoublePointSpan::recombine(unsigned d) const {
  if (pairs.empty()) throw InputError("DoublePointSpan: no pairs");
  Poly sum(pairs.front().first.table(), Ring::Primal);
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    const auto& [l, m] = pairs[i];
    sum = add(sum, scale(power(l, d), a[i]));
    if (d >= 1) sum = add(sum, scale(multiply(power(l, d - 1), m), b[i]));
  }
  return sum;
}

std::optional<DoublePointSpan> double_point_span(const Poly& f, std::span<const std::pair<Poly, Poly>> pairs) {
  if (f.ring() != Ring::Primal || f.is_zero() || !f.homogeneous_degree())
    throw InputError("double_point_span: expected a nonzero form");
  if (pairs.empty()) throw InputError("double_point_span: no pairs");
  const unsigned d = *f.homogeneous_degree();
  if (d == 0) throw InputError("double_point_span: degree must be positive");
  const auto basis = monomials_of_degree(f.nvars(), d);
  std::vector<QVector> cols;
  for (const auto& [l, m] : pairs) {
    require_linear(l, "double point support", false);
    require_linear(m, "double point direction", true);
    if (!(l.table() == f.table()) || !(m.table() == f.table())) throw InputError("double_point_span: table mismatch");
    cols.push_back(coefficient_vector(power(l, d), basis));
    cols.push_back(coefficient_vector(multiply(power(l, d - 1), m), basis));
  }
  auto sol = solve(QMatrix::from_columns(cols, basis.size()), coefficient_vector(f, basis));
  if (!sol) return std::nullopt;
  DoublePointSpan span;
  span.pairs.assign(pairs.begin(), pairs.end());
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    span.a.push_back((*sol)[2 * i]);
    span.b.push_back((*sol)[2 * i + 1]);
  }
  if (!(span.recombine(d) == f)) throw CertificateError("double point span does not re-expand to f");
  span.length = static_cast<unsigned>(2 * pairs.size());
  span.deductions.push_back({DeductionKind::SchemeSpan, RankNotion::Cactus, Side::Upper, span.length,
                             "f in the span of " + std::to_string(pairs.size()) + " double points", false});
  span.deductions.push_back({DeductionKind::SmoothableScheme, RankNotion::Smoothable, Side::Upper, span.length,
                             "the double points are 2-jets on lines: curvilinear, hence smoothable", true});
  return span;
}

// ---------------------------------------------------------------- direct sums

std::vector<std::size_t> variable_support(const Poly& p) {
  std::vector<bool> used(p.nvars(), false);
  for (const auto& [m, c] : p.terms())
    for (std::size_t i = 0; i < m.size(); ++i)
      if (m.exps[i] > 0) used[i] = true;
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < used.size(); ++i)
    if (used[i]) out.push_back(i);
  return out;
}

DirectSumReport direct_sum_extend(const Poly& f, const Poly& g) {
  if (f.is_zero() || g.is_zero()) throw InputError("direct_sum_extend: both summands must be nonzero");
  if (!(f.table() == g.table())) throw InputError("direct_sum_extend: summands over different tables");
  if (!f.homogeneous_degree() || f.homogeneous_degree() != g.homogeneous_degree())
    throw InputError("direct_sum_extend: summands must be forms of the same degree");
  const auto sf = variable_support(f);
  const auto sg = variable_support(g);
  std::vector<std::size_t> common;
  std::set_intersection(sf.begin(), sf.end(), sg.begin(), sg.end(), std::back_inserter(common));
  if (!common.empty()) {
    throw InputError("direct_sum_extend: summands share variable " + f.table().primal(common.front()));
  }
  DirectSumReport rep{add(f, g), 0, 0, 0, ann_slice(f, 2), ann_slice(g, 2), {}, {}, false};
  rep.slice_sum = ann_slice(rep.sum, 2);
  rep.concise_f = concise_dim(f).n;
  rep.concise_g = concise_dim(g).n;
  rep.concise_sum = concise_dim(rep.sum).n;
  const auto monos = monomials_of_degree(f.nvars(), 2);
  const auto inter = intersect_spans(slice_vectors(rep.slice_f), slice_vectors(rep.slice_g), monos.size());
  for (const auto& v : inter) rep.intersection.push_back(from_coefficients(f.table(), Ring::Dual, monos, v));
  rep.slices_equal = span_basis(slice_vectors(rep.slice_sum), monos.size()) == inter;
  return rep;
}

}  // namespace apolar

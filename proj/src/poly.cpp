#include <apolar/errors.hpp>
#include <apolar/poly.hpp>

#include <algorithm>
#include <numeric>
#include <sstream>
#include <unordered_set>

namespace apolar {

Rational parse_rational(std::string_view text) {
  std::string s(text);
  if (s.empty()) throw InputError("empty rational literal");
  Rational q;
  if (q.set_str(s, 10) != 0) throw InputError("malformed rational literal '" + s + "'");
  if (q.get_den() == 0) throw InputError("zero denominator in '" + s + "'");
  q.canonicalize();
  return q;
}

// ---------------------------------------------------------------- VarTable

namespace {

void check_unique(const std::vector<std::string>& names, const char* what) {
  std::unordered_set<std::string> seen;
  for (const auto& n : names) {
    if (n.empty()) throw InputError(std::string("empty ") + what + " variable name");
    if (!seen.insert(n).second) throw InputError(std::string("duplicate ") + what + " variable '" + n + "'");
  }
}

std::vector<std::string> default_duals(const std::vector<std::string>& primal) {
  std::vector<std::string> out;
  out.reserve(primal.size());
  for (const auto& n : primal) out.push_back("d_" + n);
  return out;
}

}  // namespace

VarTable::VarTable() : data_(std::make_shared<const Data>()) {}

VarTable::VarTable(std::vector<std::string> primal) {
  auto dual = default_duals(primal);
  check_unique(primal, "primal");
  data_ = std::make_shared<const Data>(Data{std::move(primal), std::move(dual)});
}

VarTable::VarTable(std::vector<std::string> primal, std::vector<std::string> dual) {
  if (primal.size() != dual.size()) throw InputError("primal and dual tables differ in length");
  check_unique(primal, "primal");
  check_unique(dual, "dual");
  data_ = std::make_shared<const Data>(Data{std::move(primal), std::move(dual)});
}

std::optional<std::size_t> VarTable::index_of(std::string_view name) const {
  const auto& v = data_->primal;
  auto it = std::find(v.begin(), v.end(), name);
  if (it == v.end()) return std::nullopt;
  return static_cast<std::size_t>(it - v.begin());
}

std::optional<std::size_t> VarTable::dual_index_of(std::string_view name) const {
  const auto& v = data_->dual;
  auto it = std::find(v.begin(), v.end(), name);
  if (it == v.end()) return std::nullopt;
  return static_cast<std::size_t>(it - v.begin());
}

VarTable VarTable::with_dual_names(std::vector<std::string> dual) const {
  return VarTable(data_->primal, std::move(dual));
}

// ---------------------------------------------------------------- Monomial

unsigned Monomial::degree() const {
  return std::accumulate(exps.begin(), exps.end(), 0u);
}

Monomial Monomial::unit(std::size_t nvars, std::size_t i, std::uint32_t power) {
  Monomial m(nvars);
  m.exps.at(i) = power;
  return m;
}

Monomial operator*(const Monomial& a, const Monomial& b) {
  Monomial m(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) m.exps[i] = a.exps[i] + b.exps[i];
  return m;
}

bool GrlexGreater::operator()(const Monomial& a, const Monomial& b) const {
  const unsigned da = a.degree(), db = b.degree();
  if (da != db) return da > db;
  return std::lexicographical_compare(b.exps.begin(), b.exps.end(), a.exps.begin(), a.exps.end());
}

namespace {

void enumerate_monomials(std::size_t var, unsigned remaining, Monomial& cur, std::vector<Monomial>& out) {
  if (var + 1 == cur.size()) {
    cur.exps[var] = remaining;
    out.push_back(cur);
    return;
  }
  for (unsigned e = remaining + 1; e-- > 0;) {
    cur.exps[var] = e;
    enumerate_monomials(var + 1, remaining - e, cur, out);
  }
  cur.exps[var] = 0;
}

}  // namespace

std::vector<Monomial> monomials_of_degree(std::size_t nvars, unsigned d) {
  std::vector<Monomial> out;
  if (nvars == 0) {
    if (d == 0) out.emplace_back(0);
    return out;
  }
  Monomial cur(nvars);
  enumerate_monomials(0, d, cur, out);
  return out;
}

// ---------------------------------------------------------------- Poly

Poly::Poly(VarTable table, Ring ring) : table_(std::move(table)), ring_(ring) {}

Poly::Poly(VarTable table, Ring ring, Terms terms)
    : table_(std::move(table)), ring_(ring), terms_(std::move(terms)) {
  for (auto it = terms_.begin(); it != terms_.end();) {
    if (it->first.size() != table_.size()) throw InputError("monomial length does not match variable table");
    if (it->second == 0) {
      it = terms_.erase(it);
    } else {
      ++it;
    }
  }
}

Poly Poly::constant(VarTable table, Ring ring, const Rational& c) {
  const std::size_t n = table.size();
  return term(std::move(table), ring, Monomial(n), c);
}

Poly Poly::variable(VarTable table, Ring ring, std::size_t i) {
  if (i >= table.size()) throw InputError("variable index out of range");
  const std::size_t n = table.size();
  return term(std::move(table), ring, Monomial::unit(n, i), Rational(1));
}

Poly Poly::term(VarTable table, Ring ring, Monomial m, const Rational& c) {
  Terms t;
  t.emplace(std::move(m), c);
  return Poly(std::move(table), ring, std::move(t));
}

Poly Poly::linear(VarTable table, Ring ring, std::span<const Rational> coeffs) {
  if (coeffs.size() != table.size()) throw InputError("linear form has wrong number of coefficients");
  Terms t;
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    if (coeffs[i] != 0) t.emplace(Monomial::unit(table.size(), i), coeffs[i]);
  }
  return Poly(std::move(table), ring, std::move(t));
}

Rational Poly::coefficient(const Monomial& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? Rational(0) : it->second;
}

std::optional<unsigned> Poly::homogeneous_degree() const {
  if (terms_.empty()) return std::nullopt;
  const unsigned d = terms_.begin()->first.degree();
  for (const auto& [m, c] : terms_) {
    if (m.degree() != d) return std::nullopt;
  }
  return d;
}

unsigned Poly::max_degree() const {
  return terms_.empty() ? 0u : terms_.begin()->first.degree();
}

std::vector<Rational> Poly::linear_coefficients() const {
  std::vector<Rational> out(nvars());
  for (const auto& [m, c] : terms_) {
    if (m.degree() != 1) throw InputError("expected a linear form, got " + to_string(*this));
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (m.exps[i] == 1) out[i] = c;
    }
  }
  return out;
}

bool operator==(const Poly& a, const Poly& b) {
  return a.ring_ == b.ring_ && a.table_ == b.table_ && a.terms_ == b.terms_;
}

namespace {

void check_compatible(const Poly& a, const Poly& b, const char* op) {
  if (!(a.table() == b.table())) throw InputError(std::string(op) + ": mismatched variable tables");
  if (a.ring() != b.ring()) throw InputError(std::string(op) + ": mixing primal and dual polynomials");
}

}  // namespace

Poly add(const Poly& a, const Poly& b) {
  check_compatible(a, b, "add");
  Poly::Terms t = a.terms();
  for (const auto& [m, c] : b.terms()) {
    auto [it, inserted] = t.try_emplace(m, c);
    if (!inserted) {
      it->second += c;
      if (it->second == 0) t.erase(it);
    }
  }
  return Poly(a.table(), a.ring(), std::move(t));
}

Poly negate(const Poly& p) {
  Poly::Terms t = p.terms();
  for (auto& [m, c] : t) c = -c;
  return Poly(p.table(), p.ring(), std::move(t));
}

Poly subtract(const Poly& a, const Poly& b) { return add(a, negate(b)); }

Poly scale(const Poly& p, const Rational& c) {
  if (c == 0) return Poly(p.table(), p.ring());
  Poly::Terms t = p.terms();
  for (auto& [m, v] : t) v *= c;
  return Poly(p.table(), p.ring(), std::move(t));
}

Poly multiply(const Poly& a, const Poly& b) {
  check_compatible(a, b, "multiply");
  Poly::Terms t;
  for (const auto& [ma, ca] : a.terms()) {
    for (const auto& [mb, cb] : b.terms()) {
      Rational prod = ca * cb;
      auto [it, inserted] = t.try_emplace(ma * mb, prod);
      if (!inserted) it->second += prod;
    }
  }
  return Poly(a.table(), a.ring(), std::move(t));
}

Poly power(const Poly& p, unsigned k) {
  Poly result = Poly::constant(p.table(), p.ring(), Rational(1));
  Poly base = p;
  while (k > 0) {
    if (k & 1u) result = multiply(result, base);
    k >>= 1u;
    if (k > 0) base = multiply(base, base);
  }
  return result;
}

Poly substitute_linear(const Poly& p, std::span<const Poly> images) {
  if (images.size() != p.nvars()) throw InputError("substitute_linear: need one image per variable");
  if (images.empty()) return p;
  const VarTable& target = images.front().table();
  const Ring ring = images.front().ring();
  for (const auto& img : images) {
    if (!(img.table() == target) || img.ring() != ring) {
      throw InputError("substitute_linear: images live on different tables");
    }
    if (!img.is_zero() && img.homogeneous_degree() != 1u) {
      throw InputError("substitute_linear: non-linear image " + to_string(img));
    }
  }
  // powers[i][e] = images[i]^e, built lazily
  std::vector<std::vector<Poly>> powers(images.size());
  auto image_power = [&](std::size_t i, std::uint32_t e) -> const Poly& {
    auto& cache = powers[i];
    if (cache.empty()) cache.push_back(Poly::constant(target, ring, Rational(1)));
    while (cache.size() <= e) cache.push_back(multiply(cache.back(), images[i]));
    return cache[e];
  };
  Poly result(target, ring);
  for (const auto& [m, c] : p.terms()) {
    Poly prod = Poly::constant(target, ring, c);
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (m.exps[i] > 0) prod = multiply(prod, image_power(i, m.exps[i]));
    }
    result = add(result, prod);
  }
  return result;
}

Rational evaluate(const Poly& p, std::span<const Rational> point) {
  if (point.size() != p.nvars()) throw InputError("evaluate: point has the wrong number of coordinates");
  Rational acc;
  for (const auto& [m, c] : p.terms()) {
    Rational v = c;
    for (std::size_t i = 0; i < m.size(); ++i)
      for (std::uint32_t k = 0; k < m.exps[i]; ++k) v *= point[i];
    acc += v;
  }
  return acc;
}

Poly graded_component(const Poly& p, unsigned d) {
  Poly::Terms t;
  for (const auto& [m, c] : p.terms()) {
    if (m.degree() == d) t.emplace(m, c);
  }
  return Poly(p.table(), p.ring(), std::move(t));
}

Poly reinterpret(const Poly& p, Ring ring) { return Poly(p.table(), ring, p.terms()); }

std::vector<Rational> coefficient_vector(const Poly& p, std::span<const Monomial> basis) {
  std::vector<Rational> out(basis.size());
  std::map<Monomial, std::size_t, GrlexGreater> index;
  for (std::size_t i = 0; i < basis.size(); ++i) index.emplace(basis[i], i);
  for (const auto& [m, c] : p.terms()) {
    auto it = index.find(m);
    if (it == index.end()) throw InputError("polynomial has a term outside the requested basis: " + to_string(p));
    out[it->second] = c;
  }
  return out;
}

Poly from_coefficients(const VarTable& table, Ring ring, std::span<const Monomial> basis,
                       std::span<const Rational> coeffs) {
  if (basis.size() != coeffs.size()) throw InputError("from_coefficients: size mismatch");
  Poly::Terms t;
  for (std::size_t i = 0; i < basis.size(); ++i) {
    if (coeffs[i] != 0) t.emplace(basis[i], coeffs[i]);
  }
  return Poly(table, ring, std::move(t));
}

std::string to_string(const Poly& p) {
  if (p.is_zero()) return "0";
  const auto& names = p.ring() == Ring::Primal ? p.table().primal_names() : p.table().dual_names();
  std::ostringstream os;
  bool first = true;
  for (const auto& [m, c] : p.terms()) {
    const bool negative = c < 0;
    Rational mag = negative ? Rational(-c) : c;
    if (first) {
      if (negative) os << '-';
    } else {
      os << (negative ? " - " : " + ");
    }
    first = false;
    bool wrote = false;
    if (mag != 1 || m.degree() == 0) {
      os << mag.get_str();
      wrote = true;
    }
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (m.exps[i] == 0) continue;
      if (wrote) os << '*';
      os << names[i];
      if (m.exps[i] > 1) os << '^' << m.exps[i];
      wrote = true;
    }
  }
  return os.str();
}

}  // namespace apolar

#include <apolar/errors.hpp>
#include <apolar/wildcert.hpp>

#include "univariate.hpp"

#include <algorithm>
#include <numeric>
#include <set>

namespace apolar {

namespace {

std::string join(std::span<const std::size_t> v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
  return s;
}

std::string join_vec(std::span<const Rational> v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ":" : "") + to_string(v[i]);
  return s + ")";
}

unsigned form_degree(const Poly& f, const char* who) {
  if (f.ring() != Ring::Primal || f.is_zero() || !f.homogeneous_degree())
    throw InputError(std::string(who) + ": expected a nonzero homogeneous primal form");
  return *f.homogeneous_degree();
}

void require_dual_linear(std::span<const Poly> forms, const Poly& f, const char* what) {
  for (const auto& b : forms) {
    if (b.ring() != Ring::Dual || !(b.table() == f.table()) || b.homogeneous_degree() != 1u)
      throw InputError(std::string(what) + " must be nonzero dual linear forms over the table of f");
  }
}

QVector lin(const Poly& p) { return p.linear_coefficients(); }

std::vector<QVector> lin_all(std::span<const Poly> forms) {
  std::vector<QVector> out;
  for (const auto& p : forms) out.push_back(lin(p));
  return out;
}

std::vector<Poly> forms_from(const VarTable& t, Ring ring, std::span<const QVector> vecs) {
  std::vector<Poly> out;
  for (const auto& v : vecs) out.push_back(Poly::linear(t, ring, v));
  return out;
}

Poly combo(std::span<const Poly> forms, std::span<const Rational> a) {
  Poly s(forms.front().table(), forms.front().ring());
  for (std::size_t i = 0; i < forms.size(); ++i) s = add(s, scale(forms[i], a[i]));
  return s;
}

void normalize_projective(QVector& v) {
  auto it = std::find_if(v.begin(), v.end(), [](const Rational& x) { return x != 0; });
  if (it == v.end()) return;
  const Rational lead = *it;
  for (auto& x : v) x /= lead;
}

std::size_t pivot_of(const QVector& row) {
  for (std::size_t i = 0; i < row.size(); ++i)
    if (row[i] != 0) return i;
  return row.size();
}

/// Unit dual forms at the non-pivot columns of span(forms).
std::vector<Poly> coordinate_complement(const VarTable& t, std::span<const Poly> forms) {
  const auto basis = span_basis(lin_all(forms), t.size());
  std::vector<bool> piv(t.size(), false);
  for (const auto& r : basis) piv[pivot_of(r)] = true;
  std::vector<Poly> out;
  for (std::size_t j = 0; j < t.size(); ++j)
    if (!piv[j]) out.push_back(Poly::variable(t, Ring::Dual, j));
  return out;
}

bool products_annihilate(const Poly& f, std::span<const Poly> a, std::span<const Poly> b) {
  for (const auto& x : a)
    for (const auto& y : b)
      if (!contract(multiply(x, y), f).is_zero()) return false;
  return true;
}

// w[i][j] = coefficients of (beta_i alpha_j) f.
struct ProductSystem {
  std::size_t rows = 0;
  std::vector<std::vector<QVector>> w;

  QMatrix at(std::span<const Rational> a) const {
    const std::size_t p = w.empty() ? 0 : w.front().size();
    QMatrix m(rows, p);
    for (std::size_t i = 0; i < w.size(); ++i) {
      if (a[i] == 0) continue;
      for (std::size_t j = 0; j < p; ++j)
        for (std::size_t r = 0; r < rows; ++r) m(r, j) += a[i] * w[i][j][r];
    }
    return m;
  }
};

ProductSystem product_system(const Poly& f, std::span<const Poly> beta, std::span<const Poly> alpha) {
  const unsigned d = form_degree(f, "product locus");
  if (d < 2) throw InputError("product locus: degree must be at least 2");
  require_dual_linear(beta, f, "beta forms");
  require_dual_linear(alpha, f, "alpha forms");
  const auto basis = monomials_of_degree(f.nvars(), d - 2);
  ProductSystem ps;
  ps.rows = basis.size();
  for (const auto& b : beta) {
    const Poly bf = contract(b, f);
    auto& row = ps.w.emplace_back();
    for (const auto& a : alpha) row.push_back(coefficient_vector(contract(a, bf), basis));
  }
  return ps;
}

std::optional<QVector> kernel_vector(const ProductSystem& ps, std::span<const Rational> a) {
  auto k = kernel(ps.at(a));
  if (k.basis.empty()) return std::nullopt;
  return k.basis.front();
}

std::vector<Rational> quadric_symmetric(const Poly& q, std::size_t m) {
  std::vector<Rational> s(m * m);
  for (const auto& [mono, c] : q.terms()) {
    std::vector<std::size_t> idx;
    for (std::size_t i = 0; i < m; ++i)
      for (std::uint32_t e = 0; e < mono.exps[i]; ++e) idx.push_back(i);
    if (idx[0] == idx[1]) {
      s[idx[0] * m + idx[0]] += c;
    } else {
      s[idx[0] * m + idx[1]] += c / 2;
      s[idx[1] * m + idx[0]] += c / 2;
    }
  }
  return s;
}

Rational polar(const std::vector<Rational>& s, std::size_t m, std::span<const Rational> x, std::span<const Rational> y) {
  Rational acc;
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) acc += x[i] * s[i * m + j] * y[j];
  return acc;
}

std::optional<Rational> rational_sqrt(const Rational& q) {
  if (q < 0) return std::nullopt;
  if (!mpz_perfect_square_p(q.get_num().get_mpz_t()) || !mpz_perfect_square_p(q.get_den().get_mpz_t()))
    return std::nullopt;
  Integer n = sqrt(q.get_num()), d = sqrt(q.get_den());
  return Rational(n, d);
}

// Visits every vector in [-r, r]^m whose first nonzero entry is positive.
template <class Fn>
bool for_each_small(std::size_t m, int r, Fn&& fn) {
  std::vector<int> v(m, -r);
  while (true) {
    auto lead = std::find_if(v.begin(), v.end(), [](int x) { return x != 0; });
    if (lead != v.end() && *lead > 0) {
      QVector q(v.begin(), v.end());
      if (fn(q)) return true;
    }
    std::size_t i = 0;
    while (i < m && v[i] == r) v[i++] = -r;
    if (i == m) return false;
    ++v[i];
  }
}

}  // namespace

// ------------------------------------------------------------------ cactus

std::vector<Poly> linear_saturation_space(const VarTable& table, std::span<const Poly> gens, unsigned k) {
  const std::size_t n = table.size();
  std::vector<Poly> g(gens.begin(), gens.end());
  const unsigned top = 1 + k;
  const auto slice = generated_slice(table, g, top);
  const auto rows = slice_vectors(slice);
  const auto monos = monomials_of_degree(n, top);
  std::map<Monomial, std::size_t, GrlexGreater> where;
  for (std::size_t i = 0; i < monos.size(); ++i) where.emplace(monos[i], i);
  std::vector<bool> piv(monos.size(), false);
  for (const auto& r : rows) piv[pivot_of(r)] = true;

  // One block of rows per mu: the non-pivot coordinates of x_j mu mod I.
  std::vector<QVector> eqs;
  for (const auto& mu : monomials_of_degree(n, k)) {
    std::vector<QVector> red;
    for (std::size_t j = 0; j < n; ++j) {
      QVector e(monos.size());
      e[where.at(mu * Monomial::unit(n, j))] = 1;
      red.push_back(reduce_by_echelon(std::move(e), rows));
    }
    for (std::size_t c = 0; c < monos.size(); ++c) {
      if (piv[c]) continue;
      QVector eq(n);
      bool any = false;
      for (std::size_t j = 0; j < n; ++j) {
        eq[j] = red[j][c];
        any |= eq[j] != 0;
      }
      if (any) eqs.push_back(std::move(eq));
    }
  }
  if (eqs.empty()) {
    std::vector<QVector> id;
    for (std::size_t j = 0; j < n; ++j) {
      QVector e(n);
      e[j] = 1;
      id.push_back(e);
    }
    return forms_from(table, Ring::Dual, id);
  }
  return forms_from(table, Ring::Dual, kernel(QMatrix::from_rows(eqs, n)).basis);
}

CactusLowerEvidence cactus_lower_via_slice(const Poly& f, unsigned saturation_power) {
  const unsigned d = form_degree(f, "cactus_lower_via_slice");
  if (d < 3) throw InputError("cactus_lower_via_slice: degree must be at least 3");
  if (saturation_power == 0) throw InputError("cactus_lower_via_slice: saturation power must be positive");
  CactusLowerEvidence ev;
  ev.saturation_power = saturation_power;
  const auto h = hilbert_function(f);
  ev.concise = h(1);
  ev.slice_codim = h(2);
  ev.ann2 = ann_slice(f, 2);
  ev.log.push_back({"hilbert", true,
                    "H_f(1) = " + std::to_string(ev.concise) + ", H_f(2) = " + std::to_string(ev.slice_codim), false});
  ev.log.push_back({"ann2", true, "dim Ann(f)_2 = " + std::to_string(ev.ann2.dim()), false});

  ev.saturating_forms = linear_saturation_space(f.table(), ev.ann2.basis, saturation_power);
  bool rechecked = true;
  for (const auto& g : ev.saturating_forms) rechecked &= saturation_witness(ev.ann2.basis, g, saturation_power);
  std::string forms;
  for (const auto& g : ev.saturating_forms) forms += (forms.empty() ? "" : ", ") + to_string(g);
  ev.log.push_back({"saturation_space", rechecked,
                    "m^" + std::to_string(saturation_power) + " * gamma in (Ann(f)_2) for gamma in <" + forms + ">",
                    false});
  if (!rechecked) throw CertificateError("saturation space failed its membership re-check");

  std::vector<Poly> gens = ev.ann2.basis;
  gens.insert(gens.end(), ev.saturating_forms.begin(), ev.saturating_forms.end());
  ev.saturated_h1 = quotient_hilbert(f.table(), gens, 1).at(1);
  const bool drop = ev.saturated_h1 < ev.concise;
  ev.log.push_back({"saturated_h1", drop,
                    "H(S/J)(1) <= " + std::to_string(ev.saturated_h1) + " vs H_f(1) = " + std::to_string(ev.concise),
                    false});
  if (!drop) return ev;
  const unsigned r = static_cast<unsigned>(ev.slice_codim);
  ev.bound = r + 1;
  const std::string detail = "a scheme of length <= " + std::to_string(r) +
                             " apolar to f would have I(R)_2 = Ann(f)_2, so its ideal contains the saturation, "
                             "whose degree-1 part already has codimension " +
                             std::to_string(ev.saturated_h1) + " < " + std::to_string(ev.concise);
  ev.log.push_back({"length_argument", true, detail, true});
  ev.deductions.push_back({DeductionKind::SaturationCertificate, RankNotion::Cactus, Side::Lower, r + 1, detail, true});
  return ev;
}

bool verify(const CactusLowerEvidence& ev, const Poly& f) {
  const auto h = hilbert_function(f);
  if (h(1) != ev.concise || h(2) != ev.slice_codim) return false;
  const auto ann2 = ann_slice(f, 2);
  if (ann2.basis != ev.ann2.basis) return false;
  for (const auto& g : ev.saturating_forms)
    if (!saturation_witness(ann2.basis, g, ev.saturation_power)) return false;
  const auto again = linear_saturation_space(f.table(), ann2.basis, ev.saturation_power);
  if (again != ev.saturating_forms) return false;
  std::vector<Poly> gens = ann2.basis;
  gens.insert(gens.end(), again.begin(), again.end());
  if (quotient_hilbert(f.table(), gens, 1).at(1) != ev.saturated_h1) return false;
  if (ev.bound) return ev.saturated_h1 < ev.concise && *ev.bound == ev.slice_codim + 1;
  return ev.saturated_h1 >= ev.concise;
}

// ------------------------------------------------------------------ product locus

std::optional<QVector> solve_product(const Poly& f, std::span<const Poly> beta_forms, std::span<const Poly> alpha_forms,
                                     std::span<const Rational> a) {
  if (a.size() != beta_forms.size()) throw InputError("solve_product: point has the wrong number of coordinates");
  return kernel_vector(product_system(f, beta_forms, alpha_forms), a);
}

QVector conic_point(const Poly& conic, std::span<const Rational> p, std::span<const Rational> u,
                    std::span<const Rational> w, const Rational& s) {
  const std::size_t m = conic.nvars();
  if (p.size() != m || u.size() != m || w.size() != m) throw InputError("conic_point: dimension mismatch");
  const auto sym = quadric_symmetric(conic, m);
  QVector dir(m);
  for (std::size_t i = 0; i < m; ++i) dir[i] = u[i] + s * w[i];
  const Rational qd = polar(sym, m, dir, dir);
  const Rational bpd = polar(sym, m, p, dir);
  QVector out(m);
  for (std::size_t i = 0; i < m; ++i) out[i] = qd * p[i] - 2 * bpd * dir[i];
  normalize_projective(out);
  return out;
}

std::optional<QVector> find_rational_point(const Poly& conic) {
  const std::size_t m = conic.nvars();
  if (conic.homogeneous_degree() != 2u) throw InputError("find_rational_point: expected a quadric");
  std::optional<QVector> found;
  for_each_small(m, 3, [&](const QVector& v) {
    if (evaluate(conic, v) != 0) return false;
    found = v;
    return true;
  });
  if (found || m != 3) return found;
  // Lines l.a = 0 meeting the conic in a rational pair of points.
  const auto sym = quadric_symmetric(conic, m);
  for_each_small(m, 4, [&](const QVector& l) {
    auto ker = kernel(QMatrix::from_rows(std::vector<QVector>{l}, m));
    const QVector& u = ker.basis[0];
    const QVector& w = ker.basis[1];
    const Rational A = polar(sym, m, w, w), B = 2 * polar(sym, m, u, w), C = polar(sym, m, u, u);
    std::optional<Rational> s;
    if (A == 0) {
      found = w;
      return true;
    }
    auto root = rational_sqrt(B * B - 4 * A * C);
    if (!root) return false;
    s = (-B + *root) / (2 * A);
    QVector pt(m);
    for (std::size_t i = 0; i < m; ++i) pt[i] = u[i] + *s * w[i];
    found = pt;
    return true;
  });
  if (found) normalize_projective(*found);
  return found;
}

ProductLocus product_locus(const Poly& f, std::span<const Poly> beta_forms, std::span<const Poly> alpha_forms) {
  if (beta_forms.empty() || alpha_forms.empty()) throw InputError("product_locus: empty beta or alpha span");
  const auto ps = product_system(f, beta_forms, alpha_forms);
  {
    auto all = lin_all(beta_forms);
    auto al = lin_all(alpha_forms);
    all.insert(all.end(), al.begin(), al.end());
    if (span_basis(all, f.nvars()).size() != all.size())
      throw InputError("product_locus: beta and alpha forms are not independent");
  }
  const std::size_t m = beta_forms.size(), p = alpha_forms.size();
  ProductLocus L;
  L.beta_forms.assign(beta_forms.begin(), beta_forms.end());
  L.alpha_forms.assign(alpha_forms.begin(), alpha_forms.end());

  std::vector<std::string> anames;
  for (std::size_t i = 0; i < m; ++i) anames.push_back("a" + std::to_string(i));
  const VarTable at(anames);
  const auto quad = monomials_of_degree(m, 2);

  if (p == 2) {
    std::vector<std::array<Poly, 2>> v;
    for (std::size_t r = 0; r < ps.rows; ++r) {
      std::array<Poly, 2> e{Poly(at, Ring::Primal), Poly(at, Ring::Primal)};
      for (std::size_t j = 0; j < 2; ++j) {
        QVector c(m);
        for (std::size_t i = 0; i < m; ++i) c[i] = ps.w[i][j][r];
        e[j] = Poly::linear(at, Ring::Primal, c);
      }
      v.push_back(std::move(e));
    }
    std::vector<QVector> eqs;
    for (std::size_t r = 0; r < ps.rows; ++r)
      for (std::size_t s = r + 1; s < ps.rows; ++s) {
        Poly minor = subtract(multiply(v[r][0], v[s][1]), multiply(v[s][0], v[r][1]));
        if (!minor.is_zero()) eqs.push_back(coefficient_vector(minor, quad));
      }
    for (const auto& e : span_basis(eqs, quad.size())) L.equations.push_back(from_coefficients(at, Ring::Primal, quad, e));
  }

  if (p != 2) {
    L.diagnostic = "alpha span has dimension " + std::to_string(p) + "; the locus is only described for dimension 2";
  } else if (m != 3) {
    L.diagnostic = "beta span has dimension " + std::to_string(m) + "; the locus is not a plane curve";
  } else if (L.equations.empty()) {
    L.diagnostic = "every 2x2 minor vanishes: the locus is the whole plane";
  } else if (L.equations.size() > 1) {
    L.diagnostic = std::to_string(L.equations.size()) + " independent quadrics: the locus is not a conic";
  } else {
    const Poly& q = L.equations.front();
    const auto sym = quadric_symmetric(q, m);
    QMatrix sm(m, m);
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < m; ++j) sm(i, j) = sym[i * m + j];
    if (rank(sm) < m) {
      L.diagnostic = "the single quadric " + to_string(q) + " is singular (a line pair or double line)";
    } else if (auto P = find_rational_point(q); !P) {
      L.diagnostic = "no rational point found on " + to_string(q);
    } else {
      L.conic = q;
      L.shape = LocusShape::Conic;
      std::size_t ui = m, wi = m;
      for (std::size_t i = 0; i < m && ui == m; ++i)
        for (std::size_t j = i + 1; j < m; ++j) {
          QMatrix t(m, m);
          for (std::size_t r = 0; r < m; ++r) t(r, 0) = (*P)[r];
          t(i, 1) = 1;
          t(j, 2) = 1;
          if (rank(t) == m) {
            ui = i;
            wi = j;
            break;
          }
        }
      QVector u(m), w(m);
      u[ui] = 1;
      w[wi] = 1;
      std::vector<QVector> pts{*P};
      for (const Rational& s : {Rational(0), Rational(1), Rational(-1), Rational(2), Rational(-2), Rational(1, 2),
                               Rational(-1, 2), Rational(3)}) {
        auto pt = conic_point(q, *P, u, w, s);
        if (!is_zero(pt) && std::find(pts.begin(), pts.end(), pt) == pts.end()) pts.push_back(pt);
      }
      for (auto& a : pts) {
        normalize_projective(a);
        auto c = kernel_vector(ps, a);
        if (!c || evaluate(q, a) != 0) {
          L.shape = LocusShape::NotConic;
          L.diagnostic = "sample " + join_vec(a) + " on the conic has no product solution";
          break;
        }
        L.samples.push_back({a, *c});
      }
      if (L.shape == LocusShape::Conic) {
        std::vector<QVector> ev;
        for (const auto& s : L.samples) {
          QVector row;
          for (const auto& mono : quad) {
            Rational x = 1;
            for (std::size_t i = 0; i < m; ++i)
              for (std::uint32_t e = 0; e < mono.exps[i]; ++e) x *= s.a[i];
            row.push_back(x);
          }
          ev.push_back(std::move(row));
        }
        const auto fit = kernel(QMatrix::from_rows(ev, quad.size()));
        const auto expect = span_basis(std::vector<QVector>{coefficient_vector(q, quad)}, quad.size());
        L.fit_agrees = fit.basis.size() == 1 && fit.basis == expect;
      }
    }
  }

  if (L.shape == LocusShape::NotConic && L.samples.empty()) {
    std::set<QVector> seen;
    for_each_small(m, 2, [&](const QVector& v) {
      QVector a = v;
      normalize_projective(a);
      if (!seen.insert(a).second) return false;
      if (auto c = kernel_vector(ps, a)) L.samples.push_back({a, *c});
      return L.samples.size() >= 40;
    });
  }
  return L;
}

ProductLocus product_locus(const Poly& f, std::span<const std::size_t> beta_vars, std::span<const std::size_t> alpha_vars) {
  std::vector<Poly> b, a;
  for (auto i : beta_vars) b.push_back(Poly::variable(f.table(), Ring::Dual, i));
  for (auto i : alpha_vars) a.push_back(Poly::variable(f.table(), Ring::Dual, i));
  return product_locus(f, b, a);
}

// ------------------------------------------------------------------ gamma spaces

namespace {

// Rows: coefficients of x_j^* g for each dual variable j, per target monomial.
void append_gamma_rows(const Poly& g, std::size_t n, std::vector<QVector>& rows) {
  if (g.is_zero()) return;
  const unsigned e = *g.homogeneous_degree();
  if (e == 0) {
    rows.push_back(QVector(n));
    return;
  }
  const auto basis = monomials_of_degree(n, e - 1);
  std::vector<QVector> cols;
  for (std::size_t j = 0; j < n; ++j) cols.push_back(coefficient_vector(contract(Poly::variable(g.table(), Ring::Dual, j), g), basis));
  for (std::size_t r = 0; r < basis.size(); ++r) {
    QVector row(n);
    for (std::size_t j = 0; j < n; ++j) row[j] = cols[j][r];
    rows.push_back(std::move(row));
  }
}

GammaSpace gamma_from_rows(const VarTable& t, const std::vector<QVector>& rows) {
  const std::size_t n = t.size();
  std::vector<QVector> basis;
  if (rows.empty()) {
    for (std::size_t j = 0; j < n; ++j) {
      QVector e(n);
      e[j] = 1;
      basis.push_back(e);
    }
  } else {
    basis = kernel(QMatrix::from_rows(rows, n)).basis;
  }
  return {basis.size(), forms_from(t, Ring::Dual, basis)};
}

}  // namespace

GammaSpace gamma_space(const Poly& f, std::span<const Poly> beta_forms, std::span<const Rational> a) {
  form_degree(f, "gamma_space");
  require_dual_linear(beta_forms, f, "beta forms");
  if (a.size() != beta_forms.size() || beta_forms.empty()) throw InputError("gamma_space: point has the wrong number of coordinates");
  const Poly ba = combo(beta_forms, a);
  if (ba.is_zero()) throw InputError("gamma_space: beta_a is zero");
  std::vector<QVector> rows;
  append_gamma_rows(contract(ba, f), f.nvars(), rows);
  return gamma_from_rows(f.table(), rows);
}

GammaSpace common_gamma_space(const Poly& f, std::span<const Poly> beta_forms) {
  form_degree(f, "common_gamma_space");
  require_dual_linear(beta_forms, f, "beta forms");
  std::vector<QVector> rows;
  for (const auto& b : beta_forms) append_gamma_rows(contract(b, f), f.nvars(), rows);
  return gamma_from_rows(f.table(), rows);
}

bool forced_square_check(const Poly& f, std::span<const Poly> beta_forms) {
  const auto g = common_gamma_space(f, beta_forms);
  const auto bv = lin_all(beta_forms);
  for (const auto& p : g.basis)
    if (!in_span(lin(p), bv)) return false;
  return true;
}

bool squares_in_span(const Poly& f, std::span<const Poly> beta_forms, std::span<const Poly> alpha_forms) {
  const unsigned d = form_degree(f, "squares_in_span");
  if (d < 2) throw InputError("squares_in_span: degree must be at least 2");
  require_dual_linear(beta_forms, f, "beta forms");
  require_dual_linear(alpha_forms, f, "alpha forms");
  if (alpha_forms.size() != 2) throw InputError("squares_in_span: complement must have dimension 2");
  auto all = lin_all(beta_forms);
  auto al = lin_all(alpha_forms);
  all.insert(all.end(), al.begin(), al.end());
  if (span_basis(all, f.nvars()).size() != f.nvars())
    throw InputError("squares_in_span: beta and alpha forms do not form a basis of the dual space");
  if (!products_annihilate(f, beta_forms, beta_forms))
    throw InputError("squares_in_span: products of beta forms do not annihilate f");

  const auto basis = monomials_of_degree(f.nvars(), d - 2);
  std::vector<QVector> mixed;
  for (const auto& a : alpha_forms)
    for (const auto& b : beta_forms) mixed.push_back(coefficient_vector(contract(multiply(a, b), f), basis));
  const auto L = span_basis(mixed, basis.size());
  auto q = [&](std::size_t i, std::size_t k) {
    return reduce_by_echelon(coefficient_vector(contract(multiply(alpha_forms[i], alpha_forms[k]), f), basis), L);
  };
  const QVector q00 = q(0, 0), q01 = q(0, 1), q11 = q(1, 1);

  bool any = false, root_at_infinity = true;
  detail::UPoly common;
  for (std::size_t r = 0; r < basis.size(); ++r) {
    // u = c0 alpha_0 + c1 alpha_1; coordinate r of u^2 f is this binary quadric.
    detail::UPoly form{q11[r], 2 * q01[r], q00[r]};
    detail::trim(form);
    if (form.empty()) continue;
    any = true;
    if (q00[r] != 0) root_at_infinity = false;
    common = detail::gcd(common, form);
  }
  if (!any) return false;
  return !root_at_infinity && common.size() <= 1;
}

// ------------------------------------------------------------------ rank >= 9

Rank9Outcome rank9_lower_cert(const Poly& f, unsigned r_max, std::span<const Poly> beta_forms) {
  Rank9Outcome out;
  auto fail = [&](const std::string& stage, std::string detail) {
    out.log.push_back({stage, false, std::move(detail), false});
    out.failing_stage = stage;
    return out;
  };
  const unsigned d = form_degree(f, "rank9_lower_cert");
  const std::size_t n = f.nvars();
  Rank9Certificate cert;
  cert.r_max = r_max;
  cert.rank_lower = r_max + 1;

  // (a)
  if (d != 3) return fail("a:slice_shape", "expected a cubic, got degree " + std::to_string(d));
  const auto h = hilbert_function(f);
  if (h(1) != n) return fail("a:slice_shape", "f is not concise: Ann(f)_1 has dimension " + std::to_string(n - h(1)));
  const auto ann2 = ann_slice(f, 2);
  cert.ann2_dim = ann2.dim();
  if (beta_forms.empty()) {
    cert.beta_forms = linear_saturation_space(f.table(), ann2.basis, 3);
  } else {
    require_dual_linear(beta_forms, f, "beta forms");
    cert.beta_forms = forms_from(f.table(), Ring::Dual, span_basis(lin_all(beta_forms), n));
  }
  if (cert.beta_forms.empty()) return fail("a:slice_shape", "the beta span is empty");
  if (!products_annihilate(f, cert.beta_forms, cert.beta_forms))
    return fail("a:slice_shape", "beta span squared is not contained in Ann(f)_2");
  cert.alpha_forms = coordinate_complement(f.table(), cert.beta_forms);
  if (cert.alpha_forms.size() != 2)
    return fail("a:slice_shape", "complement of the beta span has dimension " + std::to_string(cert.alpha_forms.size()) +
                                     ", expected 2");
  if (!squares_in_span(f, cert.beta_forms, cert.alpha_forms))
    return fail("a:slice_shape", "could not show that every square in Ann(f)_2 comes from the beta span");
  out.log.push_back({"a:slice_shape", true,
                     "H_f = (" + join(h.values) + "), dim Ann(f)_2 = " + std::to_string(cert.ann2_dim) +
                         ", beta span of dimension " + std::to_string(cert.beta_forms.size()) +
                         " with B^2 in Ann(f)_2 and all squares in Ann(f)_2 from B",
                     false});

  // (b)
  cert.quadric_space_dim = n * (n + 1) / 2;
  if (r_max >= cert.quadric_space_dim)
    return fail("b:quadric_count", "r_max = " + std::to_string(r_max) + " does not force any quadric");
  cert.forced_quadrics = cert.quadric_space_dim - r_max;
  cert.codim_bound = cert.ann2_dim > cert.forced_quadrics ? cert.ann2_dim - cert.forced_quadrics : 0;
  out.log.push_back({"b:quadric_count", true,
                     "I(R)_2 has dimension >= " + std::to_string(cert.quadric_space_dim) + " - " + std::to_string(r_max) +
                         " = " + std::to_string(cert.forced_quadrics) + ", codimension <= " +
                         std::to_string(cert.codim_bound) + " in Ann(f)_2",
                     false});

  // (c)
  cert.locus = product_locus(f, cert.beta_forms, cert.alpha_forms);
  if (cert.locus.shape != LocusShape::Conic) return fail("c:product_conic", cert.locus.diagnostic);
  if (cert.locus.samples.size() < 5 || !cert.locus.fit_agrees)
    return fail("c:product_conic", "sample points do not pin down the conic");
  out.log.push_back({"c:product_conic", true,
                     "smooth conic " + to_string(*cert.locus.conic) + ", " + std::to_string(cert.locus.samples.size()) +
                         " verified rational samples, fitted quadric agrees",
                     false});

  // (d)
  for (const auto& s : cert.locus.samples) {
    const auto g = gamma_space(f, cert.beta_forms, s.a);
    cert.gamma_dims.push_back(g.dim);
    if (g.dim <= cert.codim_bound)
      return fail("d:gamma_family", "gamma space at " + join_vec(s.a) + " has dimension " + std::to_string(g.dim) +
                                        " <= " + std::to_string(cert.codim_bound));
  }
  out.log.push_back({"d:gamma_family", true,
                     "dim Gamma_a = (" + join(cert.gamma_dims) + ") > " + std::to_string(cert.codim_bound) +
                         ", so each meets I(R) nontrivially",
                     false});

  // (e)
  if (!forced_square_check(f, cert.beta_forms))
    return fail("e:forced_square", "some gamma with B gamma in Ann(f)_2 lies outside B");
  out.log.push_back({"e:forced_square", true, "every gamma with B * gamma in Ann(f)_2 lies in B", false});

  out.log.push_back({"f:product_propagation", true,
                     "the conic is irreducible, so beta_a * gamma in I(R) for one a spreads to all of B * gamma", true});
  out.log.push_back({"g:radicality", true,
                     "gamma in B gives gamma^2 in I(R); I(R) is radical, so gamma in I(R)_1 = 0, a contradiction: rank >= " +
                         std::to_string(cert.rank_lower),
                     true});
  cert.stages = out.log;
  out.certificate = std::move(cert);
  return out;
}

bool verify(const Rank9Certificate& cert, const Poly& f) {
  if (f.homogeneous_degree() != 3u) return false;
  const std::size_t n = f.nvars();
  if (hilbert_function(f)(1) != n) return false;
  if (ann_slice(f, 2).dim() != cert.ann2_dim) return false;
  if (cert.quadric_space_dim != n * (n + 1) / 2 || cert.r_max >= cert.quadric_space_dim) return false;
  if (cert.forced_quadrics != cert.quadric_space_dim - cert.r_max) return false;
  const std::size_t cb = cert.ann2_dim > cert.forced_quadrics ? cert.ann2_dim - cert.forced_quadrics : 0;
  if (cert.codim_bound != cb || cert.rank_lower != cert.r_max + 1) return false;
  if (cert.beta_forms.empty() || !products_annihilate(f, cert.beta_forms, cert.beta_forms)) return false;
  if (!squares_in_span(f, cert.beta_forms, cert.alpha_forms)) return false;
  const auto again = product_locus(f, cert.beta_forms, cert.alpha_forms);
  if (again.shape != LocusShape::Conic || !cert.locus.conic || !(*again.conic == *cert.locus.conic)) return false;
  if (cert.locus.samples.size() < 5 || cert.gamma_dims.size() != cert.locus.samples.size()) return false;
  for (std::size_t i = 0; i < cert.locus.samples.size(); ++i) {
    const auto& s = cert.locus.samples[i];
    if (evaluate(*cert.locus.conic, s.a) != 0 || is_zero(s.c)) return false;
    const Poly prod = multiply(combo(cert.beta_forms, s.a), combo(cert.alpha_forms, s.c));
    if (!contract(prod, f).is_zero()) return false;
    const auto g = gamma_space(f, cert.beta_forms, s.a);
    if (g.dim != cert.gamma_dims[i] || g.dim <= cert.codim_bound) return false;
  }
  if (!forced_square_check(f, cert.beta_forms)) return false;
  return std::all_of(cert.stages.begin(), cert.stages.end(), [](const StageRecord& s) { return s.passed; });
}

// ------------------------------------------------------------------ rank <= 9

Poly PowerSumDecomposition::recombine(const VarTable& table) const {
  Poly s(table, Ring::Primal);
  for (std::size_t i = 0; i < forms.size(); ++i) s = add(s, scale(power(forms[i], degree), coeffs[i]));
  return s;
}

PowerSumDecomposition rank9_upper(const Poly& f, std::span<const std::pair<Poly, Poly>> shape) {
  const unsigned d = form_degree(f, "rank9_upper");
  if (d != 3) throw InputError("rank9_upper: expected a cubic");
  Poly check(f.table(), Ring::Primal);
  std::vector<std::pair<Rational, Poly>> raw;
  for (const auto& [z, w] : shape) {
    if (z.ring() != Ring::Primal || w.ring() != Ring::Primal || !(z.table() == f.table()) || !(w.table() == f.table()))
      throw InputError("rank9_upper: shape forms must be primal forms over the table of f");
    if ((!z.is_zero() && z.homogeneous_degree() != 1u) || (!w.is_zero() && w.homogeneous_degree() != 1u))
      throw InputError("rank9_upper: shape forms must be linear");
    check = add(check, multiply(power(z, 2), w));
    raw.emplace_back(Rational(1, 6), add(z, w));
    raw.emplace_back(Rational(-1, 6), subtract(z, w));
    raw.emplace_back(Rational(-1, 3), w);
  }
  if (!(check == f)) throw InputError("rank9_upper: sum of z^2 w is " + to_string(check) + ", not f");

  PowerSumDecomposition out;
  out.degree = d;
  std::vector<QVector> keys;
  for (auto& [c, l] : raw) {
    if (l.is_zero()) continue;
    QVector v = lin(l);
    const Rational lead = *std::find_if(v.begin(), v.end(), [](const Rational& x) { return x != 0; });
    for (auto& x : v) x /= lead;
    const Rational coeff = c * lead * lead * lead;
    auto it = std::find(keys.begin(), keys.end(), v);
    if (it == keys.end()) {
      keys.push_back(v);
      out.forms.push_back(Poly::linear(f.table(), Ring::Primal, v));
      out.coeffs.push_back(coeff);
    } else {
      out.coeffs[static_cast<std::size_t>(it - keys.begin())] += coeff;
    }
  }
  for (std::size_t i = out.forms.size(); i-- > 0;) {
    if (out.coeffs[i] == 0) {
      out.coeffs.erase(out.coeffs.begin() + static_cast<std::ptrdiff_t>(i));
      out.forms.erase(out.forms.begin() + static_cast<std::ptrdiff_t>(i));
    }
  }
  if (!(out.recombine(f.table()) == f)) throw CertificateError("power sum does not re-expand to f");
  return out;
}

// ------------------------------------------------------------------ structure

std::optional<WildStructure> discover_wild_structure(const Poly& f) {
  if (form_degree(f, "discover_wild_structure") != 3) return std::nullopt;
  const std::size_t n = f.nvars();
  if (hilbert_function(f)(1) != n) return std::nullopt;
  const auto ann2 = ann_slice(f, 2);
  WildStructure ws;
  ws.beta_forms = linear_saturation_space(f.table(), ann2.basis, 3);
  if (ws.beta_forms.empty() || ws.beta_forms.size() + 2 != n) return std::nullopt;
  const auto xs = kernel(QMatrix::from_rows(lin_all(ws.beta_forms), n)).basis;
  ws.x_forms = forms_from(f.table(), Ring::Primal, xs);
  ws.alpha_forms = coordinate_complement(f.table(), ws.beta_forms);
  const Poly& e1 = ws.x_forms[0];
  const Poly& e2 = ws.x_forms[1];
  const std::vector<Poly> z{e1, add(e1, e2), e2};

  const auto cubic = monomials_of_degree(n, 3);
  std::vector<QVector> cols;
  for (const auto& zi : z) {
    const Poly z2 = power(zi, 2);
    for (std::size_t j = 0; j < n; ++j) cols.push_back(coefficient_vector(multiply(z2, Poly::variable(f.table(), Ring::Primal, j)), cubic));
  }
  auto sol = solve(QMatrix::from_columns(cols, cubic.size()), coefficient_vector(f, cubic));
  if (!sol) return std::nullopt;
  for (std::size_t i = 0; i < 3; ++i) {
    QVector wv(sol->begin() + static_cast<std::ptrdiff_t>(i * n), sol->begin() + static_cast<std::ptrdiff_t>((i + 1) * n));
    ws.shape.emplace_back(z[i], Poly::linear(f.table(), Ring::Primal, wv));
  }

  const std::vector<std::pair<Rational, Rational>> extras{{1, -1}, {1, 2}, {1, -2}, {1, 3}, {2, 1}};
  for (std::size_t a = 0; a < extras.size() && ws.tangent_data.empty(); ++a)
    for (std::size_t b = a + 1; b < extras.size() && ws.tangent_data.empty(); ++b) {
      std::vector<Poly> pts = z;
      pts.push_back(add(scale(e1, extras[a].first), scale(e2, extras[a].second)));
      pts.push_back(add(scale(e1, extras[b].first), scale(e2, extras[b].second)));
      std::vector<QVector> cubes;
      for (const auto& l : pts) cubes.push_back(coefficient_vector(power(l, 3), cubic));
      const auto ker = kernel(QMatrix::from_columns(cubes, cubic.size()));
      if (ker.basis.size() != 1) continue;
      const QVector& c = ker.basis[0];
      if (c[0] == 0 || c[1] == 0 || c[2] == 0) continue;
      for (std::size_t i = 0; i < pts.size(); ++i) {
        Poly dir = i < 3 ? scale(ws.shape[i].second, 1 / (3 * c[i])) : Poly(f.table(), Ring::Primal);
        ws.tangent_data.push_back({c[i], pts[i], dir});
      }
    }
  if (ws.tangent_data.empty()) return std::nullopt;
  return ws;
}

// ------------------------------------------------------------------ report

namespace {

std::vector<std::vector<std::size_t>> support_components(const Poly& g) {
  const std::size_t n = g.nvars();
  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  std::vector<bool> used(n, false);
  for (const auto& [m, c] : g.terms()) {
    std::optional<std::size_t> first;
    for (std::size_t i = 0; i < n; ++i) {
      if (m.exps[i] == 0) continue;
      used[i] = true;
      if (first) parent[find(i)] = find(*first);
      else first = i;
    }
  }
  std::map<std::size_t, std::vector<std::size_t>> groups;
  for (std::size_t i = 0; i < n; ++i)
    if (used[i]) groups[find(i)].push_back(i);
  std::vector<std::vector<std::size_t>> out;
  for (auto& [root, vars] : groups) out.push_back(std::move(vars));
  std::sort(out.begin(), out.end());
  return out;
}

Poly restrict_to(const Poly& g, const std::vector<std::size_t>& vars) {
  Poly::Terms t;
  for (const auto& [m, c] : g.terms()) {
    bool inside = true;
    for (std::size_t i = 0; i < m.size() && inside; ++i)
      if (m.exps[i] > 0 && !std::binary_search(vars.begin(), vars.end(), i)) inside = false;
    if (inside) t.emplace(m, c);
  }
  return Poly(g.table(), Ring::Primal, std::move(t));
}

DeductionKind sum_kind(RankNotion n) {
  switch (n) {
    case RankNotion::Rank: return DeductionKind::ExplicitDecomposition;
    case RankNotion::Border: return DeductionKind::WitnessFamily;
    case RankNotion::Smoothable: return DeductionKind::SmoothableScheme;
    case RankNotion::Cactus: return DeductionKind::SchemeSpan;
  }
  return DeductionKind::ExplicitDecomposition;
}

}  // namespace

WildReport theorem2_report(const Poly& f) {
  const unsigned d = form_degree(f, "theorem2_report");
  WildReport rep;
  rep.input = f;
  rep.degree = d;
  rep.hilbert = hilbert_function(f);
  rep.concise = rep.hilbert(1);
  if (d >= 2) rep.ann2_dim = ann_slice(f, 2).dim();
  rep.log.push_back({"hilbert", true, "H_f = (" + join(rep.hilbert.values) + ")", false});

  std::vector<Deduction> evidence = catalecticant_deductions(f);
  const auto red = concise_reduce(f);
  rep.working = red.reduced;
  const Poly& g = rep.working;
  if (red.info.n < f.nvars())
    rep.log.push_back({"concise", true, "rewritten in " + std::to_string(red.info.n) + " essential variables: " + to_string(g), false});

  if (rep.concise <= 2) {
    rep.sylvester = sylvester_binary(f);
    evidence.insert(evidence.end(), rep.sylvester->deductions.begin(), rep.sylvester->deductions.end());
    rep.log.push_back({"sylvester", true,
                       "Ann(f) generated in degrees (" + std::to_string(rep.sylvester->d1) + "," +
                           std::to_string(rep.sylvester->d2) + ")",
                       true});
  } else if (d == 2) {
    auto q = quadric_deductions(f);
    evidence.insert(evidence.end(), q.begin(), q.end());
  } else if (d <= 1) {
    // A nonzero linear form is concise in one variable and handled above.
  } else {
    const auto comps = support_components(g);
    if (comps.size() > 1) {
      std::array<std::optional<unsigned>, 4> sums{0u, 0u, 0u, 0u};
      std::vector<Poly> parts;
      for (const auto& vars : comps) {
        parts.push_back(restrict_to(g, vars));
        const auto sub = theorem2_report(parts.back());
        for (auto nn : kAllNotions) {
          auto& s = sums[static_cast<std::size_t>(nn)];
          const auto& up = sub.final[nn].upper;
          s = (s && up) ? std::optional<unsigned>(*s + *up) : std::nullopt;
        }
        rep.log.push_back({"summand", true, to_string(parts.back()), false});
      }
      for (auto nn : kAllNotions)
        if (auto s = sums[static_cast<std::size_t>(nn)])
          evidence.push_back({sum_kind(nn), nn, Side::Upper, *s,
                              "sum of the bounds of " + std::to_string(comps.size()) + " direct summands", false});
      Poly rest = subtract(g, parts.front());
      rep.direct_sum = direct_sum_extend(parts.front(), rest);
    }
    if (d == 3) {
      rep.cactus_lower = cactus_lower_via_slice(g);
      rep.log.insert(rep.log.end(), rep.cactus_lower->log.begin(), rep.cactus_lower->log.end());
      evidence.insert(evidence.end(), rep.cactus_lower->deductions.begin(), rep.cactus_lower->deductions.end());
    }
    if (d == 3 && comps.size() == 1) {
      if (auto ws = discover_wild_structure(g)) {
        rep.log.push_back({"structure", true,
                           "B of dimension " + std::to_string(ws->beta_forms.size()) + ", f = sum of " +
                               std::to_string(ws->shape.size()) + " terms z^2 w",
                           false});
        rep.border_witness = tangent_limit_family(ws->tangent_data, 3);
        rep.border_witness_verified = verify_limit(rep.border_witness->family, 1, g);
        rep.log.push_back({"border_witness", rep.border_witness_verified,
                           "(1/t) * sum of " + std::to_string(rep.border_witness->r) + " cubes tends to f", false});
        if (rep.border_witness_verified) evidence.push_back(rep.border_witness->border_upper);

        rep.double_points = double_point_span(g, ws->shape);
        if (rep.double_points) {
          evidence.insert(evidence.end(), rep.double_points->deductions.begin(), rep.double_points->deductions.end());
          rep.log.push_back({"double_points", true,
                             "f in the span of " + std::to_string(ws->shape.size()) + " double points", false});
        }

        rep.rank_upper = rank9_upper(g, ws->shape);
        const auto r = static_cast<unsigned>(rep.rank_upper->forms.size());
        evidence.push_back({DeductionKind::ExplicitDecomposition, RankNotion::Rank, Side::Upper, r,
                            "sum of " + std::to_string(r) + " cubes", false});
        rep.log.push_back({"power_sum", true, "sum of " + std::to_string(r) + " cubes", false});

        rep.rank_lower = rank9_lower_cert(g, 8, ws->beta_forms);
        if (rep.rank_lower->certificate) {
          const auto& c = *rep.rank_lower->certificate;
          evidence.push_back({DeductionKind::RankPipeline, RankNotion::Rank, Side::Lower, c.rank_lower,
                              "no reduced scheme of length <= " + std::to_string(c.r_max) + " is apolar to f", true});
        }
        rep.log.push_back({"rank_lower", rep.rank_lower->certificate.has_value(),
                           rep.rank_lower->certificate ? "certificate complete"
                                                       : "stopped at " + rep.rank_lower->failing_stage,
                           false});
      }
    }
  }
  rep.final = tameness_rule(aggregate(static_cast<unsigned>(rep.concise), std::move(evidence)), d);
  return rep;
}

}  // namespace apolar

#include <apolar/apolarity.hpp>
#include <apolar/errors.hpp>

#include <algorithm>

namespace apolar {

std::size_t HilbertFn::max() const {
  return values.empty() ? 0 : *std::max_element(values.begin(), values.end());
}

bool HilbertFn::is_symmetric() const {
  return std::equal(values.begin(), values.end(), values.rbegin());
}

namespace {

void check_paired(const Poly& alpha, const Poly& f) {
  if (alpha.ring() != Ring::Dual) throw InputError("contract: operator must be a dual polynomial");
  if (f.ring() != Ring::Primal) throw InputError("contract: operand must be a primal polynomial");
  if (!(alpha.table() == f.table())) throw InputError("contract: variable tables are not paired");
}

unsigned require_form(const Poly& f, const char* op) {
  if (f.ring() != Ring::Primal) throw InputError(std::string(op) + ": expected a primal polynomial");
  if (f.is_zero()) throw InputError(std::string(op) + ": zero polynomial");
  auto d = f.homogeneous_degree();
  if (!d) throw InputError(std::string(op) + ": polynomial is not homogeneous");
  return *d;
}

}  // namespace

Poly contract(const Poly& alpha, const Poly& f) {
  check_paired(alpha, f);
  Poly::Terms out;
  const std::size_t n = f.nvars();
  for (const auto& [ma, ca] : alpha.terms()) {
    for (const auto& [mf, cf] : f.terms()) {
      Monomial m(n);
      Integer falling = 1;
      bool vanishes = false;
      for (std::size_t i = 0; i < n && !vanishes; ++i) {
        if (ma.exps[i] > mf.exps[i]) {
          vanishes = true;
          break;
        }
        m.exps[i] = mf.exps[i] - ma.exps[i];
        for (std::uint32_t k = 0; k < ma.exps[i]; ++k) falling *= (mf.exps[i] - k);
      }
      if (vanishes) continue;
      Rational c = ca * cf * Rational(falling);
      auto [it, inserted] = out.try_emplace(std::move(m), c);
      if (!inserted) it->second += c;
    }
  }
  return Poly(f.table(), Ring::Primal, std::move(out));
}

Catalecticant catalecticant(const Poly& f, unsigned i) {
  const unsigned d = require_form(f, "catalecticant");
  if (i > d) throw InputError("catalecticant: degree exceeds deg f");
  Catalecticant cat;
  cat.source_degree = i;
  cat.source_monomials = monomials_of_degree(f.nvars(), i);
  cat.target_monomials = monomials_of_degree(f.nvars(), d - i);
  std::vector<QVector> cols;
  cols.reserve(cat.source_monomials.size());
  for (const auto& mu : cat.source_monomials) {
    Poly op = Poly::term(f.table(), Ring::Dual, mu, Rational(1));
    cols.push_back(coefficient_vector(contract(op, f), cat.target_monomials));
  }
  cat.matrix = QMatrix::from_columns(cols, cat.target_monomials.size());
  for (const auto& mu : cat.source_monomials)
    cat.matrix.col_labels.push_back(to_string(Poly::term(f.table(), Ring::Dual, mu, Rational(1))));
  for (const auto& nu : cat.target_monomials)
    cat.matrix.row_labels.push_back(to_string(Poly::term(f.table(), Ring::Primal, nu, Rational(1))));
  return cat;
}

IdealSlice ann_slice(const Poly& f, unsigned i) {
  const unsigned d = require_form(f, "ann_slice");
  IdealSlice s{f.table(), i, {}};
  const auto monos = monomials_of_degree(f.nvars(), i);
  if (i > d) {
    for (const auto& mu : monos) s.basis.push_back(Poly::term(f.table(), Ring::Dual, mu, Rational(1)));
    return s;
  }
  const auto cat = catalecticant(f, i);
  for (const auto& v : kernel(cat.matrix).basis) s.basis.push_back(from_coefficients(f.table(), Ring::Dual, monos, v));
  return s;
}

HilbertFn hilbert_function(const Poly& f) {
  const unsigned d = require_form(f, "hilbert_function");
  HilbertFn h;
  for (unsigned i = 0; i <= d; ++i) h.values.push_back(rank(catalecticant(f, i).matrix));
  return h;
}

ConciseInfo concise_dim(const Poly& f) {
  const unsigned d = require_form(f, "concise_dim");
  ConciseInfo info;
  if (d == 0) return info;
  // Rows of the degree-1 catalecticant are functionals on V*; their span is
  // Ann(f)_1's orthogonal complement, i.e. the essential subspace W.
  const auto cat = catalecticant(f, 1);
  const Echelon e = rref(cat.matrix);
  info.n = e.pivots.size();
  info.pivots = e.pivots;
  for (const auto& row : e.rows) info.essential_basis.push_back(Poly::linear(f.table(), Ring::Primal, row));
  return info;
}

ConciseReduction concise_reduce(const Poly& f) {
  ConciseReduction red;
  red.info = concise_dim(f);
  std::vector<std::string> names;
  for (auto p : red.info.pivots) names.push_back(f.table().primal(p));
  std::vector<std::string> duals;
  for (auto p : red.info.pivots) duals.push_back(f.table().dual(p));
  VarTable small(names, duals);
  // With an echelon basis w_j (coefficient 1 at pivot p_j, 0 at the other
  // pivots), f = g(w_1..w_n) and g is obtained by x_{p_j} -> z_j, others -> 0.
  std::vector<Poly> images;
  for (std::size_t i = 0; i < f.nvars(); ++i) {
    auto it = std::find(red.info.pivots.begin(), red.info.pivots.end(), i);
    if (it == red.info.pivots.end()) {
      images.emplace_back(small, Ring::Primal);
    } else {
      images.push_back(Poly::variable(small, Ring::Primal, static_cast<std::size_t>(it - red.info.pivots.begin())));
    }
  }
  red.reduced = substitute_linear(f, images);
  red.back_substitution = red.info.essential_basis;
  if (!(substitute_linear(red.reduced, red.back_substitution) == f)) {
    throw CertificateError("concise reduction does not reproduce the input");
  }
  return red;
}

std::vector<QVector> slice_vectors(const IdealSlice& s) {
  const auto monos = monomials_of_degree(s.table.size(), s.degree);
  std::vector<QVector> out;
  out.reserve(s.basis.size());
  for (const auto& p : s.basis) out.push_back(coefficient_vector(p, monos));
  return out;
}

}  // namespace apolar

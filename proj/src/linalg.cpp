#include <apolar/errors.hpp>
#include <apolar/linalg.hpp>

#include <algorithm>
#include <utility>

namespace apolar {

QMatrix::QMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), entries_(rows * cols) {}

QMatrix QMatrix::from_rows(std::span<const QVector> rows, std::size_t cols) {
  QMatrix m(rows.size(), cols);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != cols) throw InputError("from_rows: ragged rows");
    std::copy(rows[r].begin(), rows[r].end(), m.entries_.begin() + static_cast<std::ptrdiff_t>(r * cols));
  }
  return m;
}

QMatrix QMatrix::from_columns(std::span<const QVector> columns, std::size_t rows) {
  QMatrix m(rows, columns.size());
  for (std::size_t c = 0; c < columns.size(); ++c) {
    if (columns[c].size() != rows) throw InputError("from_columns: ragged columns");
    for (std::size_t r = 0; r < rows; ++r) m(r, c) = columns[c][r];
  }
  return m;
}

QMatrix QMatrix::identity(std::size_t n) {
  QMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

QVector QMatrix::row(std::size_t r) const {
  return QVector(entries_.begin() + static_cast<std::ptrdiff_t>(r * cols_),
                 entries_.begin() + static_cast<std::ptrdiff_t>((r + 1) * cols_));
}

QVector QMatrix::column(std::size_t c) const {
  QVector out(rows_);
  for (std::size_t r = 0; r < rows_; ++r) out[r] = (*this)(r, c);
  return out;
}

QMatrix QMatrix::transpose() const {
  QMatrix t(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
  t.row_labels = col_labels;
  t.col_labels = row_labels;
  return t;
}

QVector QMatrix::apply(std::span<const Rational> v) const {
  if (v.size() != cols_) throw InputError("apply: vector length mismatch");
  QVector out(rows_);
  for (std::size_t r = 0; r < rows_; ++r) {
    Rational acc;
    for (std::size_t c = 0; c < cols_; ++c) {
      if (v[c] != 0) acc += (*this)(r, c) * v[c];
    }
    out[r] = acc;
  }
  return out;
}

bool is_zero(std::span<const Rational> v) {
  return std::all_of(v.begin(), v.end(), [](const Rational& q) { return q == 0; });
}

namespace {

// Scales each row by the lcm of its denominators so elimination can run on
// integers.
std::vector<std::vector<Integer>> integer_rows(const QMatrix& m) {
  std::vector<std::vector<Integer>> a(m.rows(), std::vector<Integer>(m.cols()));
  for (std::size_t r = 0; r < m.rows(); ++r) {
    Integer l = 1;
    for (std::size_t c = 0; c < m.cols(); ++c) {
      const Integer& den = m(r, c).get_den();
      if (den != 1) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), den.get_mpz_t());
    }
    for (std::size_t c = 0; c < m.cols(); ++c) {
      const Rational& q = m(r, c);
      a[r][c] = q.get_num() * (l / q.get_den());
    }
  }
  return a;
}

}  // namespace

Echelon rref(const QMatrix& m) {
  auto a = integer_rows(m);
  const std::size_t nr = m.rows(), nc = m.cols();
  std::vector<std::size_t> pivots;
  Integer prev = 1;
  std::size_t row = 0;
  // Bareiss: after step k every entry below/right of the pivot equals a
  // k x k minor, so the division by the previous pivot is exact.
  for (std::size_t col = 0; col < nc && row < nr; ++col) {
    std::size_t piv = row;
    while (piv < nr && a[piv][col] == 0) ++piv;
    if (piv == nr) continue;
    if (piv != row) std::swap(a[piv], a[row]);
    const Integer& p = a[row][col];
    for (std::size_t r = row + 1; r < nr; ++r) {
      const Integer factor = a[r][col];
      for (std::size_t c = col + 1; c < nc; ++c) {
        a[r][c] = (p * a[r][c] - factor * a[row][c]);
        mpz_divexact(a[r][c].get_mpz_t(), a[r][c].get_mpz_t(), prev.get_mpz_t());
      }
      a[r][col] = 0;
    }
    // Columns left of col in rows below are already zero.
    prev = p;
    pivots.push_back(col);
    ++row;
  }

  Echelon e;
  e.pivots = pivots;
  e.rows.reserve(pivots.size());
  for (std::size_t i = 0; i < pivots.size(); ++i) {
    QVector v(nc);
    const Integer& lead = a[i][pivots[i]];
    for (std::size_t c = 0; c < nc; ++c) {
      if (a[i][c] != 0) {
        v[c] = Rational(a[i][c], lead);
        v[c].canonicalize();
      }
    }
    e.rows.push_back(std::move(v));
  }
  // Back substitution to reduced form.
  for (std::size_t i = pivots.size(); i-- > 0;) {
    for (std::size_t k = 0; k < i; ++k) {
      const Rational factor = e.rows[k][pivots[i]];
      if (factor == 0) continue;
      for (std::size_t c = pivots[i]; c < nc; ++c) {
        if (e.rows[i][c] != 0) e.rows[k][c] -= factor * e.rows[i][c];
      }
    }
  }
  return e;
}

std::size_t rank(const QMatrix& m) { return rref(m).pivots.size(); }

KernelResult kernel(const QMatrix& m) {
  const Echelon e = rref(m);
  const std::size_t nc = m.cols();
  std::vector<bool> is_pivot(nc, false);
  for (auto p : e.pivots) is_pivot[p] = true;
  std::vector<QVector> raw;
  for (std::size_t free = 0; free < nc; ++free) {
    if (is_pivot[free]) continue;
    QVector v(nc);
    v[free] = 1;
    for (std::size_t i = 0; i < e.pivots.size(); ++i) v[e.pivots[i]] = -e.rows[i][free];
    raw.push_back(std::move(v));
  }
  KernelResult out;
  out.rank = e.pivots.size();
  out.basis = span_basis(raw, nc);
  return out;
}

std::vector<QVector> span_basis(std::span<const QVector> vectors, std::size_t dim) {
  if (vectors.empty()) return {};
  return rref(QMatrix::from_rows(vectors, dim)).rows;
}

std::optional<QVector> solve(const QMatrix& m, std::span<const Rational> b) {
  if (b.size() != m.rows()) throw InputError("solve: right-hand side length mismatch");
  QMatrix aug(m.rows(), m.cols() + 1);
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (std::size_t c = 0; c < m.cols(); ++c) aug(r, c) = m(r, c);
    aug(r, m.cols()) = b[r];
  }
  const Echelon e = rref(aug);
  QVector x(m.cols());
  for (std::size_t i = 0; i < e.pivots.size(); ++i) {
    if (e.pivots[i] == m.cols()) return std::nullopt;
    x[e.pivots[i]] = e.rows[i][m.cols()];
  }
  return x;
}

std::optional<QVector> in_span(std::span<const Rational> v, std::span<const QVector> basis) {
  if (basis.empty()) {
    if (is_zero(v)) return QVector{};
    return std::nullopt;
  }
  for (const auto& b : basis) {
    if (b.size() != v.size()) throw InputError("in_span: vector length mismatch");
  }
  return solve(QMatrix::from_columns(basis, v.size()), v);
}

std::vector<QVector> intersect_spans(std::span<const QVector> a, std::span<const QVector> b, std::size_t dim) {
  const auto ba = span_basis(a, dim);
  const auto bb = span_basis(b, dim);
  if (ba.empty() || bb.empty()) return {};
  // Solve sum x_i a_i - sum y_j b_j = 0; each solution gives sum x_i a_i.
  std::vector<QVector> cols(ba.begin(), ba.end());
  for (const auto& v : bb) {
    QVector neg(v);
    for (auto& q : neg) q = -q;
    cols.push_back(std::move(neg));
  }
  const auto ker = kernel(QMatrix::from_columns(cols, dim));
  std::vector<QVector> out;
  for (const auto& k : ker.basis) {
    QVector w(dim);
    for (std::size_t i = 0; i < ba.size(); ++i) {
      if (k[i] == 0) continue;
      for (std::size_t c = 0; c < dim; ++c) w[c] += k[i] * ba[i][c];
    }
    out.push_back(std::move(w));
  }
  return span_basis(out, dim);
}

bool same_span(std::span<const QVector> a, std::span<const QVector> b, std::size_t dim) {
  return span_basis(a, dim) == span_basis(b, dim);
}

QVector reduce_by_echelon(QVector v, std::span<const QVector> rref_rows) {
  for (const auto& r : rref_rows) {
    std::size_t p = 0;
    while (p < r.size() && r[p] == 0) ++p;
    if (p == r.size() || v[p] == 0) continue;
    const Rational c = v[p];
    for (std::size_t i = p; i < v.size(); ++i) v[i] -= c * r[i];
  }
  return v;
}

}  // namespace apolar

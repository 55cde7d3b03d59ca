#pragma once

#include <apolar/rational.hpp>

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace apolar {

using QVector = std::vector<Rational>;

/// Dense rational matrix, row-major. Optional labels are carried along for
/// reporting (catalecticants label rows and columns with monomials).
class QMatrix {
 public:
  QMatrix() = default;
  QMatrix(std::size_t rows, std::size_t cols);
  /// Matrix whose rows are the given vectors (all of length cols).
  static QMatrix from_rows(std::span<const QVector> rows, std::size_t cols);
  static QMatrix from_columns(std::span<const QVector> columns, std::size_t rows);
  static QMatrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  const Rational& operator()(std::size_t r, std::size_t c) const { return entries_[r * cols_ + c]; }
  Rational& operator()(std::size_t r, std::size_t c) { return entries_[r * cols_ + c]; }

  QVector row(std::size_t r) const;
  QVector column(std::size_t c) const;
  QMatrix transpose() const;
  QVector apply(std::span<const Rational> v) const;

  std::vector<std::string> row_labels;
  std::vector<std::string> col_labels;

  friend bool operator==(const QMatrix& a, const QMatrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.entries_ == b.entries_;
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Rational> entries_;
};

struct KernelResult {
  std::size_t rank = 0;
  /// Basis of the null space, in reduced row echelon form with respect to the
  /// column order (leading entries 1, increasing pivot columns).
  std::vector<QVector> basis;
};

/// Reduced row echelon form of a matrix. Computed by fraction-free (Bareiss)
/// forward elimination over the integers followed by rational back
/// substitution; fully deterministic.
struct Echelon {
  std::vector<QVector> rows;         // nonzero rows only
  std::vector<std::size_t> pivots;   // pivot column of each row
};

Echelon rref(const QMatrix& m);
std::size_t rank(const QMatrix& m);
KernelResult kernel(const QMatrix& m);

/// Reduced echelon basis of the span of the given vectors (all of length dim).
std::vector<QVector> span_basis(std::span<const QVector> vectors, std::size_t dim);

/// Coefficients c with sum c_i basis_i == v, or nullopt. When the basis is
/// dependent the free coefficients are set to zero.
std::optional<QVector> in_span(std::span<const Rational> v, std::span<const QVector> basis);

/// v minus its combination of the rows of a reduced echelon basis; zero iff
/// v lies in their span.
QVector reduce_by_echelon(QVector v, std::span<const QVector> rref_rows);

/// Solves m x = b exactly (free variables zero), or nullopt if inconsistent.
std::optional<QVector> solve(const QMatrix& m, std::span<const Rational> b);

/// Reduced echelon basis of span(a) ∩ span(b).
std::vector<QVector> intersect_spans(std::span<const QVector> a, std::span<const QVector> b, std::size_t dim);

bool same_span(std::span<const QVector> a, std::span<const QVector> b, std::size_t dim);

bool is_zero(std::span<const Rational> v);

}  // namespace apolar

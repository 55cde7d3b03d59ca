#pragma once

#include <apolar/linalg.hpp>
#include <apolar/poly.hpp>

#include <vector>

namespace apolar {

/// A graded piece I_d of a homogeneous ideal in the dual ring, stored as a
/// reduced echelon basis (w.r.t. the canonical monomial order) of degree-d
/// forms.
struct IdealSlice {
  VarTable table;
  unsigned degree = 0;
  std::vector<Poly> basis;

  std::size_t dim() const { return basis.size(); }
};

/// Hilbert function of Sym V* / Ann(f), values for degrees 0..deg f.
struct HilbertFn {
  std::vector<std::size_t> values;

  std::size_t operator()(std::size_t i) const { return i < values.size() ? values[i] : 0; }
  std::size_t max() const;
  bool is_symmetric() const;
};

/// Matrix of the contraction S^i V* -> S^{d-i} V against f. Column j is the
/// coefficient vector of contract(source_monomials[j], f) in the
/// target_monomials basis.
struct Catalecticant {
  unsigned source_degree = 0;
  std::vector<Monomial> source_monomials;
  std::vector<Monomial> target_monomials;
  QMatrix matrix;
};

/// alpha acting on f as a constant coefficient differential operator,
/// dual variable i acting as d/dx_i. This is honest differentiation, not the
/// divided-power pairing; the two differ by nonzero factorials per monomial
/// and have identical kernels in characteristic zero.
Poly contract(const Poly& alpha, const Poly& f);

Catalecticant catalecticant(const Poly& f, unsigned i);

/// Ann(f)_i as a reduced echelon basis of dual forms.
IdealSlice ann_slice(const Poly& f, unsigned i);

HilbertFn hilbert_function(const Poly& f);

struct ConciseInfo {
  std::size_t n = 0;
  /// Reduced echelon basis of the minimal W with f in S^d W, as primal
  /// linear forms.
  std::vector<Poly> essential_basis;
  /// Pivot variable of each basis form.
  std::vector<std::size_t> pivots;
};

ConciseInfo concise_dim(const Poly& f);

/// f rewritten in exactly concise_dim(f) variables. `reduced` lives on a table
/// of the pivot variables; substituting `back_substitution` (one image per
/// reduced variable) into it gives f again.
struct ConciseReduction {
  ConciseInfo info;
  Poly reduced;
  std::vector<Poly> back_substitution;
};

ConciseReduction concise_reduce(const Poly& f);

/// Lifts a dual-form basis to coefficient vectors in the degree-d monomial basis.
std::vector<QVector> slice_vectors(const IdealSlice& s);

}  // namespace apolar

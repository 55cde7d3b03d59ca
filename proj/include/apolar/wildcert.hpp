#pragma once

#include <apolar/apolarity.hpp>
#include <apolar/ideals.hpp>
#include <apolar/poly.hpp>
#include <apolar/ranks.hpp>
#include <apolar/witness.hpp>

#include <optional>
#include <span>
#include <string>
#include <vector>

namespace apolar {

/// One step of a certificate. `cited` steps apply a literature lemma to
/// hypotheses verified by the preceding steps; all other steps are exact
/// computations.
struct StageRecord {
  std::string stage;
  bool passed = false;
  std::string detail;
  bool cited = false;
};

// ------------------------------------------------------------------ cactus

/// Cactus lower bound from the degree-2 annihilator slice. With r = H_f(2), a
/// scheme R of length <= r apolar to f has I(R)_2 = Ann(f)_2, so the
/// saturation J of (Ann(f)_2) lies in I(R) ⊆ Ann(f). Linear forms gamma with
/// m^k gamma ⊆ (Ann(f)_2) lie in J; if they force H(S/J)(1) below
/// H_f(1) = concise(f) no such R exists and cactus rank >= r + 1.
struct CactusLowerEvidence {
  std::optional<unsigned> bound;
  std::size_t slice_codim = 0;  // r = H_f(2)
  std::size_t concise = 0;
  unsigned saturation_power = 3;
  IdealSlice ann2;
  /// Basis of {gamma linear : m^k gamma ⊆ (Ann(f)_2)}.
  std::vector<Poly> saturating_forms;
  std::size_t saturated_h1 = 0;
  std::vector<StageRecord> log;
  std::vector<Deduction> deductions;
};

CactusLowerEvidence cactus_lower_via_slice(const Poly& f, unsigned saturation_power = 3);
/// Re-runs every exact check of the evidence against f.
bool verify(const CactusLowerEvidence& ev, const Poly& f);

/// Linear forms gamma with m^k gamma ⊆ (gens), as a reduced echelon basis.
std::vector<Poly> linear_saturation_space(const VarTable& table, std::span<const Poly> gens, unsigned k);

// ------------------------------------------------------------------ product locus

struct LocusSample {
  QVector a;  // point of P(beta span), coordinates w.r.t. beta_forms
  QVector c;  // nonzero solution, coordinates w.r.t. alpha_forms
};

enum class LocusShape { Conic, NotConic };

/// {a : exists c != 0 with beta_a * alpha_c in Ann(f)_2}.
struct ProductLocus {
  std::vector<Poly> beta_forms;
  std::vector<Poly> alpha_forms;
  /// Defining equations (2x2 minors) as forms in the a-coordinates, echelonized.
  std::vector<Poly> equations;
  /// Implicit conic when the equations span one smooth quadric.
  std::optional<Poly> conic;
  LocusShape shape = LocusShape::NotConic;
  std::string diagnostic;
  std::vector<LocusSample> samples;
  /// Quadric fitted through the samples alone agrees with `conic`.
  bool fit_agrees = false;
};

ProductLocus product_locus(const Poly& f, std::span<const Poly> beta_forms, std::span<const Poly> alpha_forms);
ProductLocus product_locus(const Poly& f, std::span<const std::size_t> beta_vars, std::span<const std::size_t> alpha_vars);

/// Nonzero c with beta_a * alpha_c in Ann(f)_2, if any.
std::optional<QVector> solve_product(const Poly& f, std::span<const Poly> beta_forms,
                                     std::span<const Poly> alpha_forms, std::span<const Rational> a);

/// Second intersection with the conic of the line through the rational
/// point p in direction u + s w (s = parameter).
QVector conic_point(const Poly& conic, std::span<const Rational> p, std::span<const Rational> u,
                    std::span<const Rational> w, const Rational& s);

/// A rational point of the conic found by small-height search, if any.
std::optional<QVector> find_rational_point(const Poly& conic);

// ------------------------------------------------------------------ gamma spaces

struct GammaSpace {
  std::size_t dim = 0;
  std::vector<Poly> basis;
};

/// Linear gamma with beta_a * gamma in Ann(f)_2, where
/// beta_a = sum a_i beta_forms[i]. Throws if beta_a = 0.
GammaSpace gamma_space(const Poly& f, std::span<const Poly> beta_forms, std::span<const Rational> a);

/// Linear gamma with b * gamma in Ann(f)_2 for every b in the span.
GammaSpace common_gamma_space(const Poly& f, std::span<const Poly> beta_forms);

/// True iff every gamma with span(beta_forms) * gamma ⊆ Ann(f)_2 lies in
/// span(beta_forms).
bool forced_square_check(const Poly& f, std::span<const Poly> beta_forms);

/// Proves that every linear l with l^2 in Ann(f)_2 lies in span(beta_forms).
/// Requires beta_forms^2 ⊆ Ann(f)_2 and a complement of dimension 2; writing
/// l = u + b, the u^2-parts reduced modulo span{(alpha beta) f} are binary
/// quadrics in u that must share a root. false means no proof was found.
bool squares_in_span(const Poly& f, std::span<const Poly> beta_forms, std::span<const Poly> alpha_forms);

// ------------------------------------------------------------------ rank >= 9

struct Rank9Certificate {
  unsigned r_max = 8;
  unsigned rank_lower = 9;
  std::size_t ann2_dim = 0;
  std::size_t quadric_space_dim = 0;
  std::size_t forced_quadrics = 0;  // quadric_space_dim - r_max
  std::size_t codim_bound = 0;      // codim of I(R)_2 in Ann(f)_2
  std::vector<Poly> beta_forms;
  std::vector<Poly> alpha_forms;
  ProductLocus locus;
  std::vector<std::size_t> gamma_dims;
  std::vector<StageRecord> stages;
};

struct Rank9Outcome {
  std::optional<Rank9Certificate> certificate;
  std::string failing_stage;
  std::vector<StageRecord> log;
};

/// Numeric hypotheses of the "no reduced scheme of length <= r_max" argument:
/// (a) slice shape and the beta span, (b) quadric count, (c) product conic,
/// (d) gamma-family dimensions, (e) forced squares; followed by the cited
/// product-propagation lemma and the radicality contradiction.
/// When beta_forms is empty the beta span is the linear saturation space of
/// (Ann(f)_2).
Rank9Outcome rank9_lower_cert(const Poly& f, unsigned r_max = 8, std::span<const Poly> beta_forms = {});
bool verify(const Rank9Certificate& cert, const Poly& f);

// ------------------------------------------------------------------ rank <= 9

/// f = sum coeffs_j forms_j^degree.
struct PowerSumDecomposition {
  unsigned degree = 0;
  std::vector<Rational> coeffs;
  std::vector<Poly> forms;

  Poly recombine(const VarTable& table) const;
};

/// Power sum from f = sum z_i^2 w_i using
/// z^2 w = ((z+w)^3 - (z-w)^3 - 2 w^3) / 6, with proportional forms merged.
/// Throws InputError if the shape terms do not sum to f.
PowerSumDecomposition rank9_upper(const Poly& f, std::span<const std::pair<Poly, Poly>> shape);

// ------------------------------------------------------------------ structure

/// Intrinsic structure of a cubic of the wild type: B = linear saturation
/// space of (Ann(f)_2) (dim 3), X = B^perp (dim 2), z = (e1, e1+e2, e2) for
/// the echelon basis of X, and f = sum z_i^2 w_i.
struct WildStructure {
  std::vector<Poly> beta_forms;
  std::vector<Poly> alpha_forms;
  std::vector<Poly> x_forms;
  std::vector<std::pair<Poly, Poly>> shape;
  std::vector<TangentDatum> tangent_data;
};

std::optional<WildStructure> discover_wild_structure(const Poly& f);

// ------------------------------------------------------------------ report

struct WildReport {
  Poly input;
  /// Concise rewriting of input; every witness below refers to it.
  Poly working;
  std::size_t concise = 0;
  unsigned degree = 0;
  HilbertFn hilbert;
  std::size_t ann2_dim = 0;
  std::optional<CactusLowerEvidence> cactus_lower;
  std::optional<TangentFamily> border_witness;
  bool border_witness_verified = false;
  std::optional<DoublePointSpan> double_points;
  std::optional<Rank9Outcome> rank_lower;
  std::optional<PowerSumDecomposition> rank_upper;
  std::optional<SylvesterResult> sylvester;
  std::optional<DirectSumReport> direct_sum;
  std::vector<StageRecord> log;
  RankReport final;
};

WildReport theorem2_report(const Poly& f);

}  // namespace apolar

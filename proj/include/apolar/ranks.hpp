#pragma once

#include <apolar/poly.hpp>

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace apolar {

enum class RankNotion { Rank = 0, Border = 1, Smoothable = 2, Cactus = 3 };
enum class Side { Lower, Upper };

inline constexpr std::array<RankNotion, 4> kAllNotions = {RankNotion::Rank, RankNotion::Border,
                                                          RankNotion::Smoothable, RankNotion::Cactus};

enum class DeductionKind {
  Conciseness,
  Catalecticant,
  ExplicitDecomposition,
  WitnessFamily,
  SchemeSpan,
  SaturationCertificate,
  RankPipeline,
  Tameness,
  SmoothableScheme,
  BinaryForm,
  QuadricForm,
};

std::string_view name(RankNotion n);
std::string_view name(DeductionKind k);
std::string_view name(Side s);

/// One certified bound on one rank notion. `cited` marks bounds whose last
/// step is a literature result applied to machine-verified hypotheses.
struct Deduction {
  DeductionKind kind;
  RankNotion notion;
  Side side;
  unsigned value;
  std::string detail;
  bool cited = false;

  friend auto operator<=>(const Deduction&, const Deduction&) = default;
};

struct NotionBounds {
  std::optional<unsigned> lower;
  std::optional<unsigned> upper;
  std::string lower_source;
  std::string upper_source;

  std::optional<unsigned> exact() const {
    if (lower && upper && *lower == *upper) return lower;
    return std::nullopt;
  }
  friend bool operator==(const NotionBounds&, const NotionBounds&) = default;
};

/// Tightest bounds implied by a set of deductions after closing under
/// border <= smoothable <= rank and cactus <= smoothable <= rank, with every
/// notion bounded below by conciseness.
struct RankReport {
  unsigned concise = 0;
  std::array<NotionBounds, 4> bounds;
  /// Sorted, duplicate-free.
  std::vector<Deduction> provenance;

  const NotionBounds& operator[](RankNotion n) const { return bounds[static_cast<std::size_t>(n)]; }
  friend bool operator==(const RankReport&, const RankReport&) = default;
};

/// Lower bounds for all four notions from a single value.
std::vector<Deduction> lower_bound_all(DeductionKind kind, unsigned value, std::string detail);

/// Closes the evidence; throws CertificateError if it is inconsistent.
RankReport aggregate(unsigned concise, std::vector<Deduction> evidence);
/// Same, with the conciseness of f computed here.
RankReport aggregate(const Poly& f, std::vector<Deduction> evidence);

/// max_i H_f(i).
unsigned catalecticant_lower_bound(const Poly& f);
std::vector<Deduction> catalecticant_deductions(const Poly& f);

/// All ranks of a quadric equal its conciseness (the rank of the symmetric
/// coefficient matrix).
unsigned quadric_rank(const Poly& f);
std::vector<Deduction> quadric_deductions(const Poly& f);

struct SylvesterResult {
  unsigned degree = 0;
  unsigned d1 = 0;
  unsigned d2 = 0;
  /// Degree-d1 generator of Ann(f) over the two essential variables; absent
  /// when f is a pure power.
  std::optional<Poly> generator;
  bool square_free = true;
  unsigned border = 0;
  unsigned rank = 0;
  std::vector<Deduction> deductions;
};

/// Sylvester's algorithm for forms with at most two essential variables.
/// Ann(f) is a complete intersection of degrees d1 <= d2, d1 + d2 = d + 2;
/// border = smoothable = cactus = d1; rank is d1 if the degree-d1 generator
/// is square-free and d2 otherwise.
SylvesterResult sylvester_binary(const Poly& f);

/// Whether a binary form (two variables) has no repeated linear factor.
bool binary_form_square_free(const Poly& g);

/// If the report's border upper bound b satisfies b <= d + 1, smoothable rank
/// equals border rank; adds that deduction. Otherwise returns the report.
RankReport tameness_rule(const RankReport& report, unsigned d);

}  // namespace apolar

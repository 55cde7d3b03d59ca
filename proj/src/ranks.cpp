#include <apolar/apolarity.hpp>
#include <apolar/errors.hpp>
#include <apolar/ranks.hpp>

#include "univariate.hpp"

#include <algorithm>

namespace apolar {

std::string_view name(RankNotion n) {
  switch (n) {
    case RankNotion::Rank: return "rank";
    case RankNotion::Border: return "border";
    case RankNotion::Smoothable: return "smoothable";
    case RankNotion::Cactus: return "cactus";
  }
  return "?";
}

std::string_view name(DeductionKind k) {
  switch (k) {
    case DeductionKind::Conciseness: return "conciseness";
    case DeductionKind::Catalecticant: return "catalecticant";
    case DeductionKind::ExplicitDecomposition: return "explicit_decomposition";
    case DeductionKind::WitnessFamily: return "witness_family";
    case DeductionKind::SchemeSpan: return "scheme_span";
    case DeductionKind::SaturationCertificate: return "saturation_certificate";
    case DeductionKind::RankPipeline: return "rank_pipeline";
    case DeductionKind::Tameness: return "tameness";
    case DeductionKind::SmoothableScheme: return "smoothable_scheme";
    case DeductionKind::BinaryForm: return "binary_form";
    case DeductionKind::QuadricForm: return "quadric_form";
  }
  return "?";
}

std::string_view name(Side s) { return s == Side::Lower ? "lower" : "upper"; }

std::vector<Deduction> lower_bound_all(DeductionKind kind, unsigned value, std::string detail) {
  std::vector<Deduction> out;
  for (auto n : kAllNotions) out.push_back({kind, n, Side::Lower, value, detail, false});
  return out;
}

namespace {

NotionBounds& at(RankReport& r, RankNotion n) { return r.bounds[static_cast<std::size_t>(n)]; }

bool raise_lower(NotionBounds& b, unsigned v, const std::string& src) {
  if (b.lower && *b.lower >= v) return false;
  b.lower = v;
  b.lower_source = src;
  return true;
}

bool lower_upper(NotionBounds& b, unsigned v, const std::string& src) {
  if (b.upper && *b.upper <= v) return false;
  b.upper = v;
  b.upper_source = src;
  return true;
}

std::string describe(const Deduction& d) {
  std::string s(name(d.kind));
  if (!d.detail.empty()) s += ": " + d.detail;
  return s;
}

}  // namespace

RankReport aggregate(unsigned concise, std::vector<Deduction> evidence) {
  auto conc = lower_bound_all(DeductionKind::Conciseness, concise, "every rank is at least the number of essential variables");
  evidence.insert(evidence.end(), conc.begin(), conc.end());
  std::sort(evidence.begin(), evidence.end());
  evidence.erase(std::unique(evidence.begin(), evidence.end()), evidence.end());

  RankReport r;
  r.concise = concise;
  for (const auto& d : evidence) {
    auto& b = at(r, d.notion);
    if (d.side == Side::Lower) {
      raise_lower(b, d.value, describe(d));
    } else {
      lower_upper(b, d.value, describe(d));
    }
  }
  auto& rk = at(r, RankNotion::Rank);
  auto& br = at(r, RankNotion::Border);
  auto& sr = at(r, RankNotion::Smoothable);
  auto& cr = at(r, RankNotion::Cactus);
  for (bool changed = true; changed;) {
    changed = false;
    if (br.lower) changed |= raise_lower(sr, *br.lower, "chain: border <= smoothable");
    if (cr.lower) changed |= raise_lower(sr, *cr.lower, "chain: cactus <= smoothable");
    if (sr.lower) changed |= raise_lower(rk, *sr.lower, "chain: smoothable <= rank");
    if (rk.upper) changed |= lower_upper(sr, *rk.upper, "chain: smoothable <= rank");
    if (sr.upper) changed |= lower_upper(br, *sr.upper, "chain: border <= smoothable");
    if (sr.upper) changed |= lower_upper(cr, *sr.upper, "chain: cactus <= smoothable");
  }
  for (auto n : kAllNotions) {
    const auto& b = r[n];
    if (b.lower && b.upper && *b.lower > *b.upper) {
      throw CertificateError("inconsistent evidence for " + std::string(name(n)) + ": lower " +
                             std::to_string(*b.lower) + " (" + b.lower_source + ") exceeds upper " +
                             std::to_string(*b.upper) + " (" + b.upper_source + ")");
    }
  }
  r.provenance = std::move(evidence);
  return r;
}

RankReport aggregate(const Poly& f, std::vector<Deduction> evidence) {
  return aggregate(static_cast<unsigned>(concise_dim(f).n), std::move(evidence));
}

unsigned catalecticant_lower_bound(const Poly& f) {
  return static_cast<unsigned>(hilbert_function(f).max());
}

std::vector<Deduction> catalecticant_deductions(const Poly& f) {
  const auto h = hilbert_function(f);
  std::string detail = "max of Hilbert function (";
  for (std::size_t i = 0; i < h.values.size(); ++i) detail += (i ? "," : "") + std::to_string(h.values[i]);
  detail += ")";
  return lower_bound_all(DeductionKind::Catalecticant, static_cast<unsigned>(h.max()), detail);
}

unsigned quadric_rank(const Poly& f) {
  if (f.ring() != Ring::Primal || f.homogeneous_degree() != 2u) throw InputError("quadric_rank: expected a quadratic form");
  return static_cast<unsigned>(hilbert_function(f)(1));
}

std::vector<Deduction> quadric_deductions(const Poly& f) {
  const unsigned r = quadric_rank(f);
  std::vector<Deduction> out;
  for (auto n : kAllNotions) {
    out.push_back({DeductionKind::QuadricForm, n, Side::Upper, r, "quadric: rank of the symmetric matrix", false});
  }
  return out;
}

// ------------------------------------------------------------- Sylvester

using detail::UPoly;

bool binary_form_square_free(const Poly& g) {
  if (g.nvars() != 2) throw InputError("binary_form_square_free: expected two variables");
  auto deg = g.homogeneous_degree();
  if (!deg) throw InputError("binary_form_square_free: expected a nonzero form");
  // Dehomogenize at the second variable; a root at infinity shows up as a
  // drop in degree.
  UPoly h(*deg + 1);
  for (const auto& [m, c] : g.terms()) h[m.exps[0]] = c;
  detail::trim(h);
  const std::size_t dh = h.empty() ? 0 : h.size() - 1;
  if (*deg - dh > 1) return false;
  return detail::gcd(h, detail::derivative(h)).size() <= 1;
}

SylvesterResult sylvester_binary(const Poly& f) {
  if (f.ring() != Ring::Primal || f.is_zero() || !f.homogeneous_degree())
    throw InputError("sylvester_binary: expected a nonzero homogeneous form");
  const unsigned d = *f.homogeneous_degree();
  if (d == 0) throw InputError("sylvester_binary: degree must be at least 1");
  const auto red = concise_reduce(f);
  if (red.info.n > 2) {
    throw InputError("sylvester_binary: form depends essentially on " + std::to_string(red.info.n) +
                     " variables, not on two");
  }
  SylvesterResult s;
  s.degree = d;
  if (red.info.n == 1) {
    s.d1 = 1;
    s.d2 = d + 1;
  } else {
    const Poly& g = red.reduced;
    for (unsigned i = 1; i <= d; ++i) {
      auto slice = ann_slice(g, i);
      if (slice.dim() == 0) continue;
      s.d1 = i;
      s.d2 = d + 2 - i;
      // With d1 < d2 the slice is spanned by the first generator; with
      // d1 == d2 it is the whole pencil and any member will do for the rank.
      std::vector<Poly> candidates = slice.basis;
      if (slice.dim() == 2) {
        for (unsigned k = 1; k <= i + 2; ++k)
          candidates.push_back(add(slice.basis[0], scale(slice.basis[1], Rational(k))));
      }
      s.generator = candidates.front();
      s.square_free = false;
      for (const auto& c : candidates) {
        if (binary_form_square_free(c)) {
          s.generator = c;
          s.square_free = true;
          break;
        }
      }
      break;
    }
    if (s.d1 == 0) throw CertificateError("sylvester_binary: no annihilator found up to degree d");
  }
  s.border = s.d1;
  s.rank = s.square_free ? s.d1 : s.d2;
  const std::string ci = "Ann(f) complete intersection of degrees (" + std::to_string(s.d1) + "," +
                         std::to_string(s.d2) + ")";
  for (auto n : {RankNotion::Border, RankNotion::Smoothable, RankNotion::Cactus}) {
    s.deductions.push_back({DeductionKind::BinaryForm, n, Side::Lower, s.d1, ci, true});
    s.deductions.push_back({DeductionKind::BinaryForm, n, Side::Upper, s.d1, ci, true});
  }
  const std::string rk = s.square_free ? "degree-d1 generator is square-free" : "degree-d1 generator has a repeated root";
  s.deductions.push_back({DeductionKind::BinaryForm, RankNotion::Rank, Side::Lower, s.rank, rk, true});
  s.deductions.push_back({DeductionKind::BinaryForm, RankNotion::Rank, Side::Upper, s.rank, rk, true});
  return s;
}

RankReport tameness_rule(const RankReport& report, unsigned d) {
  const auto& br = report[RankNotion::Border];
  if (!br.upper || *br.upper > d + 1) return report;
  const std::string detail = "border rank <= " + std::to_string(*br.upper) + " <= d+1 = " + std::to_string(d + 1) +
                             ", so smoothable rank equals border rank";
  auto evidence = report.provenance;
  evidence.push_back({DeductionKind::Tameness, RankNotion::Smoothable, Side::Upper, *br.upper, detail, true});
  if (const auto& sl = report[RankNotion::Smoothable].lower) {
    evidence.push_back({DeductionKind::Tameness, RankNotion::Border, Side::Lower, *sl, detail, true});
  }
  return aggregate(report.concise, std::move(evidence));
}

}  // namespace apolar

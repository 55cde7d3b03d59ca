#include <chrono>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "support.hpp"

using namespace testing;

namespace {

struct Form {
  std::string name;
  Poly poly;
};

std::string trim(std::string s) {
  const auto b = s.find_first_not_of(" \t");
  if (b == std::string::npos) return "";
  return s.substr(b, s.find_last_not_of(" \t") - b + 1);
}

std::vector<Form> shipped_forms() {
  std::ifstream in(APOLAR_FORMS_FILE);
  if (!in) throw std::runtime_error("cannot open " + std::string(APOLAR_FORMS_FILE));
  std::vector<Form> out;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line.front() == '#') continue;
    std::vector<std::string> fields;
    std::stringstream ss(line);
    for (std::string f; std::getline(ss, f, '|');) fields.push_back(trim(f));
    std::optional<std::vector<std::string>> names;
    if (fields.size() > 2 && !fields[2].empty()) {
      names.emplace();
      std::stringstream vs(fields[2]);
      for (std::string v; std::getline(vs, v, ',');) names->push_back(trim(v));
    }
    out.push_back({fields[0], parse_poly(fields[1], names)});
  }
  return out;
}

using Fail = std::string;

// Each check returns an empty string on success, else the reason.

Fail hilbert_of_wild() {
  const auto h = hilbert_function(wild()).values;
  if (h != std::vector<std::size_t>{1, 5, 5, 1}) return "unexpected Hilbert function";
  if (naive_hilbert(wild()) != h) return "oracle disagrees";
  return {};
}

Fail ann2_span() {
  const auto t = wild_table();
  const auto ann = ann_slice(wild(), 2);
  if (ann.dim() != 10) return "dim Ann(f)_2 = " + std::to_string(ann.dim());
  const std::vector<std::string> listed{"b0^2", "b0*b1", "b0*b2", "b1^2", "b1*b2", "b2^2",
                                        "a1*b0", "a0*b2", "-a0*b1 + a1*b1", "a0*b0 + a0*b1 + a1*b2"};
  const auto basis = monomials_of_degree(5, 2);
  std::vector<QVector> mine = slice_vectors(ann), theirs;
  for (const auto& s : listed) theirs.push_back(coefficient_vector(D(s, t), basis));
  for (const auto& v : theirs)
    if (!in_span(v, mine)) return "listed generator outside the computed slice";
  for (const auto& v : mine)
    if (!in_span(v, theirs)) return "computed basis vector outside the listed span";
  return {};
}

Fail membership_and_saturation() {
  const auto t = wild_table();
  const auto gens = ann_slice(wild(), 2).basis;
  const Poly target = D("a0^3*b0", t);
  auto cert = membership(target, gens);
  if (!cert || !cert->verify()) return "no membership certificate";
  const Poly phi1 = D("a1*b0", t), phi2 = D("a0*b2", t), phi3 = D("-a0*b1 + a1*b1", t),
             phi4 = D("a0*b0 + a0*b1 + a1*b2", t);
  const Poly hand = D("a0^2 - a0*a1", t) * phi4 - D("a0*a1 - a1^2", t) * phi2 + D("a0^2", t) * phi3 +
                    D("a0^2", t) * phi1;
  if (!(hand == target)) return "displayed certificate does not re-expand";
  for (const char* b : {"b0", "b1", "b2"})
    if (!saturation_witness(gens, D(b, t), 3)) return std::string("no saturation witness for ") + b;
  return {};
}

Fail cactus_six() {
  const auto t = wild_table();
  const auto ev = cactus_lower_via_slice(wild());
  if (!ev.bound || *ev.bound != 6 || !verify(ev, wild())) return "cactus lower bound is not 6";
  const std::vector<std::pair<Poly, Poly>> pairs{
      {P("x0", t), P("y0", t)}, {P("x0+x1", t), P("-y1", t)}, {P("x1", t), P("y2", t)}};
  const auto span = double_point_span(wild(), pairs);
  if (!span || !(span->recombine(3) == wild())) return "double point span failed";
  auto ev_all = ev.deductions;
  ev_all.insert(ev_all.end(), span->deductions.begin(), span->deductions.end());
  const auto rep = aggregate(wild(), ev_all);
  if (rep[RankNotion::Cactus].exact() != 6u) return "cactus not pinned to 6";
  if (rep[RankNotion::Smoothable].exact() != 6u) return "smoothable not pinned to 6";
  return {};
}

Fail border_five() {
  const VarTable t = wild_table();
  const VarTable tt({"x0", "x1", "y0", "y1", "y2", "t"});
  const Poly ft = P("1/3*(x0+t*y0)^3 - 1/3*((x0+x1)+t*y1)^3 - 1/12*(2*x1-t*y2)^3 - 1/9*(x0-x1)^3 + 1/9*(x0+2*x1)^3",
                    tt);
  const auto fam = ParamPoly::split_parameter(ft, 5, t);
  if (!verify_limit(fam, 1, wild())) return "family does not limit to f";
  if (catalecticant_lower_bound(wild()) != 5) return "catalecticant bound is not 5";
  std::vector<Deduction> ev = catalecticant_deductions(wild());
  ev.push_back({DeductionKind::WitnessFamily, RankNotion::Border, Side::Upper, 5, "five-point family", false});
  if (aggregate(wild(), ev)[RankNotion::Border].exact() != 5u) return "border not pinned to 5";
  return {};
}

Fail rank_nine() {
  const auto ws = discover_wild_structure(wild());
  if (!ws) return "no wild structure";
  const auto ps = rank9_upper(wild(), ws->shape);
  if (ps.forms.size() != 9 || !(ps.recombine(wild_table()) == wild())) return "nine cubes do not re-expand";
  const auto out = rank9_lower_cert(wild(), 8);
  if (!out.certificate) return "lower certificate failed at " + out.failing_stage;
  const auto& c = *out.certificate;
  if (c.ann2_dim != 10) return "slice dimension";
  if (c.locus.shape != LocusShape::Conic || c.locus.samples.size() < 5) return "conic samples";
  for (auto d : c.gamma_dims)
    if (d != 4) return "gamma dimension " + std::to_string(d);
  if (!forced_square_check(wild(), c.beta_forms)) return "forced square";
  if (!verify(c, wild())) return "certificate does not re-verify";
  const auto rep = theorem2_report(wild());
  if (rep.final[RankNotion::Rank].exact() != 9u) return "rank not pinned to 9";
  return {};
}

Fail sylvester_suite() {
  const VarTable xy({"x", "y"});
  auto s = sylvester_binary(P("x^2*y", xy));
  if (s.border != 2 || s.rank != 3) return "x^2*y";
  if (sylvester_binary(P("x^3 + y^3", xy)).rank != 2) return "x^3 + y^3";
  for (unsigned d = 1; d <= 6; ++d) {
    s = sylvester_binary(P("x^" + std::to_string(d), xy));
    if (s.border != 1 || s.rank != 1) return "x^" + std::to_string(d);
  }
  std::mt19937_64 rng(7001);
  for (int it = 0; it < 200; ++it) {
    const unsigned d = 1 + it % 6;
    const Poly f = random_nonzero_form(rng, xy, d);
    s = sylvester_binary(f);
    const auto h = naive_hilbert(f);
    const std::size_t oracle = *std::max_element(h.begin(), h.end());
    if (s.d1 + s.d2 != d + 2 || s.d1 != oracle) return "random form " + to_string(f);
  }
  return {};
}

Fail property_suites() {
  std::mt19937_64 rng(7002);
  for (int it = 0; it < 100; ++it) {
    const VarTable t = vars(1 + it % 4);
    const Poly f = random_nonzero_form(rng, t, 1 + it % 4);
    const auto h = hilbert_function(f);
    if (!h.is_symmetric() || h.values != naive_hilbert(f)) return "symmetry at " + to_string(f);
  }
  for (int it = 0; it < 100; ++it) {
    const VarTable t = vars(2 + it % 3);
    const Poly f = random_form(rng, t, 4);
    const Poly a = reinterpret(random_form(rng, t, 1 + it % 2), Ring::Dual);
    const Poly b = reinterpret(random_form(rng, t, 1 + it % 2), Ring::Dual);
    if (!(contract(a * b, f) == contract(a, contract(b, f)))) return "composition";
    if (!(contract(a, f) == naive_contract(a, f))) return "contraction oracle";
  }
  for (int it = 0; it < 100; ++it) {
    const VarTable t = vars(3);
    std::vector<Poly> gens;
    for (int k = 0; k <= it % 3; ++k)
      gens.push_back(reinterpret(random_nonzero_form(rng, t, 1 + (it + k) % 3), Ring::Dual));
    const auto h = quotient_hilbert(t, gens, 5);
    for (unsigned d = 1; d < 5; ++d)
      if (h[d] > 0 && Integer(static_cast<unsigned long>(h[d + 1])) > macaulay_bound(h[d], d))
        return "Macaulay bound violated";
  }
  for (const auto& form : shipped_forms()) {
    const auto rep = theorem2_report(form.poly);
    const auto& r = rep.final;
    for (auto n : kAllNotions) {
      const auto& b = r[n];
      if (!b.lower || *b.lower < rep.concise) return form.name + ": missing conciseness bound";
      if (b.upper && *b.upper < *b.lower) return form.name + ": bounds cross";
    }
    const auto up = [&](RankNotion n) { return r[n].upper; };
    const auto lo = [&](RankNotion n) { return *r[n].lower; };
    if (up(RankNotion::Smoothable) && (lo(RankNotion::Border) > *up(RankNotion::Smoothable) ||
                                       lo(RankNotion::Cactus) > *up(RankNotion::Smoothable)))
      return form.name + ": chain below smoothable";
    if (up(RankNotion::Rank) && lo(RankNotion::Smoothable) > *up(RankNotion::Rank))
      return form.name + ": chain below rank";
    if (!(aggregate(rep.concise, r.provenance) == r)) return form.name + ": aggregate not idempotent";
  }
  return {};
}

Fail direct_sum() {
  const VarTable t({"x0", "x1", "y0", "y1", "y2", "y3"});
  const Poly f = parse_poly(kWild, t);
  const Poly g = P("y3^3", t);
  const auto rep = theorem2_report(add(f, g));
  if (rep.concise != 6) return "conciseness " + std::to_string(rep.concise);
  if (rep.final[RankNotion::Border].exact() != 6u) return "border not 6";
  const auto& cl = rep.final[RankNotion::Cactus].lower;
  if (!cl || *cl < 7) return "cactus lower bound below 7";
  const auto ds = direct_sum_extend(f, g);
  if (!ds.slices_equal || !ds.concise_additive()) return "slice intersection";
  return {};
}

Fail invariance() {
  std::mt19937_64 rng(7003);
  const auto t = wild_table();
  for (int it = 0; it < 5; ++it) {
    std::vector<Poly> images;
    while (true) {
      QMatrix m(5, 5);
      for (std::size_t i = 0; i < 5; ++i)
        for (std::size_t j = 0; j < 5; ++j) m(i, j) = small_rational(rng, 2);
      if (rank(m) != 5) continue;
      for (std::size_t i = 0; i < 5; ++i) images.push_back(Poly::linear(t, Ring::Primal, m.row(i)));
      break;
    }
    const Poly g = substitute_linear(wild(), images);
    const auto r = theorem2_report(g).final;
    if (r[RankNotion::Border].exact() != 5u || r[RankNotion::Cactus].exact() != 6u ||
        r[RankNotion::Smoothable].exact() != 6u || r[RankNotion::Rank].exact() != 9u)
      return "values change under " + std::to_string(it + 1) + "-th substitution: " + to_string(g);
  }
  return {};
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Fail()>>> criteria{
      {"Hilbert function of f is (1,5,5,1)", hilbert_of_wild},
      {"Ann(f)_2 has dimension 10 and the listed span", ann2_span},
      {"membership of a0^3*b0 and saturation of b0,b1,b2 at k=3", membership_and_saturation},
      {"cactus = smoothable = 6", cactus_six},
      {"border = 5 from the tangent family", border_five},
      {"rank = 9 from nine cubes and the lower certificate", rank_nine},
      {"binary forms by Sylvester", sylvester_suite},
      {"symmetry, composition, Macaulay and chain properties", property_suites},
      {"f + y3^3: concise 6, border 6, cactus >= 7", direct_sum},
      {"values invariant under changes of coordinates", invariance},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto start = std::chrono::steady_clock::now();
    Fail why;
    try {
      why = criteria[i].second();
    } catch (const std::exception& e) {
      why = std::string("exception: ") + e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::cout << (why.empty() ? "PASS" : "FAIL") << " " << (i + 1) << ": " << criteria[i].first;
    if (!why.empty()) std::cout << " -- " << why;
    std::cout << " (" << std::fixed << std::setprecision(2) << secs << "s)\n";
    failed += !why.empty();
  }
  return failed == 0 ? 0 : 1;
}

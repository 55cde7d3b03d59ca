#include <apolar/cli.hpp>
#include <apolar/errors.hpp>
#include <apolar/parse.hpp>
#include <apolar/wildcert.hpp>

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <functional>
#include <map>

namespace apolar::cli {

namespace {

using json = nlohmann::ordered_json;

struct Flags {
  std::string poly;
  std::string vars;
  std::string json_path = "-";
  std::string dual_names;
  std::string value;
  std::string family;
  std::string param = "t";
  std::string pairs;
  std::string poly2;
  std::optional<unsigned> degree;
  std::optional<unsigned> rmax;
  std::optional<int> k;
};

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else if (!std::isspace(static_cast<unsigned char>(c))) {
      cur.push_back(c);
    }
  }
  out.push_back(cur);
  return out;
}

std::optional<std::vector<std::string>> declared_vars(const Flags& fl) {
  if (fl.vars.empty()) return std::nullopt;
  return split(fl.vars, ',');
}

Poly with_duals(const Poly& p, const Flags& fl) {
  if (fl.dual_names.empty()) return p;
  return Poly(p.table().with_dual_names(split(fl.dual_names, ',')), p.ring(), p.terms());
}

Poly load(const Flags& fl) {
  if (fl.poly.empty()) throw InputError("--poly is required");
  return with_duals(parse_poly(fl.poly, declared_vars(fl)), fl);
}

Poly require_form(const Poly& p) {
  if (p.is_zero()) throw InputError("the zero polynomial has no rank invariants");
  if (!p.homogeneous_degree()) throw InputError("polynomial is not homogeneous: " + to_string(p));
  return p;
}

json int_json(const Integer& z) {
  if (z.fits_slong_p()) return z.get_si();
  return z.get_str();
}

json opt_json(const std::optional<unsigned>& v) { return v ? json(*v) : json(nullptr); }

json strings(std::span<const Poly> ps) {
  json a = json::array();
  for (const auto& p : ps) a.push_back(to_string(p));
  return a;
}

json rationals(std::span<const Rational> v) {
  json a = json::array();
  for (const auto& q : v) a.push_back(to_string(q));
  return a;
}

json stage_log(std::span<const StageRecord> log) {
  json a = json::array();
  for (const auto& s : log) a.push_back({{"stage", s.stage}, {"passed", s.passed}, {"detail", s.detail}, {"cited", s.cited}});
  return a;
}

json note(const std::string& stage, const std::string& detail, bool cited = false) {
  return {{"stage", stage}, {"passed", true}, {"detail", detail}, {"cited", cited}};
}

json bounds_json(const RankReport& r) {
  json o = json::object();
  for (auto n : kAllNotions) {
    const auto& b = r[n];
    o[std::string(name(n))] = {{"lower", opt_json(b.lower)},
                               {"upper", opt_json(b.upper)},
                               {"exact", opt_json(b.exact())},
                               {"lower_source", b.lower_source},
                               {"upper_source", b.upper_source}};
  }
  return o;
}

json provenance_json(const RankReport& r) {
  json a = json::array();
  for (const auto& d : r.provenance) {
    a.push_back({{"kind", name(d.kind)},
                 {"notion", name(d.notion)},
                 {"side", name(d.side)},
                 {"value", d.value},
                 {"detail", d.detail},
                 {"cited", d.cited}});
  }
  return a;
}

struct Ctx {
  Flags fl;
  json input = {{"poly", nullptr}, {"vars", json::array()}};
  json results = json::object();
  json certificates = json::array();
  int exit_code = kOk;

  void set_input(const Poly& p) {
    input["poly"] = fl.poly;
    input["vars"] = p.table().primal_names();
  }
  void certificate(const std::string& kind, bool verified, json log) {
    certificates.push_back({{"kind", kind}, {"verified", verified}, {"stage_log", std::move(log)}});
    if (!verified) exit_code = kCertificateFailure;
  }
};

void cmd_hilbert(Ctx& c) {
  const Poly f = require_form(load(c.fl));
  c.set_input(f);
  const auto h = hilbert_function(f);
  c.results["degree"] = *f.homogeneous_degree();
  c.results["hilbert"] = h.values;
  c.results["symmetric"] = h.is_symmetric();
}

void cmd_annihilator(Ctx& c) {
  const Poly f = require_form(load(c.fl));
  c.set_input(f);
  const unsigned d = *f.homogeneous_degree();
  json slices = json::array();
  const unsigned lo = c.fl.degree.value_or(1), hi = c.fl.degree.value_or(d);
  for (unsigned i = lo; i <= hi; ++i) {
    const auto s = ann_slice(f, i);
    slices.push_back({{"degree", i}, {"dim", s.dim()}, {"basis", strings(s.basis)}});
  }
  c.results["slices"] = std::move(slices);
}

std::string mono_label(const Monomial& m, const VarTable& t, bool dual) {
  return to_string(Poly::term(t, dual ? Ring::Dual : Ring::Primal, m, Rational(1)));
}

void cmd_catalecticant(Ctx& c) {
  const Poly f = require_form(load(c.fl));
  c.set_input(f);
  const unsigned d = *f.homogeneous_degree();
  const unsigned i = c.fl.degree.value_or(d / 2);
  const auto cat = catalecticant(f, i);
  json rows = json::array(), cols = json::array(), mat = json::array();
  for (const auto& m : cat.target_monomials) rows.push_back(mono_label(m, f.table(), false));
  for (const auto& m : cat.source_monomials) cols.push_back(mono_label(m, f.table(), true));
  for (std::size_t r = 0; r < cat.matrix.rows(); ++r) mat.push_back(rationals(cat.matrix.row(r)));
  c.results["degree"] = i;
  c.results["rank"] = rank(cat.matrix);
  c.results["row_labels"] = std::move(rows);
  c.results["col_labels"] = std::move(cols);
  c.results["matrix"] = std::move(mat);
}

void cmd_concise(Ctx& c) {
  const Poly f = require_form(load(c.fl));
  c.set_input(f);
  const auto red = concise_reduce(f);
  c.results["concise"] = red.info.n;
  c.results["essential_basis"] = strings(red.info.essential_basis);
  c.results["reduced"] = to_string(red.reduced);
  c.results["reduced_vars"] = red.reduced.table().primal_names();
  const bool ok = substitute_linear(red.reduced, red.back_substitution) == f;
  c.certificate("back_substitution", ok,
                json::array({note("substitute", "reduced form with each variable replaced by its essential form")}));
}

void cmd_macaulay(Ctx& c) {
  if (c.fl.value.empty()) throw InputError("--value is required");
  if (!c.fl.degree || *c.fl.degree == 0) throw InputError("--degree must be a positive integer");
  Integer h;
  if (h.set_str(c.fl.value, 10) != 0 || h < 0) throw InputError("--value must be a nonnegative integer");
  const unsigned d = *c.fl.degree;
  json rep = json::array();
  for (const auto& [k, i] : macaulay_representation(h, d)) rep.push_back({int_json(k), i});
  c.results["h"] = int_json(h);
  c.results["d"] = d;
  c.results["representation"] = std::move(rep);
  c.results["bound"] = int_json(macaulay_bound(h, d));
}

void cmd_sylvester(Ctx& c) {
  const Poly f = require_form(load(c.fl));
  c.set_input(f);
  const auto s = sylvester_binary(f);
  c.results["border"] = s.border;
  c.results["rank"] = s.rank;
  c.results["d1"] = s.d1;
  c.results["d2"] = s.d2;
  json log = json::array();
  log.push_back(note("degrees", "Ann(f) generated in degrees " + std::to_string(s.d1) + " and " + std::to_string(s.d2)));
  if (s.generator) log.push_back(note("generator", to_string(*s.generator)));
  log.push_back(note("square_free", s.square_free ? "generator has distinct roots" : "generator has a repeated root"));
  log.push_back(note("sylvester", "border = d1, rank = d1 if square-free else d2", true));
  c.certificate("sylvester", s.d1 + s.d2 == s.degree + 2, std::move(log));
}

void add_theorem2_certificates(Ctx& c, const WildReport& rep) {
  const Poly& g = rep.working;
  c.certificate("catalecticant", true,
                json::array({note("hilbert", rep.final[RankNotion::Border].lower_source)}));
  if (rep.cactus_lower) c.certificate("cactus_lower", verify(*rep.cactus_lower, g), stage_log(rep.cactus_lower->log));
  if (rep.border_witness) {
    json log = json::array({note("family", "sum of " + std::to_string(rep.border_witness->r) + " cubes along tangent directions"),
                            note("limit", to_string(rep.border_witness->limit))});
    c.certificate("border_witness", rep.border_witness_verified && rep.border_witness->limit == g, std::move(log));
  }
  if (rep.double_points) {
    json log = json::array();
    for (std::size_t i = 0; i < rep.double_points->pairs.size(); ++i) {
      const auto& [l, m] = rep.double_points->pairs[i];
      log.push_back(note("double_point", "(" + to_string(l) + ", " + to_string(m) + ") a = " +
                                             to_string(rep.double_points->a[i]) + ", b = " + to_string(rep.double_points->b[i])));
    }
    log.push_back(note("smoothable", "each double point is curvilinear", true));
    c.certificate("double_points", rep.double_points->recombine(rep.degree) == g, std::move(log));
  }
  if (rep.rank_upper) {
    json log = json::array();
    for (std::size_t i = 0; i < rep.rank_upper->forms.size(); ++i)
      log.push_back(note("cube", to_string(rep.rank_upper->coeffs[i]) + " * (" + to_string(rep.rank_upper->forms[i]) + ")^3"));
    c.certificate("rank_upper", rep.rank_upper->recombine(g.table()) == g, std::move(log));
  }
  if (rep.rank_lower) {
    const bool ok = rep.rank_lower->certificate && verify(*rep.rank_lower->certificate, g);
    c.certificate("rank_lower", ok, stage_log(rep.rank_lower->log));
  }
  if (rep.direct_sum) {
    const auto& ds = *rep.direct_sum;
    json log = json::array({note("concise", std::to_string(ds.concise_f) + " + " + std::to_string(ds.concise_g) +
                                                " = " + std::to_string(ds.concise_sum)),
                            note("ann2", "Ann(f+g)_2 = Ann(f)_2 ∩ Ann(g)_2, dimension " +
                                             std::to_string(ds.intersection.size()))});
    c.certificate("direct_sum", ds.slices_equal && ds.concise_additive(), std::move(log));
  }
}

void cmd_rank_bounds(Ctx& c) {
  const Poly f = require_form(load(c.fl));
  c.set_input(f);
  const auto rep = theorem2_report(f);
  c.results["concise"] = rep.concise;
  c.results["bounds"] = bounds_json(rep.final);
  c.results["provenance"] = provenance_json(rep.final);
}

void cmd_theorem2(Ctx& c) {
  const Poly f = require_form(load(c.fl));
  c.set_input(f);
  const auto rep = theorem2_report(f);
  c.results["degree"] = rep.degree;
  c.results["concise"] = rep.concise;
  c.results["hilbert"] = rep.hilbert.values;
  c.results["ann2_dim"] = rep.ann2_dim;
  for (auto n : {RankNotion::Border, RankNotion::Cactus, RankNotion::Smoothable, RankNotion::Rank})
    c.results[std::string(name(n))] = opt_json(rep.final[n].exact());
  c.results["bounds"] = bounds_json(rep.final);
  c.results["provenance"] = provenance_json(rep.final);
  c.results["log"] = stage_log(rep.log);
  add_theorem2_certificates(c, rep);
}

void cmd_witness_verify(Ctx& c) {
  const Poly target = require_form(load(c.fl));
  c.set_input(target);
  if (c.fl.family.empty()) throw InputError("--family is required");
  auto names = target.table().primal_names();
  if (std::find(names.begin(), names.end(), c.fl.param) != names.end())
    throw InputError("parameter '" + c.fl.param + "' clashes with a variable");
  names.push_back(c.fl.param);
  const Poly fam = parse_poly(c.fl.family, names);
  const auto family = ParamPoly::split_parameter(fam, names.size() - 1, target.table());
  const auto k = c.fl.k ? std::optional<int>(*c.fl.k) : limit_order(family);
  const bool ok = k ? verify_limit(family, *k, target) : target.is_zero();
  c.results["k"] = k ? json(*k) : json(nullptr);
  c.results["verified"] = ok;
  c.results["limit"] = k ? json(to_string(family.shift(-*k).coefficient(0))) : json(nullptr);
  c.certificate("witness_limit", ok,
                json::array({note("limit", "t^-k * family has no negative powers and its t^0 part is the target")}));
}

void cmd_double_points(Ctx& c) {
  const Poly f = require_form(load(c.fl));
  c.set_input(f);
  if (c.fl.pairs.empty()) throw InputError("--pairs is required, e.g. \"x0:y0;x0+x1:-y1\"");
  std::vector<std::pair<Poly, Poly>> pairs;
  for (const auto& item : split(c.fl.pairs, ';')) {
    auto lm = split(item, ':');
    if (lm.size() != 2) throw InputError("pair '" + item + "' must have the form l:m");
    pairs.emplace_back(parse_poly(lm[0], f.table()), parse_poly(lm[1], f.table()));
  }
  const auto span = double_point_span(f, pairs);
  c.results["pairs"] = pairs.size();
  c.results["in_span"] = span.has_value();
  if (span) {
    c.results["length"] = span->length;
    c.results["a"] = rationals(span->a);
    c.results["b"] = rationals(span->b);
  }
  c.certificate("double_points", span.has_value(),
                json::array({note("span", span ? "f = sum a_i l_i^d + b_i l_i^(d-1) m_i" : "f is not in the span")}));
}

void cmd_wild_cert(Ctx& c) {
  const Poly f = require_form(load(c.fl));
  c.set_input(f);
  const Poly g = concise_reduce(f).reduced;
  const auto out = rank9_lower_cert(g, c.fl.rmax.value_or(8));
  c.results["rmax"] = c.fl.rmax.value_or(8);
  c.results["rank_lower"] = out.certificate ? json(out.certificate->rank_lower) : json(nullptr);
  c.results["failing_stage"] = out.failing_stage.empty() ? json(nullptr) : json(out.failing_stage);
  if (out.certificate) {
    const auto& cert = *out.certificate;
    c.results["ann2_dim"] = cert.ann2_dim;
    c.results["forced_quadrics"] = cert.forced_quadrics;
    c.results["codim_bound"] = cert.codim_bound;
    c.results["beta_forms"] = strings(cert.beta_forms);
    c.results["alpha_forms"] = strings(cert.alpha_forms);
    c.results["conic"] = to_string(*cert.locus.conic);
    json samples = json::array();
    for (const auto& s : cert.locus.samples) samples.push_back({{"a", rationals(s.a)}, {"c", rationals(s.c)}});
    c.results["samples"] = std::move(samples);
    c.results["gamma_dims"] = cert.gamma_dims;
  }
  c.certificate("rank_lower", out.certificate && verify(*out.certificate, g), stage_log(out.log));
  if (g.homogeneous_degree() == 3u) {
    const auto ev = cactus_lower_via_slice(g);
    c.results["cactus_lower"] = ev.bound ? json(*ev.bound) : json(nullptr);
    c.certificate("cactus_lower", verify(ev, g), stage_log(ev.log));
  }
}

void cmd_direct_sum(Ctx& c) {
  if (c.fl.poly.empty() || c.fl.poly2.empty()) throw InputError("--poly and --poly2 are required");
  auto names = declared_vars(c.fl);
  if (!names) {
    names = collect_identifiers(c.fl.poly);
    for (const auto& v : collect_identifiers(c.fl.poly2))
      if (std::find(names->begin(), names->end(), v) == names->end()) names->push_back(v);
  }
  const Poly f = require_form(with_duals(parse_poly(c.fl.poly, names), c.fl));
  const Poly g = require_form(parse_poly(c.fl.poly2, f.table()));
  c.set_input(f);
  c.input["poly2"] = c.fl.poly2;
  const auto ds = direct_sum_extend(f, g);
  c.results["sum"] = to_string(ds.sum);
  c.results["concise_f"] = ds.concise_f;
  c.results["concise_g"] = ds.concise_g;
  c.results["concise_sum"] = ds.concise_sum;
  c.results["concise_additive"] = ds.concise_additive();
  c.results["ann2_dims"] = {{"f", ds.slice_f.dim()}, {"g", ds.slice_g.dim()}, {"sum", ds.slice_sum.dim()}};
  c.results["intersection_dim"] = ds.intersection.size();
  c.results["slices_equal"] = ds.slices_equal;
  c.certificate("ann_slice_intersection", ds.slices_equal,
                json::array({note("intersection", "Ann(f+g)_2 compared with Ann(f)_2 ∩ Ann(g)_2")}));
}

struct Command {
  const char* name;
  const char* help;
  std::vector<std::string> flags;
  std::function<void(Ctx&)> fn;
};

const std::vector<Command>& commands() {
  static const std::vector<Command> cmds = {
      {"hilbert", "Hilbert function of the apolar algebra", {"poly", "vars", "dual-names"}, cmd_hilbert},
      {"annihilator", "graded pieces of Ann(f)", {"poly", "vars", "dual-names", "degree"}, cmd_annihilator},
      {"catalecticant", "catalecticant matrix in one degree", {"poly", "vars", "dual-names", "degree"}, cmd_catalecticant},
      {"concise", "essential variables and concise rewriting", {"poly", "vars", "dual-names"}, cmd_concise},
      {"macaulay", "Macaulay representation and growth bound", {"value", "degree"}, cmd_macaulay},
      {"sylvester", "ranks of a binary form", {"poly", "vars", "dual-names"}, cmd_sylvester},
      {"rank-bounds", "aggregated bounds on the four ranks", {"poly", "vars", "dual-names"}, cmd_rank_bounds},
      {"witness-verify", "check the limit of a parametrized family", {"poly", "vars", "dual-names", "family", "param", "k"},
       cmd_witness_verify},
      {"double-points", "express f in the span of double points", {"poly", "vars", "dual-names", "pairs"}, cmd_double_points},
      {"wild-cert", "rank lower bound certificate", {"poly", "vars", "dual-names", "rmax"}, cmd_wild_cert},
      {"theorem2", "full rank report with certificates", {"poly", "vars", "dual-names"}, cmd_theorem2},
      {"direct-sum", "compare annihilators of a direct sum", {"poly", "poly2", "vars", "dual-names"}, cmd_direct_sum},
  };
  return cmds;
}

void add_flag(CLI::App* sub, const std::string& flag, Flags& fl) {
  if (flag == "poly") sub->add_option("--poly", fl.poly, "polynomial expression");
  else if (flag == "vars") sub->add_option("--vars", fl.vars, "comma separated variable order");
  else if (flag == "dual-names") sub->add_option("--dual-names", fl.dual_names, "comma separated dual variable names");
  else if (flag == "degree") sub->add_option("--degree", fl.degree, "degree");
  else if (flag == "rmax") sub->add_option("--rmax", fl.rmax, "largest excluded rank");
  else if (flag == "value") sub->add_option("--value", fl.value, "dimension h");
  else if (flag == "family") sub->add_option("--family", fl.family, "family in the variables and the parameter");
  else if (flag == "param") sub->add_option("--param", fl.param, "parameter name (default t)");
  else if (flag == "k") sub->add_option("--k", fl.k, "power of t to divide by");
  else if (flag == "pairs") sub->add_option("--pairs", fl.pairs, "double points l:m separated by ';'");
  else if (flag == "poly2") sub->add_option("--poly2", fl.poly2, "second summand");
}

json error_doc(const std::string& command, const std::string& kind, const std::string& message) {
  return {{"command", command}, {"error", {{"kind", kind}, {"message", message}}}, {"version", kVersion}};
}

}  // namespace

Output run(const std::vector<std::string>& args) {
  Ctx ctx;
  CLI::App app{"Apolarity and rank certificates for homogeneous polynomials", "apolar"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kVersion);
  std::map<CLI::App*, const Command*> by_app;
  for (const auto& cmd : commands()) {
    CLI::App* sub = app.add_subcommand(cmd.name, cmd.help);
    for (const auto& fl : cmd.flags) add_flag(sub, fl, ctx.fl);
    sub->add_option("--json", ctx.fl.json_path, "write the report to a path, '-' for stdout");
    by_app[sub] = &cmd;
  }
  const std::string command = args.empty() ? "" : args.front();
  Output out;
  const auto& cmds = commands();
  if (!command.empty() && command.front() != '-' &&
      std::none_of(cmds.begin(), cmds.end(), [&](const Command& c) { return command == c.name; })) {
    out.document = error_doc(command, "usage", "unknown command '" + command + "'").dump(2) + "\n";
    out.exit_code = kInputError;
    return out;
  }
  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::CallForHelp& e) {
    out.document = app.help();
    for (auto* sub : app.get_subcommands()) out.document = sub->help();
    return out;
  } catch (const CLI::CallForVersion&) {
    out.document = std::string(kVersion) + "\n";
    return out;
  } catch (const CLI::ParseError& e) {
    out.document = error_doc(command, "usage", e.what()).dump(2) + "\n";
    out.exit_code = kInputError;
    return out;
  }
  const Command* cmd = by_app.at(app.get_subcommands().front());
  out.json_path = ctx.fl.json_path;
  try {
    cmd->fn(ctx);
  } catch (const InputError& e) {
    out.document = error_doc(cmd->name, "input", e.what()).dump(2) + "\n";
    out.exit_code = kInputError;
    return out;
  } catch (const CertificateError& e) {
    out.document = error_doc(cmd->name, "certificate", e.what()).dump(2) + "\n";
    out.exit_code = kCertificateFailure;
    return out;
  }
  json doc;
  doc["command"] = cmd->name;
  doc["input"] = ctx.input;
  doc["results"] = ctx.results;
  doc["certificates"] = ctx.certificates;
  doc["version"] = kVersion;
  out.document = doc.dump(2) + "\n";
  out.exit_code = ctx.exit_code;
  return out;
}

}  // namespace apolar::cli

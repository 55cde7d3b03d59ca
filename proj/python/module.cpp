#include <apolar/cli.hpp>
#include <apolar/errors.hpp>
#include <apolar/parse.hpp>
#include <apolar/wildcert.hpp>

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
using namespace apolar;

namespace {

py::object fraction(const Rational& q) {
  static py::object cls = py::module_::import("fractions").attr("Fraction");
  return cls(q.get_str());
}

Rational rational(py::handle h) {
  Rational q(py::str(h).cast<std::string>());
  q.canonicalize();
  return q;
}

Poly make_poly(const std::string& text, std::optional<std::vector<std::string>> vars) {
  return parse_poly(text, vars);
}

py::dict terms_dict(const Poly& p) {
  py::dict d;
  for (const auto& [m, c] : p.terms()) d[py::tuple(py::cast(m.exps))] = fraction(c);
  return d;
}

std::vector<std::string> strings(std::span<const Poly> ps) {
  std::vector<std::string> out;
  for (const auto& p : ps) out.push_back(to_string(p));
  return out;
}

py::object opt(const std::optional<unsigned>& v) { return v ? py::cast(*v) : py::none(); }

py::dict bounds_dict(const RankReport& r) {
  py::dict d;
  for (auto n : kAllNotions) {
    py::dict b;
    b["lower"] = opt(r[n].lower);
    b["upper"] = opt(r[n].upper);
    d[py::str(std::string(name(n)))] = b;
  }
  return d;
}

py::list stage_list(const std::vector<StageRecord>& log) {
  py::list out;
  for (const auto& s : log) {
    py::dict d;
    d["stage"] = s.stage;
    d["passed"] = s.passed;
    d["detail"] = s.detail;
    d["cited"] = s.cited;
    out.append(d);
  }
  return out;
}

}  // namespace

PYBIND11_MODULE(_apolar, m) {
  m.doc() = "Exact apolarity computations for symmetric tensors";
  m.attr("__version__") = cli::kVersion;

  py::register_exception<InputError>(m, "InputError", PyExc_ValueError);
  py::register_exception<CertificateError>(m, "CertificateError", PyExc_RuntimeError);

  py::class_<VarTable>(m, "VarTable")
      .def(py::init<std::vector<std::string>>(), py::arg("names"))
      .def(py::init<std::vector<std::string>, std::vector<std::string>>(), py::arg("names"), py::arg("dual_names"))
      .def_property_readonly("names", &VarTable::primal_names)
      .def_property_readonly("dual_names", &VarTable::dual_names)
      .def("__len__", &VarTable::size)
      .def("__eq__", [](const VarTable& a, const VarTable& b) { return a == b; });

  py::class_<Poly>(m, "Poly")
      .def(py::init(&make_poly), py::arg("text"), py::arg("vars") = py::none())
      .def(py::init([](const std::string& text, const VarTable& t) { return parse_poly(text, t); }), py::arg("text"),
           py::arg("table"))
      .def_property_readonly("table", &Poly::table)
      .def_property_readonly("is_dual", [](const Poly& p) { return p.ring() == Ring::Dual; })
      .def_property_readonly("degree", [](const Poly& p) -> py::object {
        auto d = p.homogeneous_degree();
        return d ? py::cast(*d) : py::none();
      })
      .def("terms", &terms_dict)
      .def("is_zero", &Poly::is_zero)
      .def("__len__", &Poly::term_count)
      .def("__str__", [](const Poly& p) { return to_string(p); })
      .def("__repr__", [](const Poly& p) { return "Poly('" + to_string(p) + "')"; })
      .def("__eq__", [](const Poly& a, const Poly& b) { return a == b; })
      .def("__add__", [](const Poly& a, const Poly& b) { return add(a, b); })
      .def("__sub__", [](const Poly& a, const Poly& b) { return subtract(a, b); })
      .def("__mul__", [](const Poly& a, const Poly& b) { return multiply(a, b); })
      .def("__neg__", [](const Poly& a) { return negate(a); })
      .def("__pow__", [](const Poly& a, unsigned k) { return power(a, k); })
      .def("scale", [](const Poly& p, py::handle c) { return scale(p, rational(c)); })
      .def("substitute", [](const Poly& p, const std::vector<Poly>& images) { return substitute_linear(p, images); });

  m.def(
      "dual", [](const std::string& text, const VarTable& t) {
        return Poly(t, Ring::Dual, parse_poly(text, VarTable(t.dual_names())).terms());
      },
      py::arg("text"), py::arg("table"), "Dual form written in the dual names of the table.");
  m.def("contract", &contract, py::arg("alpha"), py::arg("f"));

  m.def("hilbert_function", [](const Poly& f) { return hilbert_function(f).values; });
  m.def("ann_slice", [](const Poly& f, unsigned i) { return ann_slice(f, i).basis; }, py::arg("f"), py::arg("degree"));
  m.def("concise_dim", [](const Poly& f) { return concise_dim(f).n; });
  m.def("concise_reduce", [](const Poly& f) {
    auto r = concise_reduce(f);
    return py::make_tuple(r.reduced, r.back_substitution);
  });
  m.def(
      "catalecticant",
      [](const Poly& f, unsigned i) {
        const auto c = catalecticant(f, i);
        py::list rows;
        for (std::size_t r = 0; r < c.matrix.rows(); ++r) {
          py::list row;
          for (std::size_t k = 0; k < c.matrix.cols(); ++k) row.append(fraction(c.matrix(r, k)));
          rows.append(row);
        }
        return rows;
      },
      py::arg("f"), py::arg("degree"));

  m.def(
      "membership",
      [](const Poly& target, const std::vector<Poly>& gens) -> py::object {
        auto c = membership(target, gens);
        return c ? py::cast(c->cofactors) : py::none();
      },
      py::arg("target"), py::arg("gens"));
  m.def(
      "saturation_witness",
      [](const std::vector<Poly>& gens, const Poly& gamma, unsigned k) { return saturation_witness(gens, gamma, k); },
      py::arg("gens"), py::arg("gamma"), py::arg("k"));
  m.def(
      "quotient_hilbert",
      [](const VarTable& t, const std::vector<Poly>& gens, unsigned up_to) { return quotient_hilbert(t, gens, up_to); },
      py::arg("table"), py::arg("gens"), py::arg("up_to"));
  m.def(
      "macaulay_bound", [](long h, unsigned d) { return macaulay_bound(h, d).get_si(); }, py::arg("h"),
      py::arg("d"));

  m.def("catalecticant_lower_bound", &catalecticant_lower_bound);
  m.def("quadric_rank", &quadric_rank);
  m.def("sylvester", [](const Poly& f) {
    const auto s = sylvester_binary(f);
    py::dict d;
    d["border"] = s.border;
    d["rank"] = s.rank;
    d["d1"] = s.d1;
    d["d2"] = s.d2;
    return d;
  });

  m.def(
      "verify_limit",
      [](const Poly& family, const std::string& param, int k, const Poly& target) {
        const auto idx = family.table().index_of(param);
        if (!idx) throw InputError("parameter '" + param + "' does not occur in the family");
        return verify_limit(ParamPoly::split_parameter(family, *idx, target.table()), k, target);
      },
      py::arg("family"), py::arg("param"), py::arg("k"), py::arg("target"),
      "family is a polynomial in the target's variables and the parameter, parameter last.");
  m.def(
      "double_point_span",
      [](const Poly& f, const std::vector<std::pair<Poly, Poly>>& pairs) -> py::object {
        auto s = double_point_span(f, pairs);
        if (!s) return py::none();
        py::dict d;
        py::list a, b;
        for (const auto& q : s->a) a.append(fraction(q));
        for (const auto& q : s->b) b.append(fraction(q));
        d["a"] = a;
        d["b"] = b;
        d["length"] = s->length;
        return d;
      },
      py::arg("f"), py::arg("pairs"));

  m.def("cactus_lower", [](const Poly& f) { return opt(cactus_lower_via_slice(f).bound); });
  m.def(
      "rank9_lower_cert",
      [](const Poly& f, unsigned r_max) {
        const auto out = rank9_lower_cert(f, r_max);
        py::dict d;
        d["rank_lower"] = out.certificate ? py::cast(out.certificate->rank_lower) : py::none();
        d["verified"] = out.certificate && verify(*out.certificate, f);
        d["failing_stage"] = out.failing_stage.empty() ? py::none() : py::cast(out.failing_stage);
        d["stages"] = stage_list(out.log);
        return d;
      },
      py::arg("f"), py::arg("r_max") = 8);
  m.def("rank9_upper", [](const Poly& f) -> py::object {
    const auto ws = discover_wild_structure(f);
    if (!ws) return py::none();
    const auto ps = rank9_upper(f, ws->shape);
    py::list out;
    for (std::size_t i = 0; i < ps.forms.size(); ++i) out.append(py::make_tuple(fraction(ps.coeffs[i]), ps.forms[i]));
    return out;
  });
  m.def("theorem2", [](const Poly& f) {
    const auto rep = theorem2_report(f);
    py::dict d;
    d["concise"] = rep.concise;
    d["hilbert"] = rep.hilbert.values;
    d["bounds"] = bounds_dict(rep.final);
    for (auto n : kAllNotions) d[py::str(std::string(name(n)))] = opt(rep.final[n].exact());
    d["log"] = stage_list(rep.log);
    return d;
  });

  m.def(
      "run_cli", [](const std::vector<std::string>& args) {
        const auto out = cli::run(args);
        return py::make_tuple(out.document, out.exit_code);
      },
      py::arg("args"), "Runs a CLI command; returns (document, exit code).");
}

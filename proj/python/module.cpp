#include <pybind11/operators.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "powerstab/cli.hpp"
#include "powerstab/corpus.hpp"
#include "powerstab/errors.hpp"
#include "powerstab/report.hpp"
#include "powerstab/stability.hpp"

namespace py = pybind11;
using namespace powerstab;

namespace {

py::object loads(const std::string& text) { return py::module_::import("json").attr("loads")(text); }

std::vector<Polynomial> to_polys(const py::handle& gens, const Ring& ring) {
  if (py::isinstance<py::str>(gens)) return parse_poly_list(gens.cast<std::string>(), ring);
  std::vector<Polynomial> out;
  for (const auto& g : gens) {
    if (py::isinstance<py::str>(g)) {
      out.push_back(parse_poly(g.cast<std::string>(), ring));
    } else {
      out.push_back(g.cast<Polynomial>());
    }
  }
  return out;
}

std::vector<std::string> strings(const std::vector<Polynomial>& polys) {
  std::vector<std::string> out;
  for (const auto& p : polys) out.push_back(format_poly(p));
  return out;
}

Ideal make_ideal(const Ring& ring, const py::object& gens, std::size_t max_pairs, std::uint64_t max_degree) {
  return Ideal(ring, to_polys(gens, ring), GroebnerOptions{max_pairs, max_degree});
}

MonomialOrder order_from(const std::string& name, const Ring& ring) {
  if (name == "grevlex") return MonomialOrder::grevlex();
  if (name == "lex") return MonomialOrder::lex();
  if (name == "block") {
    const auto x = ring->main_variable();
    if (!x) throw UsageError("block order needs a main variable");
    const std::size_t front[] = {*x};
    return elimination_order(front);
  }
  throw UsageError("unknown order '" + name + "'");
}

}  // namespace

PYBIND11_MODULE(powerstab, m) {
  m.doc() = "Exact ideal computations in R[X] and power stability checks";

  auto base = py::register_exception<Error>(m, "Error", PyExc_ValueError);
  py::register_exception<ParseError>(m, "ParseError", base.ptr());
  py::register_exception<UsageError>(m, "UsageError", base.ptr());
  py::register_exception<DomainError>(m, "DomainError", base.ptr());
  py::register_exception<RingMismatch>(m, "RingMismatch", base.ptr());
  py::register_exception<NotDivisible>(m, "NotDivisible", base.ptr());
  py::register_exception<BudgetExceeded>(m, "BudgetExceeded", base.ptr());

  py::class_<RingSpec, std::shared_ptr<RingSpec>>(m, "Ring")
      .def(py::init([](const std::string& spec) { return std::const_pointer_cast<RingSpec>(RingSpec::parse(spec)); }),
           py::arg("spec"))
      .def_property_readonly("variables", &RingSpec::variables)
      .def_property_readonly("main_variable",
                             [](const RingSpec& r) -> std::optional<std::string> {
                               if (auto x = r.main_variable()) return r.variable_name(*x);
                               return std::nullopt;
                             })
      .def_property_readonly("coefficients", [](const RingSpec& r) { return r.coefficients().name(); })
      .def("__str__", &RingSpec::to_string)
      .def("__repr__", [](const RingSpec& r) { return "Ring('" + r.to_string() + "')"; })
      .def("__eq__", [](const RingSpec& a, const RingSpec& b) { return a == b; });

  py::class_<Polynomial>(m, "Polynomial")
      .def(py::init([](const std::string& text, const std::shared_ptr<RingSpec>& ring) { return parse_poly(text, ring); }),
           py::arg("text"), py::arg("ring"))
      .def_property_readonly("ring", [](const Polynomial& p) { return std::const_pointer_cast<RingSpec>(p.ring()); })
      .def("total_degree", &Polynomial::total_degree)
      .def("is_zero", &Polynomial::is_zero)
      .def("__pow__", [](const Polynomial& p, unsigned e) { return p.pow(e); })
      .def(py::self + py::self)
      .def(py::self - py::self)
      .def(py::self * py::self)
      .def(-py::self)
      .def(py::self == py::self)
      .def("__truediv__", [](const Polynomial& a, const Polynomial& b) { return exact_divide(a, b); })
      .def("__str__", &format_poly)
      .def("__repr__", [](const Polynomial& p) { return "Polynomial('" + format_poly(p) + "')"; });

  py::class_<Ideal>(m, "Ideal")
      .def(py::init([](const std::shared_ptr<RingSpec>& ring, const py::object& gens, std::size_t max_pairs,
                       std::uint64_t max_degree) { return make_ideal(ring, gens, max_pairs, max_degree); }),
           py::arg("ring"), py::arg("generators"), py::arg("max_pairs") = GroebnerOptions{}.max_pairs,
           py::arg("max_degree") = GroebnerOptions{}.max_degree)
      .def_property_readonly("ring", [](const Ideal& i) { return std::const_pointer_cast<RingSpec>(i.ring()); })
      .def_property_readonly("generators", &Ideal::generators)
      .def(
          "basis",
          [](const Ideal& i, const std::string& order) {
            const auto ord = order_from(order, i.ring());
            std::vector<Polynomial> out;
            for (const auto& g : i.basis(ord).elements) out.push_back(g.with_order(ord));
            return out;
          },
          py::arg("order") = "grevlex")
      .def("__contains__", [](const Ideal& i, const Polynomial& f) { return member(f, i); })
      .def("contains", [](const Ideal& i, const Polynomial& f) { return member(f, i); })
      .def("power", &ideal_power)
      .def("__add__", [](const Ideal& a, const Ideal& b) { return ideal_combine(IdealOp::Sum, a, b); })
      .def("__mul__", [](const Ideal& a, const Ideal& b) { return ideal_combine(IdealOp::Product, a, b); })
      .def("intersect", &intersect)
      .def("quotient", &quotient)
      .def("saturate", &saturate)
      .def("eliminate", [](const Ideal& i, const std::vector<std::string>& vars) { return eliminate(i, vars); })
      .def("equals", &ideal_equal)
      .def("__str__", &Ideal::to_string)
      .def("__repr__", [](const Ideal& i) { return "Ideal('" + i.ring()->to_string() + "', '" + i.to_string() + "')"; });

  m.def("radical_member", [](const Polynomial& f, const Ideal& i) {
    const auto r = radical_member(f, i);
    return py::make_tuple(r.member, r.exponent);
  });

  m.def(
      "kernel_of_map",
      [](const std::string& source, const std::string& target, const std::map<std::string, std::string>& images) {
        RingMap map{RingSpec::parse(source), RingSpec::parse(target), {}};
        for (const auto& [v, text] : images) map.images.emplace(v, parse_poly(text, map.target));
        return kernel_of_map(map);
      },
      py::arg("source"), py::arg("target"), py::arg("images"));

  m.def(
      "contract_power", [](const Ideal& i, unsigned t) { return contract_power(i, t).generators; }, py::arg("ideal"),
      py::arg("t") = 1);

  m.def(
      "check_power_stable",
      [](const Ideal& i, unsigned T, unsigned jobs) {
        return loads(emit_report(check_power_stable(i, T, jobs), OutputFormat::Json));
      },
      py::arg("ideal"), py::arg("T") = 4, py::arg("jobs") = 1, "Report as a dict (same schema as ps --format json).");

  m.def(
      "graded_criterion",
      [](const Ideal& i, unsigned N) { return loads(emit_criterion(graded_criterion(i, N), OutputFormat::Json)); },
      py::arg("ideal"), py::arg("N") = 3);

  m.def("monic_certificate", [](const Ideal& i) -> py::object {
    const auto c = monic_certificate(i);
    if (!c) return py::none();
    py::dict d;
    d["J"] = strings(c->base_generators);
    d["f"] = format_poly(c->f);
    d["transcript"] = c->transcript;
    return std::move(d);
  });

  m.def("regular_image_certificate", [](const Ideal& i) -> py::object {
    std::string reason;
    const auto c = regular_image_certificate(i, &reason);
    py::dict d;
    if (!c) {
      d["certified"] = false;
      d["reason"] = reason;
      return std::move(d);
    }
    d["certified"] = true;
    d["d"] = c->d.to_string();
    d["h"] = format_poly(c->h);
    d["transcript"] = c->transcript;
    return std::move(d);
  });

  m.def(
      "primary_obstruction",
      [](const Ideal& p, unsigned t, const py::object& witnesses) -> py::object {
        std::vector<Polynomial> ws;
        if (!witnesses.is_none()) ws = to_polys(witnesses, p.ring());
        const auto c = primary_obstruction(p, t, ws);
        if (!c) return py::none();
        py::dict d;
        d["w"] = format_poly(c->w);
        d["q"] = format_poly(c->q);
        d["t"] = c->t;
        d["verified"] = c->verified;
        return std::move(d);
      },
      py::arg("prime"), py::arg("t") = 2, py::arg("witnesses") = py::none());

  m.def(
      "corpus",
      [](const std::string& name, const std::vector<std::string>& params, std::uint64_t seed) {
        auto item = corpus(name, params, seed);
        return py::make_tuple(item.label, item.ideal, item.second);
      },
      py::arg("name"), py::arg("params") = std::vector<std::string>{}, py::arg("seed") = 0);

  m.def(
      "run_command",
      [](const std::vector<std::string>& args, const std::string& stdin_text) {
        std::istringstream in(stdin_text);
        const auto r = run_command(args, in);
        return py::make_tuple(r.exit_code, r.output, r.error);
      },
      py::arg("args"), py::arg("stdin") = "", "Runs a ps invocation; returns (exit_code, stdout, stderr).");
}

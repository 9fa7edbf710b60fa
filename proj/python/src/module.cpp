#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <nlohmann/json.hpp>

#include "toricstab/fixtures.hpp"
#include "toricstab/json_io.hpp"

namespace py = pybind11;
using namespace toricstab;

namespace {

// The python surface works on JSON strings for structured data; exact
// rationals stay strings end to end.

py::object to_py(const json& j) {
    py::module_ pyjson = py::module_::import("json");
    return pyjson.attr("loads")(j.dump());
}

json from_py_json(const std::string& text) { return json::parse(text); }

Workspace workspace_from_strings(const std::string& fan_json, const std::string& sheaf_json,
                                 const std::string& pol_json) {
    Workspace w;
    w.fan = fan_from_json(from_py_json(fan_json));
    if (!sheaf_json.empty()) w.sheaf = sheaf_from_json(from_py_json(sheaf_json), w.fan);
    if (!pol_json.empty()) w.polarisation = divisor_from_json(from_py_json(pol_json), w.fan);
    return w;
}

} // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "exact toric sheaf stability (C++ core)";

    py::register_exception<ToricError>(m, "ToricError");

    m.def("validate_fan", [](const std::string& fan_json) {
        return validate_fan(fan_from_json(from_py_json(fan_json)));
    });

    m.def("is_complete", [](const std::string& fan_json) {
        return is_complete(fan_from_json(from_py_json(fan_json)));
    });

    m.def("is_smooth", [](const std::string& fan_json) {
        return is_smooth(fan_from_json(from_py_json(fan_json)));
    });

    m.def("intersection_number",
          [](const std::string& fan_json, const std::vector<std::string>& divisor_jsons) {
              Fan f = fan_from_json(from_py_json(fan_json));
              std::vector<TDivisor<Rational>> divs;
              for (const std::string& d : divisor_jsons)
                  divs.push_back(divisor_from_json(from_py_json(d), f));
              return to_string(intersection_number(f, divs));
          });

    m.def("degree",
          [](const std::string& fan_json, const std::string& div_json, const std::string& pol_json,
             const std::string& eps_json) -> py::object {
              Fan f = fan_from_json(from_py_json(fan_json));
              TDivisor<Rational> d = divisor_from_json(from_py_json(div_json), f);
              TDivisor<Rational> l = divisor_from_json(from_py_json(pol_json), f);
              if (eps_json.empty()) return py::str(to_string(degree(f, d, l)));
              TDivisor<Rational> lp = divisor_from_json(from_py_json(eps_json), f);
              return to_py(poly_to_json(degree(f, lift(d), adiabatic_divisor(l, lp))));
          },
          py::arg("fan"), py::arg("div"), py::arg("pol"), py::arg("eps_div") = "");

    m.def("is_ample", [](const std::string& fan_json, const std::string& div_json) {
        Fan f = fan_from_json(from_py_json(fan_json));
        return is_ample(f, divisor_from_json(from_py_json(div_json), f));
    });

    m.def("slope",
          [](const std::string& fan_json, const std::string& sheaf_json,
             const std::string& pol_json, const std::string& eps_json) -> py::object {
              Workspace w = workspace_from_strings(fan_json, sheaf_json, pol_json);
              if (eps_json.empty()) return py::str(to_string(slope(w.fan, *w.sheaf, *w.polarisation)));
              TDivisor<Rational> lp = divisor_from_json(from_py_json(eps_json), w.fan);
              return to_py(poly_to_json(slope(w.fan, *w.sheaf, adiabatic_divisor(*w.polarisation, lp))));
          },
          py::arg("fan"), py::arg("sheaf"), py::arg("pol"), py::arg("eps_div") = "");

    m.def("tangent_sheaf", [](const std::string& fan_json) {
        Fan f = fan_from_json(from_py_json(fan_json));
        return sheaf_to_json(tangent_sheaf(f)).dump();
    });

    m.def("stability",
          [](const std::string& fan_json, const std::string& sheaf_json,
             const std::string& pol_json) {
              Workspace w = workspace_from_strings(fan_json, sheaf_json, pol_json);
              CandidateSet cands = candidate_subspaces(*w.sheaf);
              Verdict v = stability_verdict(w.fan, *w.sheaf, *w.polarisation, cands);
              return to_py(verdict_to_json(v));
          });

    m.def("blowup",
          [](const std::string& fan_json, const Cone& tau) {
              Fan f = fan_from_json(from_py_json(fan_json));
              BlowupContext b = make_blowup(f, tau);
              return py::make_tuple(fan_to_json(b.source).dump(), b.exceptional_ray);
          });

    m.def("pullback_blowup",
          [](const std::string& fan_json, const std::string& sheaf_json, const Cone& tau) {
              Fan f = fan_from_json(from_py_json(fan_json));
              EquivariantSheaf s = sheaf_from_json(from_py_json(sheaf_json), f);
              BlowupContext b = make_blowup(f, tau);
              EquivariantSheaf pulled = reflexive_pullback_blowup(b, s);
              return py::make_tuple(fan_to_json(b.source).dump(), sheaf_to_json(pulled).dump());
          });

    m.def("adiabatic",
          [](const std::string& fan_json, const std::string& sheaf_json, const std::string& pol_json,
             const std::vector<Cone>& taus, const std::string& eps_json) {
              Workspace w = workspace_from_strings(fan_json, sheaf_json, pol_json);
              AdiabaticSetup setup;
              setup.target = w.fan;
              setup.sheaf = *w.sheaf;
              setup.polarisation = *w.polarisation;
              setup.blowup_taus = taus;
              if (!eps_json.empty()) {
                  Fan source = taus.empty() ? w.fan : make_blowup_chain(w.fan, taus).final_fan();
                  setup.eps_divisor = divisor_from_json(from_py_json(eps_json), source);
              }
              return to_py(adiabatic_report_to_json(adiabatic_verdict(setup)));
          },
          py::arg("fan"), py::arg("sheaf"), py::arg("pol"),
          py::arg("blowup_taus") = std::vector<Cone>{}, py::arg("eps_div") = "");

    m.def("curve_criterion",
          [](const std::string& fan_json, const std::string& sheaf_json, const Cone& tau,
             const std::string& subspace_json) {
              Fan f = fan_from_json(from_py_json(fan_json));
              EquivariantSheaf s = sheaf_from_json(from_py_json(sheaf_json), f);
              Subspace sub = subspace_from_json(from_py_json(subspace_json), s.coord_dim);
              return to_string(curve_blowup_criterion(f, s, tau, sub));
          });

    m.def("fixture", [](const std::string& name) {
        return to_py(workspace_to_json(fixtures::load_fixture(name)));
    });

    m.def("fixture_names", [] { return fixtures::fixture_names(); });
}

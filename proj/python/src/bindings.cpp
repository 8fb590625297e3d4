#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <string>

#include "vva/analysis.hpp"
#include "vva/error.hpp"
#include "vva/io.hpp"

namespace py = pybind11;
using namespace vva;

namespace {

// Documents cross the boundary as JSON text; the Python layer parses them.
Instance parse_instance(const std::string& text, bool augment_zero) {
  const Json doc = Json::parse(text);
  ValidationOptions options;
  options.augment_zero = augment_zero || doc.value("augment_zero", false);
  return validate_instance(raw_instance_from_json(doc), options);
}

SolveOptions solve_options(const std::string& rule) {
  SolveOptions options;
  if (rule == "dantzig") {
    options.rule = PivotRule::Dantzig;
  } else if (rule != "bland") {
    throw Error(ErrorCode::ParseError, "unknown pivot rule " + rule);
  }
  return options;
}

Form parse_form(const std::string& form) {
  if (form == "ds") return Form::DS;
  if (form == "bic") return Form::Bayesian;
  throw Error(ErrorCode::ParseError, "unknown form " + form);
}

void BindInstances(py::module_& m) {
  m.def(
      "validate",
      [](const std::string& text, bool augment_zero) {
        const Instance inst = parse_instance(text, augment_zero);
        Json out = instance_to_json(inst);
        out["digest"] = inst.digest();
        return out.dump();
      },
      py::arg("instance"), py::arg("augment_zero") = false);
  m.def(
      "generate",
      [](std::size_t buyers, std::size_t items, std::size_t support_size, std::int64_t max_value,
         std::int64_t denominator, bool iid, bool correlated, std::uint64_t seed) {
        GenSpec spec;
        spec.buyers = buyers;
        spec.items = items;
        spec.support_size = support_size;
        spec.max_value = max_value;
        spec.value_denominator = denominator;
        spec.iid = iid;
        spec.correlated = correlated;
        return instance_to_json(gen_instance(spec, seed)).dump();
      },
      py::arg("buyers"), py::arg("items"), py::arg("support_size"), py::arg("max_value"), py::arg("denominator"),
      py::arg("iid"), py::arg("correlated"), py::arg("seed"));
}

void BindSolvers(py::module_& m) {
  m.def(
      "solve",
      [](const std::string& text, const std::string& form, bool augment_zero, const std::string& rule) {
        const Instance inst = parse_instance(text, augment_zero);
        if (parse_form(form) == Form::DS) return certificate_json(inst, solve_ds(inst, solve_options(rule))).dump();
        return certificate_json(inst, solve_bayes(inst, solve_options(rule))).dump();
      },
      py::arg("instance"), py::arg("form"), py::arg("augment_zero") = false, py::arg("rule") = "bland");
  m.def(
      "verify", [](const std::string& text) { return verify_certificate_json(Json::parse(text)).problems; },
      py::arg("certificate"));
  m.def(
      "srev",
      [](const std::string& text, bool augment_zero) { return to_string(srev(parse_instance(text, augment_zero))); },
      py::arg("instance"), py::arg("augment_zero") = false);
}

void BindAnalysis(py::module_& m) {
  m.def(
      "virtual_values",
      [](const std::string& text, const std::string& form, bool min_flow, bool augment_zero) {
        const Instance inst = parse_instance(text, augment_zero);
        VirtualValueTable table;
        VwmReport vwm;
        if (parse_form(form) == Form::DS) {
          const DsSolution s = solve_ds(inst);
          table = virtual_values_ds(inst, min_flow ? min_flow_regular_dual_ds(inst, s.cert.objective)
                                                   : regularize_ds(inst, s.mechanism, s.dual));
          vwm = check_vwm(inst, s.mechanism, table);
        } else {
          const BayesSolution s = solve_bayes(inst);
          table = virtual_values_bayes(inst, regularize_bayes(inst, s.mechanism, s.dual));
          vwm = check_vwm(inst, s.mechanism, table);
        }
        Json out = virtual_table_to_json(inst, table);
        out["vwm_violations"] = vwm.violations;
        out["ubvv_findings"] = check_ubvv(table, inst).findings;
        return out.dump();
      },
      py::arg("instance"), py::arg("form"), py::arg("min_flow") = false, py::arg("augment_zero") = false);
  m.def(
      "characterize",
      [](const std::string& text, bool augment_zero) {
        return report_to_json(characterize(parse_instance(text, augment_zero))).dump();
      },
      py::arg("instance"), py::arg("augment_zero") = false);
}

void BindOracles(py::module_& m) {
  m.def(
      "posted_price",
      [](const std::vector<std::string>& values, const std::vector<std::string>& probs) {
        Marginal marginal;
        for (const auto& v : values) marginal.values.push_back(parse_rational(v));
        for (const auto& p : probs) marginal.probs.push_back(parse_rational(p));
        return to_string(posted_price_revenue(marginal));
      },
      py::arg("values"), py::arg("probs"));
  m.def(
      "menu_grid",
      [](const std::string& text, std::size_t k, bool augment_zero) {
        return to_string(menu_grid_revenue(parse_instance(text, augment_zero), k));
      },
      py::arg("instance"), py::arg("k"), py::arg("augment_zero") = false);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Exact optimal-auction LPs, dual certificates and virtual values";
  static py::exception<Error> error(m, "VvaError");
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      // The message starts with the error code name.
      PyErr_SetString(error.ptr(), e.what());
    } catch (const Json::exception& e) {
      PyErr_SetString(PyExc_ValueError, e.what());
    }
  });
  BindInstances(m);
  BindSolvers(m);
  BindAnalysis(m);
  BindOracles(m);
}

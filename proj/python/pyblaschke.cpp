#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <complex>

#include "blaschke/inverse.hpp"
#include "blaschke/io.hpp"
#include "blaschke/thurston.hpp"
#include "blaschke/tracer.hpp"

namespace py = pybind11;
using namespace blaschke;

namespace {

ParameterPoint make_parameter(double eta0, double a1,
                              const std::vector<std::pair<double, double>>& poles) {
  std::vector<double> radii{a1};
  std::vector<double> etas{0.0};
  for (const auto& [r, eta] : poles) {
    radii.push_back(r);
    etas.push_back(eta);
  }
  return ParameterPoint(eta0, radii, etas);
}

KappaVector make_kappa(const std::vector<int>& kappa) {
  if (kappa.size() < 2) throw py::value_error("kappa must list k0 and k_1..k_m");
  return KappaVector(kappa[0], std::vector<int>(kappa.begin() + 1, kappa.end()));
}

py::dict profile_dict(const CriticalProfile& profile) {
  py::dict out;
  out["points"] = profile.points;
  out["values"] = profile.values_raw;
  out["normalized_points"] = profile.normalized_points();
  out["normalized_values"] = profile.normalized_values();
  out["is_max"] = profile.is_max;
  out["gauge_shift"] = profile.gauge_shift;
  return out;
}

py::dict result_dict(const IterationResult& r) {
  py::dict out;
  out["x"] = r.x;
  out["converged"] = r.converged;
  out["residual"] = r.residual;
  out["iterations"] = r.iterations;
  out["residual_history"] = r.residual_history;
  out["M_estimate"] = r.M_estimate;
  out["critical_values"] = r.v.v;
  if (r.mu.has_value()) {
    py::dict mu;
    mu["eta0"] = wrap_turn(r.mu->eta0());
    mu["a1"] = r.mu->a1();
    std::vector<std::pair<double, double>> poles;
    for (int j = 2; j <= r.mu->m(); ++j) poles.emplace_back(r.mu->r(j), wrap_turn(r.mu->eta(j)));
    mu["poles"] = poles;
    out["mu"] = mu;
  }
  return out;
}

}  // namespace

PYBIND11_MODULE(pyblaschke, m) {
  m.doc() = "Multimodal circle maps from Blaschke-type products";

  py::register_exception<Error>(m, "BlaschkeError");

  m.def(
      "eval_b",
      [](std::complex<double> z, double eta0, double a1,
         const std::vector<std::pair<double, double>>& poles, const std::vector<int>& kappa) {
        const SpherePoint w =
            eval_B(SpherePoint::finite(z), make_parameter(eta0, a1, poles), make_kappa(kappa));
        if (w.at_infinity) {
          const double inf = std::numeric_limits<double>::infinity();
          return std::complex<double>(inf, inf);
        }
        return w.z;
      },
      py::arg("z"), py::arg("eta0"), py::arg("a1"), py::arg("poles"), py::arg("kappa"),
      "Evaluate the Blaschke-type product; poles return complex infinity.");

  m.def(
      "lift",
      [](double t, double eta0, double a1, const std::vector<std::pair<double, double>>& poles,
         const std::vector<int>& kappa) {
        return lift_value(t, make_parameter(eta0, a1, poles), make_kappa(kappa));
      },
      py::arg("t"), py::arg("eta0"), py::arg("a1"), py::arg("poles"), py::arg("kappa"));

  m.def(
      "lift_prime",
      [](double t, double eta0, double a1, const std::vector<std::pair<double, double>>& poles,
         const std::vector<int>& kappa) {
        return lift_derivative(t, make_parameter(eta0, a1, poles), make_kappa(kappa));
      },
      py::arg("t"), py::arg("eta0"), py::arg("a1"), py::arg("poles"), py::arg("kappa"));

  m.def(
      "in_delta",
      [](double eta0, double a1, const std::vector<std::pair<double, double>>& poles,
         const std::vector<int>& kappa) {
        return is_in_Delta(make_parameter(eta0, a1, poles), make_kappa(kappa));
      },
      py::arg("eta0"), py::arg("a1"), py::arg("poles"), py::arg("kappa"));

  m.def(
      "critical_profile",
      [](double eta0, double a1, const std::vector<std::pair<double, double>>& poles,
         const std::vector<int>& kappa) {
        return profile_dict(
            find_critical_points(make_parameter(eta0, a1, poles), make_kappa(kappa)));
      },
      py::arg("eta0"), py::arg("a1"), py::arg("poles"), py::arg("kappa"),
      "Turning points, labels and normalized critical values.");

  m.def(
      "compute_type",
      [](const std::vector<double>& v) { return compute_type(TargetVector{v}).tau; },
      py::arg("critical_values"));

  m.def(
      "solve_model",
      [](const std::string& model_json, double tol, int max_iter) {
        const CombinatorialModel model = parse_model_json(model_json);
        const ValidationReport report = validate_model(model);
        if (!report.valid()) {
          std::string msg = "invalid model:";
          for (const Violation& v : report.violations) msg += " " + v.code + ";";
          throw py::value_error(msg);
        }
        return result_dict(iterate_to_fixed_point(model, std::nullopt, tol, max_iter));
      },
      py::arg("model_json"), py::arg("tol") = 1e-10, py::arg("max_iter") = 500,
      "Run the pull-back iteration for a combinatorial model document.");

  m.def(
      "validate_model",
      [](const std::string& model_json) {
        std::vector<std::pair<std::string, std::string>> out;
        const ValidationReport report = validate_model(parse_model_json(model_json));
        for (const Violation& v : report.violations) out.emplace_back(v.code, v.message);
        return out;
      },
      py::arg("model_json"),
      "Violation (code, message) pairs; empty means the model is valid.");

  m.def(
      "trace_curves",
      [](double eta0, double a1, const std::vector<std::pair<double, double>>& poles,
         const std::vector<int>& kappa) {
        const ParameterPoint mu = make_parameter(eta0, a1, poles);
        const KappaVector kv = make_kappa(kappa);
        const CriticalProfile profile = find_critical_points(mu, kv);
        std::vector<std::vector<std::complex<double>>> curves;
        for (int j = 1; j <= kv.m(); ++j)
          curves.push_back(trace_gamma(mu, kv, j, profile).polyline);
        return curves;
      },
      py::arg("eta0"), py::arg("a1"), py::arg("poles"), py::arg("kappa"),
      "Polylines of the level curves of |B| = 1 off the unit circle.");
}

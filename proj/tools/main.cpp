#include <cstdio>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "blaschke/io.hpp"
#include "blaschke/tracer.hpp"
#include "blaschke/verify.hpp"

namespace {

using namespace blaschke;

constexpr int kExitOk = 0;
constexpr int kExitValidation = 1;
constexpr int kExitNotConverged = 2;
constexpr int kExitOutsideDelta = 3;

int exit_code_for(const Error& e) {
  switch (e.code()) {
    case ErrorCode::NotMultimodal:
    case ErrorCode::DegenerateCritical:
      return kExitOutsideDelta;
    default:
      return kExitValidation;
  }
}

struct ParamFlags {
  double eta0 = 0.0;
  double a1 = 0.0;
  std::vector<int> kappa;
  std::vector<std::string> poles;  // "r,eta" for j = 2..m

  ParameterPoint parameter() const {
    std::vector<double> radii{a1};
    std::vector<double> etas{0.0};
    for (const std::string& spec : poles) {
      double r = 0.0, eta = 0.0;
      if (std::sscanf(spec.c_str(), "%lf,%lf", &r, &eta) != 2)
        raise(ErrorCode::InvalidArgument, "--pole expects 'r,eta', got '" + spec + "'");
      radii.push_back(r);
      etas.push_back(eta);
    }
    return ParameterPoint(eta0, radii, etas);
  }

  KappaVector kappa_vector() const {
    if (kappa.size() != poles.size() + 2)
      raise(ErrorCode::InvalidArgument, "--kappa must list k0 and one k_j per pole");
    return KappaVector(kappa[0], std::vector<int>(kappa.begin() + 1, kappa.end()));
  }
};

void add_param_flags(CLI::App* cmd, ParamFlags& flags) {
  cmd->add_option("--eta0", flags.eta0, "rotation angle eta_0 in turns");
  cmd->add_option("--a1", flags.a1, "first zero a_1 (real, > 1)")->required();
  cmd->add_option("--kappa", flags.kappa, "exponents k0 k1 ... km")->required()->expected(-2);
  cmd->add_option("--pole", flags.poles, "additional zero as 'r,eta' (repeat per pole)");
}

void emit(const std::string& output, const std::string& content) {
  if (output.empty() || output == "-")
    std::cout << content;
  else
    write_file(output, content);
}

int cmd_solve(const std::string& model_path, const std::string& output, double tol, int max_iter,
              bool tol_set, bool max_iter_set) {
  const CombinatorialModel model = load_model_file(model_path);
  const ValidationReport report = validate_model(model);
  if (!report.valid()) {
    for (const Violation& v : report.violations)
      std::cerr << "invalid model: " << v.code << ": " << v.message << "\n";
    return kExitValidation;
  }
  if (model.solver.has_value()) {
    if (!tol_set) tol = model.solver->tol;
    if (!max_iter_set) max_iter = model.solver->max_iter;
  }
  const IterationResult result = iterate_to_fixed_point(model, std::nullopt, tol, max_iter);
  emit(output, result_to_json(result, model));
  if (!result.converged) {
    std::cerr << "did not converge after " << result.iterations
              << " iterations; residual = " << result.residual << "\n";
    return kExitNotConverged;
  }
  return kExitOk;
}

int cmd_eval(const ParamFlags& flags, const std::string& output, const std::string& format) {
  const ParameterPoint mu = flags.parameter();
  const KappaVector kappa = flags.kappa_vector();
  // Report in the reference normalization (lift anchored at the first maximum
  // in [0,1)); the gap bounds are validated against the pole-paired labeling,
  // where gap j belongs with k_j.
  const PhiResult phi =
      compute_phi_full(mu, kappa, Anchor(first_max_position(mu, kappa)));
  const TypeVector type = compute_type(phi.v);
  gap_vector(find_critical_points(mu, kappa), kappa);
  std::vector<double> gaps;
  for (int j = 1; j <= kappa.m(); ++j)
    gaps.push_back(phi.v.v[static_cast<std::size_t>(2 * j - 2)] -
                   phi.v.v[static_cast<std::size_t>(2 * j - 1)]);
  const RiemannHurwitzReport rh =
      riemann_hurwitz_report(mu, kappa, Anchor(phi.profile.points[0]));

  std::ostringstream os;
  os.precision(12);
  if (format == "json") {
    os << "{\n  \"points\": [";
    for (std::size_t i = 0; i < phi.profile.points.size(); ++i)
      os << (i ? ", " : "") << phi.profile.points[i];
    os << "],\n  \"normalized_values\": [";
    for (std::size_t i = 0; i < phi.v.v.size(); ++i) os << (i ? ", " : "") << phi.v.v[i];
    os << "],\n  \"type\": [";
    for (std::size_t i = 0; i < type.tau.size(); ++i) os << (i ? ", " : "") << type.tau[i];
    os << "],\n  \"gaps\": [";
    for (std::size_t i = 0; i < gaps.size(); ++i) os << (i ? ", " : "") << gaps[i];
    os << "],\n  \"riemann_hurwitz\": {\"budget\": " << rh.off_circle_budget
       << ", \"residual\": " << rh.residual << ", \"observed\": " << rh.observed_circle_count
       << ", \"balanced\": " << (rh.balanced ? "true" : "false") << "}\n}\n";
  } else {
    os << "turning points (C_i, max/min, F(C_i) normalized):\n";
    for (std::size_t i = 0; i < phi.profile.points.size(); ++i)
      os << "  C_" << i + 1 << " = " << phi.profile.points[i] << "  "
         << (phi.profile.is_max[i] ? "max" : "min") << "  v = " << phi.v.v[i] << "\n";
    os << "type tau = (";
    for (std::size_t i = 0; i < type.tau.size(); ++i) os << (i ? ", " : "") << type.tau[i];
    os << ")\ngaps = (";
    for (std::size_t i = 0; i < gaps.size(); ++i) os << (i ? ", " : "") << gaps[i];
    os << ")\nRiemann-Hurwitz: budget " << rh.off_circle_budget << " + circle " << rh.residual
       << " = " << rh.two_dB_minus_2 << "; observed " << rh.observed_circle_count
       << (rh.balanced ? " (balanced)" : " (NOT balanced)") << "\n";
  }
  emit(output, os.str());
  return kExitOk;
}

int cmd_trace(const ParamFlags& flags, const std::string& output, const std::string& format) {
  const ParameterPoint mu = flags.parameter();
  const KappaVector kappa = flags.kappa_vector();
  const CriticalProfile profile = find_critical_points(mu, kappa);
  std::vector<TracedCurve> curves;
  for (int j = 1; j <= kappa.m(); ++j) curves.push_back(trace_gamma(mu, kappa, j, profile));
  emit(output, export_geometry(curves, profile,
                               format == "svg" ? GeometryFormat::Svg : GeometryFormat::Csv));
  return kExitOk;
}

int cmd_plot_lift(const ParamFlags& flags, const std::string& output, const std::string& format,
                  int samples) {
  const ParameterPoint mu = flags.parameter();
  const KappaVector kappa = flags.kappa_vector();
  emit(output, format == "svg" ? export_lift_svg(mu, kappa, samples)
                               : export_lift_csv(mu, kappa, samples));
  return kExitOk;
}

int cmd_verify(std::uint64_t seed, int samples, const std::string& output) {
  const VerifySummary summary = run_verification(seed, samples);
  emit(output, summary.to_json());
  return summary.all_pass ? kExitOk : kExitValidation;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Multimodal circle maps from Blaschke-type products"};
  app.require_subcommand(1);

  std::string model_path, output;
  std::string format = "csv";
  double tol = 1e-10;
  int max_iter = 500;
  int samples = 100;
  int lift_samples = 512;
  std::uint64_t seed = 1;

  CLI::App* solve = app.add_subcommand("solve", "realize a combinatorial model (Thurston iteration)");
  solve->add_option("--model", model_path, "model document (JSON)")->required();
  solve->add_option("--output", output, "result path ('-' for stdout)");
  CLI::Option* tol_opt = solve->add_option("--tol", tol, "convergence tolerance");
  CLI::Option* iter_opt = solve->add_option("--max-iter", max_iter, "iteration cap");

  ParamFlags eval_flags;
  CLI::App* eval = app.add_subcommand("eval", "critical profile, type, gaps, Riemann-Hurwitz");
  add_param_flags(eval, eval_flags);
  eval->add_option("--output", output);
  eval->add_option("--format", format)->check(CLI::IsMember({"text", "json"}));

  ParamFlags trace_flags;
  CLI::App* trace = app.add_subcommand("trace", "trace the curves of B^{-1}(S^1) off the circle");
  add_param_flags(trace, trace_flags);
  trace->add_option("--output", output);
  trace->add_option("--format", format)->check(CLI::IsMember({"csv", "svg"}));

  ParamFlags lift_flags;
  CLI::App* plot = app.add_subcommand("plot-lift", "emit samples of the normalized lift");
  add_param_flags(plot, lift_flags);
  plot->add_option("--output", output);
  plot->add_option("--format", format)->check(CLI::IsMember({"csv", "svg"}));
  plot->add_option("--samples", lift_samples, "sample count over one period");

  CLI::App* verify = app.add_subcommand("verify", "run the randomized property suites");
  verify->add_option("--seed", seed, "RNG seed");
  verify->add_option("--samples", samples, "samples per family");
  verify->add_option("--output", output);

  CLI11_PARSE(app, argc, argv);

  try {
    if (solve->parsed())
      return cmd_solve(model_path, output, tol, max_iter, tol_opt->count() > 0,
                       iter_opt->count() > 0);
    if (eval->parsed()) {
      if (format == "csv") format = "text";
      return cmd_eval(eval_flags, output, format);
    }
    if (trace->parsed()) return cmd_trace(trace_flags, output, format);
    if (plot->parsed()) return cmd_plot_lift(lift_flags, output, format, lift_samples);
    if (verify->parsed()) return cmd_verify(seed, samples, output);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code_for(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitValidation;
  }
  return kExitValidation;
}

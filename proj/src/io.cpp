#include "blaschke/io.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

namespace blaschke {

using nlohmann::json;

namespace {

std::vector<int> int_list(const json& j, const std::string& field) {
  if (!j.is_array()) raise(ErrorCode::IoError, "field '" + field + "' must be an array");
  std::vector<int> out;
  for (const auto& e : j) {
    if (!e.is_number_integer()) raise(ErrorCode::IoError, "field '" + field + "' must hold integers");
    out.push_back(e.get<int>());
  }
  return out;
}

std::vector<double> double_list(const json& j, const std::string& field) {
  if (!j.is_array()) raise(ErrorCode::IoError, "field '" + field + "' must be an array");
  std::vector<double> out;
  for (const auto& e : j) {
    if (!e.is_number()) raise(ErrorCode::IoError, "field '" + field + "' must hold numbers");
    out.push_back(e.get<double>());
  }
  return out;
}

}  // namespace

CombinatorialModel parse_model_json(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const std::exception& e) {
    raise(ErrorCode::IoError, std::string("model document is not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) raise(ErrorCode::IoError, "model document must be a JSON object");

  static const std::set<std::string> known = {
      "m", "d", "kappa", "tau", "k_count", "turning_indices",
      "integer_preimage_indices", "sigma", "x0", "solver"};
  for (const auto& [key, value] : doc.items()) {
    (void)value;
    if (!known.count(key)) raise(ErrorCode::IoError, "unknown model field '" + key + "'");
  }
  for (const char* required : {"m", "d", "kappa", "tau", "k_count", "turning_indices",
                               "integer_preimage_indices", "sigma"}) {
    if (!doc.contains(required))
      raise(ErrorCode::IoError, std::string("missing model field '") + required + "'");
  }

  CombinatorialModel model;
  if (!doc["m"].is_number_integer() || !doc["d"].is_number_integer() ||
      !doc["k_count"].is_number_integer())
    raise(ErrorCode::IoError, "m, d and k_count must be integers");
  model.m = doc["m"].get<int>();
  model.d = doc["d"].get<int>();
  model.k_count = doc["k_count"].get<int>();
  model.kappa = int_list(doc["kappa"], "kappa");
  model.tau = int_list(doc["tau"], "tau");
  model.turning = int_list(doc["turning_indices"], "turning_indices");
  model.integer_preimage = int_list(doc["integer_preimage_indices"], "integer_preimage_indices");
  model.sigma = int_list(doc["sigma"], "sigma");
  if (doc.contains("x0")) model.x0 = double_list(doc["x0"], "x0");
  if (doc.contains("solver")) {
    const json& s = doc["solver"];
    if (!s.is_object()) raise(ErrorCode::IoError, "solver block must be an object");
    static const std::set<std::string> solver_known = {"tol", "max_iter", "seed_radius"};
    for (const auto& [key, value] : s.items()) {
      (void)value;
      if (!solver_known.count(key))
        raise(ErrorCode::IoError, "unknown solver field '" + key + "'");
    }
    SolverOptions opts;
    if (s.contains("tol")) opts.tol = s["tol"].get<double>();
    if (s.contains("max_iter")) opts.max_iter = s["max_iter"].get<int>();
    if (s.contains("seed_radius")) opts.seed_radius = s["seed_radius"].get<double>();
    model.solver = opts;
  }
  return model;
}

CombinatorialModel load_model_file(const std::string& path) {
  return parse_model_json(read_file(path));
}

std::string model_to_json(const CombinatorialModel& model) {
  json doc;
  doc["m"] = model.m;
  doc["d"] = model.d;
  doc["kappa"] = model.kappa;
  doc["tau"] = model.tau;
  doc["k_count"] = model.k_count;
  doc["turning_indices"] = model.turning;
  doc["integer_preimage_indices"] = model.integer_preimage;
  doc["sigma"] = model.sigma;
  if (model.x0.has_value()) doc["x0"] = *model.x0;
  if (model.solver.has_value()) {
    doc["solver"] = {{"tol", model.solver->tol},
                     {"max_iter", model.solver->max_iter},
                     {"seed_radius", model.solver->seed_radius}};
  }
  return doc.dump(2) + "\n";
}

namespace {

json mu_to_json(const ParameterPoint& mu) {
  json out;
  out["eta0"] = wrap_turn(mu.eta0());
  out["a1"] = mu.a1();
  json poles = json::array();
  for (int j = 2; j <= mu.m(); ++j)
    poles.push_back({{"r", mu.r(j)}, {"eta", wrap_turn(mu.eta(j))}});
  out["poles"] = poles;
  return out;
}

ParameterPoint mu_from_json(const json& j) {
  std::vector<double> radii{j.at("a1").get<double>()};
  std::vector<double> etas{0.0};
  for (const auto& p : j.at("poles")) {
    radii.push_back(p.at("r").get<double>());
    etas.push_back(p.at("eta").get<double>());
  }
  return ParameterPoint(j.at("eta0").get<double>(), std::move(radii), std::move(etas));
}

}  // namespace

std::string result_to_json(const IterationResult& result, const CombinatorialModel& model) {
  json doc;
  doc["model"] = json::parse(model_to_json(model));
  doc["x"] = result.x;
  if (result.mu.has_value()) doc["mu"] = mu_to_json(*result.mu);
  doc["residual"] = result.residual;
  doc["last_step"] = result.last_step;
  doc["iterations"] = result.iterations;
  doc["converged"] = result.converged;
  doc["residual_history"] = result.residual_history;
  doc["step_history"] = result.step_history;
  doc["M_estimate"] = result.M_estimate;
  doc["max_pullback_residual"] = result.max_pullback_residual;
  doc["critical_values"] = result.v.v;
  return doc.dump(2) + "\n";
}

ParsedResult parse_result_json(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const std::exception& e) {
    raise(ErrorCode::IoError, std::string("result document is not valid JSON: ") + e.what());
  }
  ParsedResult out{doc.at("x").get<std::vector<double>>(), mu_from_json(doc.at("mu")),
                   doc.at("residual").get<double>(), doc.at("iterations").get<int>(),
                   doc.at("converged").get<bool>()};
  return out;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) raise(ErrorCode::IoError, "cannot open '" + path + "' for reading");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) raise(ErrorCode::IoError, "cannot open '" + path + "' for writing");
  out << content;
  if (!out) raise(ErrorCode::IoError, "failed writing '" + path + "'");
}

}  // namespace blaschke

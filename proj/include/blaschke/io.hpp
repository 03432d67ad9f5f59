#pragma once

#include <string>

#include "blaschke/model.hpp"
#include "blaschke/thurston.hpp"

namespace blaschke {

// Strict model document parsing: unknown fields are rejected, the parsed
// model must pass validate_model before use.
CombinatorialModel parse_model_json(const std::string& text);
CombinatorialModel load_model_file(const std::string& path);
std::string model_to_json(const CombinatorialModel& model);

// Result document for cmd_solve: final configuration and parameter, residual,
// iteration count and the per-iteration history.
std::string result_to_json(const IterationResult& result, const CombinatorialModel& model);

struct ParsedResult {
  std::vector<double> x;
  ParameterPoint mu;
  double residual = 0.0;
  int iterations = 0;
  bool converged = false;
};
ParsedResult parse_result_json(const std::string& text);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

}  // namespace blaschke

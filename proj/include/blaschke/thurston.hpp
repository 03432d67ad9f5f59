#pragma once

#include <optional>
#include <vector>

#include "blaschke/inverse.hpp"
#include "blaschke/model.hpp"

namespace blaschke {

// Warm-start data threaded between iterations: the previous parameter and the
// position of its first labeled maximum (labels stay coherent along the path).
struct WarmStart {
  std::optional<ParameterPoint> mu;
  Anchor anchor;
};

struct ApplyResult {
  std::vector<double> y;  // T(x), strictly increasing with y_1 = 0
  ParameterPoint mu;
  CriticalProfile profile;
  SolveStats solve_stats;
  double pullback_residual = 0.0;  // max |F_hat(y_i) - target_i| over the solves
};

// One application of the Thurston pull-back operator: realize the critical
// values resolved from x, then pull every marked point back through the
// normalized lift along its prescribed branch.
ApplyResult apply_T(const std::vector<double>& x, const CombinatorialModel& model,
                    const WarmStart& warm = {});

// max_i circledist(F_hat(x_i) mod 1, x_{sigma(i)}); zero exactly at a fixed
// point of T.
double fixed_point_residual(const std::vector<double>& x, const ParameterPoint& mu,
                            const CombinatorialModel& model,
                            const CriticalProfile* profile = nullptr);

struct IterationResult {
  std::vector<double> x;
  std::optional<ParameterPoint> mu;
  double residual = 0.0;       // fixed-point residual at the final iterate
  double last_step = 0.0;      // sup-norm of the final update
  int iterations = 0;
  std::vector<double> residual_history;
  std::vector<double> step_history;
  bool converged = false;
  double M_estimate = 0.0;     // empirical sup of |F'|, |F''| along the run
  double max_pullback_residual = 0.0;
  TargetVector v;              // critical values at the final iterate
};

// Iterate x <- T(x) with warm-started parameter solves until the residual or
// the step sup-norm drops under tol.  Defaults: equally spaced start,
// tol 1e-10, 500 iterations.
IterationResult iterate_to_fixed_point(const CombinatorialModel& model,
                                       const std::optional<std::vector<double>>& x0 = std::nullopt,
                                       double tol = 1e-10, int max_iter = 500);

// W_epsilon membership: every gap (wrap included) satisfies
// x_{i+1} - x_i >= eps / c^{s(i)}.
bool w_epsilon_check(const std::vector<double>& x, double eps, const SVector& s, double c);

}  // namespace blaschke

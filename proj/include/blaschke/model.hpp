#pragma once

#include <optional>
#include <string>
#include <vector>

#include "blaschke/critical.hpp"

namespace blaschke {

struct SolverOptions {
  double tol = 1e-10;
  int max_iter = 500;
  double seed_radius = 1.2;
};

// Target combinatorics of a post-critically finite 2m-multimodal circle map:
// k marked points z_1 < ... < z_k in [0,1), the turning indices among them
// (t_1 = 1, odd positions are maxima), optional marked integer preimages
// (sigma sends those to 1), the orbit map sigma, the type tau and an
// admissible kappa.
struct CombinatorialModel {
  int m = 0;
  int d = 0;
  std::vector<int> kappa;              // (k0, k1, ..., km)
  std::vector<int> tau;                // 2m-1 entries, sign (-1)^j
  int k_count = 0;                     // number of marked points
  std::vector<int> turning;            // 1-based indices, sorted, first = 1
  std::vector<int> integer_preimage;   // 1-based indices, sorted, may be empty
  std::vector<int> sigma;              // size k_count, 1-based values
  std::optional<std::vector<double>> x0;
  std::optional<SolverOptions> solver;

  KappaVector kappa_vector() const;  // throws if kappa is malformed
  bool is_turning(int index) const;
  bool is_integer_preimage(int index) const;
  // Branch position p in 1..2m with t_p <= index < t_{p+1} (cyclic).
  int branch_of(int index) const;
};

struct Violation {
  std::string code;
  std::string message;
};

struct ValidationReport {
  std::vector<Violation> violations;
  bool valid() const { return violations.empty(); }
};

// Structural checks (index ranges, tau signs, kappa above tau, degree
// relation), loop detection through the s-indices, and a feasibility dry run
// of the pull-back planner on the canonical equally spaced configuration
// (which checks that sigma-images can be placed monotonically on each branch).
ValidationReport validate_model(const CombinatorialModel& model);

// s(r) for the cyclic arcs [z_r, z_{r+1}]: least iterate whose image contains
// a turning point; 0 iff an endpoint is turning.  Throws InvalidCombinatorics
// when some arc never reaches one (a periodic non-turning interval).
struct SVector {
  std::vector<int> s;
};
SVector compute_s_indices(const CombinatorialModel& model);

struct OrbifoldReport {
  bool hyperbolic = false;
  double chi_bound = 0.0;  // upper bound on the orbifold Euler characteristic
  int punctures = 0;       // 0, infinity, and periodic turning orbits
  int finite_order_points = 0;
};
OrbifoldReport orbifold_report(const CombinatorialModel& model);
bool orbifold_hyperbolicity_check(const CombinatorialModel& model);

// Turn marked positions into the critical-value vector: v_i = x_{sigma(t_i)}
// plus the unique integer offsets realizing tau (gauge v_1 in [0,1)).  The
// gap over branch j has length |tau_j| + frac where frac is the wrapped
// class difference; exactly |tau_j| when the classes coincide (integer-length
// boundary convention).
TargetVector resolve_offsets(const std::vector<double>& x, const CombinatorialModel& model);

// Value targets for every marked point given positions x and the resolved
// critical values v: turning indices carry v, integer-preimage indices carry
// the branch's integer crossings (counted against v; a marked branch must
// mark all of them), remaining indices carry x_{sigma(i)} + n with n placed in
// the sub-window between neighboring special values.
struct PullbackPlan {
  std::vector<double> target;  // size k_count
  std::vector<int> branch;     // branch position of each marked index
};
PullbackPlan plan_pullback_targets(const std::vector<double>& x,
                                   const CombinatorialModel& model, const TargetVector& v,
                                   bool strict_interior = false);

// W membership: 0 = x_1 < x_2 < ... < x_k < 1.
void check_in_W(const std::vector<double>& x, int k_count);

}  // namespace blaschke

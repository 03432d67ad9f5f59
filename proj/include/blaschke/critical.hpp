#pragma once

#include <optional>
#include <vector>

#include "blaschke/family.hpp"

namespace blaschke {

// Critical-value vector in the normalized gauge (v_1 in [0,1)).  Membership in
// the polytope V means: (-1)^i (v_{i+1} - v_i) > 0, 0 < v_{2j-1} - v_{2j} < k_j,
// and v_{2m} < v_1 + d.
struct TargetVector {
  std::vector<double> v;

  int m() const { return static_cast<int>(v.size()) / 2; }
  bool in_V(const KappaVector& kappa, std::string* why = nullptr) const;
};

// Type vector tau = (tau_1, ..., tau_{2m-1}); tau_j carries the sign (-1)^j.
struct TypeVector {
  std::vector<int> tau;
  bool operator==(const TypeVector& o) const { return tau == o.tau; }
};

// The 2m turning points of the lift, labeled cyclically with C_1 the maximum
// paired with a_1 (the curve of B^{-1}(S^1) through C_1, C_2 encloses a_1).
// points are strictly increasing with points[0] in [0,1) and
// points[2m-1] < points[0] + 1; odd 1-based indices are maxima.
struct CriticalProfile {
  int m = 0;
  std::vector<double> points;      // C_i (raw lift coordinates)
  std::vector<double> values_raw;  // F(C_i) for the canonical lift
  std::vector<bool> is_max;        // alternates true/false starting at index 0
  int gauge_shift = 0;             // q with F(C_1) - C_1 - q in [0,1)

  double c1() const { return points.front(); }
  // C_i - C_1 (so the first entry is exactly 0).
  std::vector<double> normalized_points() const;
  // F(C_i) - C_1 - gauge_shift; first entry lies in [0,1).
  std::vector<double> normalized_values() const;
  // Pole index j (1-based) paired with critical index i (1-based): (2j-1, 2j).
  static int pole_of_index(int i) { return (i + 1) / 2; }
};

// Labeling hint: position of C_1 from a previous profile along a continuation
// path.  Without it the labeling is anchored cold (straddle rule at seed-like
// parameters, level-curve trace otherwise).
using Anchor = std::optional<double>;

// True iff F' has exactly 2m transversal sign changes per period.
bool is_in_Delta(const ParameterPoint& mu, const KappaVector& kappa);

// Locate and label the 2m turning points.  Throws NotMultimodal when the sign
// change count is wrong and DegenerateCritical when |F''| at a root falls
// under 1e-9 * (1 + max|F'|).
CriticalProfile find_critical_points(const ParameterPoint& mu, const KappaVector& kappa,
                                     const Anchor& anchor = std::nullopt);

// Distinct angles with a common radius close to 1 give a 2m-multimodal map;
// starts at start_radius and halves the excess r - 1 until is_in_Delta holds.
ParameterPoint seed_parameters(int m, const KappaVector& kappa,
                               const std::vector<double>& eta_guesses,
                               double start_radius = 1.2);

// Position of the first local maximum of the lift in [0,1).  The pull-back
// iteration normalizes its lift at this point; the default profile labeling
// instead anchors C_1 to the curve enclosing a_1.
double first_max_position(const ParameterPoint& mu, const KappaVector& kappa);

struct PhiResult {
  TargetVector v;              // normalized critical values, v_1 in [0,1)
  CriticalProfile profile;
};

// phi(mu) = (F(C_1), ..., F(C_2m)) normalized: C_1 subtracted and the gauge
// integer removed so that v_1 lands in [0,1).
PhiResult compute_phi_full(const ParameterPoint& mu, const KappaVector& kappa,
                           const Anchor& anchor = std::nullopt);
TargetVector compute_phi(const ParameterPoint& mu, const KappaVector& kappa,
                         const Anchor& anchor = std::nullopt);

// tau_j = (-1)^j * count(L_j) with L_j = |v_{j+1} - v_j|; count is floor(L)
// except within 1e-9 of an integer, where the integer itself is taken (gaps of
// exactly integer length occur at genuine fixed-point data).
TypeVector compute_type(const TargetVector& v);

struct RiemannHurwitzReport {
  int off_circle_budget = 0;  // 2(k0-1) + 2 sum (k_j - 1)
  int two_dB_minus_2 = 0;
  int residual = 0;           // always 2m
  int observed_circle_count = 0;
  bool balanced = false;      // residual == observed == 2m
};

RiemannHurwitzReport riemann_hurwitz_report(const ParameterPoint& mu, const KappaVector& kappa,
                                            const Anchor& anchor = std::nullopt);

// g_j = v_{2j-1} - v_{2j}; throws GapViolation unless 0 < g_j < k_j for all j.
std::vector<double> gap_vector(const CriticalProfile& profile, const KappaVector& kappa);

// Grid used for scanning F' (also reused as the M_tau sampling grid).
int scan_grid_size(const KappaVector& kappa);

}  // namespace blaschke

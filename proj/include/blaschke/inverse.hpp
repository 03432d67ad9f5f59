#pragma once

#include <vector>

#include "blaschke/critical.hpp"

namespace blaschke {

// Dense real matrix, row-major; 2m x 2m in the coordinate order
// (eta0, a1, r2, eta2, ..., rm, etam).
struct Matrix {
  int n = 0;
  std::vector<double> a;

  explicit Matrix(int size = 0) : n(size), a(static_cast<std::size_t>(size * size), 0.0) {}
  double& at(int i, int j) { return a[static_cast<std::size_t>(i * n + j)]; }
  double at(int i, int j) const { return a[static_cast<std::size_t>(i * n + j)]; }
};

// Solve A x = b by LU with partial pivoting; returns the determinant through
// det (may be null).  Throws InvalidArgument on singular systems.
std::vector<double> solve_linear(Matrix A, std::vector<double> b, double* det = nullptr);

// Normalized critical values without the integer gauge removed,
// (F(C_i) - C_1)_i; continuous in mu, used for finite differences and the
// continuation residual.
std::vector<double> phi_raw(const ParameterPoint& mu, const KappaVector& kappa,
                            const Anchor& anchor = std::nullopt);

// Analytic Jacobian of the normalized phi, assembled from the closed-form
// derivatives of the lift with the envelope simplification F'(C_i) = 0.
// With normalized = false the rank-one correction (columns dC_1/dmu_l) is not
// subtracted; the raw first column is identically 1.
Matrix jacobian_phi(const ParameterPoint& mu, const CriticalProfile& profile,
                    const KappaVector& kappa, bool normalized = true);

// Central finite differences of phi_raw (step 1e-6); accurate because
// F'(C_i) = 0 removes the sensitivity to the critical-point motion.
Matrix jacobian_phi_fd(const ParameterPoint& mu, const KappaVector& kappa,
                       const Anchor& anchor, double step = 1e-6);

// Closed-form determinant of the Cauchy matrix (1/(c_i - b_l)) with
// b = (a_1, 1/a_1, a_2, 1/conj(a_2), ...):
//   prod_{i<j} (c_j - c_i)(b_i - b_j) / prod_{i,l} (c_i - b_l).
Complex cauchy_determinant(const CriticalProfile& profile, const ParameterPoint& mu);

// |det| divided by the Hadamard bound (product of the row 2-norms of the
// Cauchy matrix); lies in (0, 1] and serves as a nondegeneracy certificate.
double cauchy_certificate(const CriticalProfile& profile, const ParameterPoint& mu);

struct SolveStats {
  int continuation_steps = 0;
  int newton_iterations = 0;
  double min_cauchy_certificate = 1.0;
  double final_residual = 0.0;
  double last_s = 0.0;
};

struct SolveResult {
  ParameterPoint mu;
  CriticalProfile profile;  // profile at the solution (anchored along the path)
  SolveStats stats;
};

// Invert phi by straight-line continuation in V (V is cut out by linear
// inequalities, hence convex) with damped Newton correction; step halving on
// corrector failure, doubling after two consecutive successes, cap 0.25.
SolveResult solve_phi_inverse(const TargetVector& v_target, const ParameterPoint& seed,
                              const KappaVector& kappa, double tol = 1e-12,
                              const Anchor& seed_anchor = std::nullopt);

}  // namespace blaschke

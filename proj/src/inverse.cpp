#include "blaschke/inverse.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace blaschke {

std::vector<double> solve_linear(Matrix A, std::vector<double> b, double* det) {
  const int n = A.n;
  double d = 1.0;
  std::vector<int> piv(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) piv[static_cast<std::size_t>(i)] = i;

  for (int col = 0; col < n; ++col) {
    int best = col;
    for (int row = col + 1; row < n; ++row)
      if (std::fabs(A.at(row, col)) > std::fabs(A.at(best, col))) best = row;
    if (A.at(best, col) == 0.0)
      raise(ErrorCode::InvalidArgument, "singular linear system");
    if (best != col) {
      for (int j = 0; j < n; ++j) std::swap(A.at(best, j), A.at(col, j));
      std::swap(b[static_cast<std::size_t>(best)], b[static_cast<std::size_t>(col)]);
      d = -d;
    }
    d *= A.at(col, col);
    for (int row = col + 1; row < n; ++row) {
      const double f = A.at(row, col) / A.at(col, col);
      A.at(row, col) = 0.0;
      for (int j = col + 1; j < n; ++j) A.at(row, j) -= f * A.at(col, j);
      b[static_cast<std::size_t>(row)] -= f * b[static_cast<std::size_t>(col)];
    }
  }
  std::vector<double> x(static_cast<std::size_t>(n), 0.0);
  for (int row = n - 1; row >= 0; --row) {
    double s = b[static_cast<std::size_t>(row)];
    for (int j = row + 1; j < n; ++j) s -= A.at(row, j) * x[static_cast<std::size_t>(j)];
    x[static_cast<std::size_t>(row)] = s / A.at(row, row);
  }
  if (det) *det = d;
  return x;
}

std::vector<double> phi_raw(const ParameterPoint& mu, const KappaVector& kappa,
                            const Anchor& anchor) {
  const CriticalProfile profile = find_critical_points(mu, kappa, anchor);
  std::vector<double> out(profile.values_raw.size());
  for (std::size_t i = 0; i < out.size(); ++i)
    out[i] = profile.values_raw[i] - profile.points[0];
  return out;
}

namespace {

Complex unit_point(double t) { return Complex{std::cos(kTau * t), std::sin(kTau * t)}; }

// d F / d mu_l at fixed t; columns in the order (eta0, a1, r2, eta2, ...).
std::vector<double> lift_param_gradient(double t, const ParameterPoint& mu,
                                        const KappaVector& kappa) {
  const int m = kappa.m();
  const Complex z = unit_point(t);
  std::vector<double> g(static_cast<std::size_t>(2 * m), 0.0);
  g[0] = 1.0;  // dF/deta0
  {
    const Complex w = 1.0 / (z - mu.pole(1));
    g[1] = -(kappa.k(1) / (kTau / 2.0)) * w.imag();  // dF/da1 = -(k1/pi) Im 1/(z-a1)
  }
  for (int j = 2; j <= m; ++j) {
    const Complex aj = mu.pole(j);
    const Complex w = aj / (z - aj);
    g[static_cast<std::size_t>(2 * j - 2)] = -(kappa.k(j) / (kTau / 2.0)) * w.imag() / mu.r(j);
    g[static_cast<std::size_t>(2 * j - 1)] = -2.0 * kappa.k(j) * w.real();
  }
  return g;
}

// d F' / d mu_l at fixed t (eta0 contributes nothing).
std::vector<double> lift_derivative_param_gradient(double t, const ParameterPoint& mu,
                                                   const KappaVector& kappa) {
  const int m = kappa.m();
  std::vector<double> g(static_cast<std::size_t>(2 * m), 0.0);
  for (int j = 1; j <= m; ++j) {
    const double rj = mu.r(j);
    const double cosv = std::cos(kTau * (t - mu.eta(j)));
    const double sinv = std::sin(kTau * (t - mu.eta(j)));
    const double D = 1.0 + rj * rj - 2.0 * rj * cosv;
    const double dFp_dr =
        -kappa.k(j) * (2.0 * rj * D - (rj * rj - 1.0) * (2.0 * rj - 2.0 * cosv)) / (D * D);
    const double dFp_deta =
        -2.0 * kTau * kappa.k(j) * rj * (rj * rj - 1.0) * sinv / (D * D);
    if (j == 1) {
      g[1] = dFp_dr;
    } else {
      g[static_cast<std::size_t>(2 * j - 2)] = dFp_dr;
      g[static_cast<std::size_t>(2 * j - 1)] = dFp_deta;
    }
  }
  return g;
}

}  // namespace

Matrix jacobian_phi(const ParameterPoint& mu, const CriticalProfile& profile,
                    const KappaVector& kappa, bool normalized) {
  const int n = 2 * kappa.m();
  Matrix J(n);
  for (int i = 0; i < n; ++i) {
    const auto row = lift_param_gradient(profile.points[static_cast<std::size_t>(i)], mu, kappa);
    for (int l = 0; l < n; ++l) J.at(i, l) = row[static_cast<std::size_t>(l)];
  }
  if (normalized) {
    // dC_1/dmu_l from F'(C_1) = 0 by implicit differentiation; the rank-one
    // subtraction does not change the determinant because the raw first
    // column is constant.
    const double c1 = profile.points[0];
    const double f2 = lift_second_derivative(c1, mu, kappa);
    const auto dFp = lift_derivative_param_gradient(c1, mu, kappa);
    for (int l = 0; l < n; ++l) {
      const double dC1 = -dFp[static_cast<std::size_t>(l)] / f2;
      for (int i = 0; i < n; ++i) J.at(i, l) -= dC1;
    }
  }
  return J;
}

Matrix jacobian_phi_fd(const ParameterPoint& mu, const KappaVector& kappa,
                       const Anchor& anchor, double step) {
  const std::vector<double> base = mu.to_vector();
  const int n = static_cast<int>(base.size());
  const Anchor warm = anchor.has_value()
                          ? anchor
                          : Anchor(find_critical_points(mu, kappa, anchor).points[0]);
  Matrix J(n);
  for (int l = 0; l < n; ++l) {
    std::vector<double> hi = base, lo = base;
    hi[static_cast<std::size_t>(l)] += step;
    lo[static_cast<std::size_t>(l)] -= step;
    const auto fhi = phi_raw(ParameterPoint::from_vector(hi), kappa, warm);
    const auto flo = phi_raw(ParameterPoint::from_vector(lo), kappa, warm);
    for (int i = 0; i < n; ++i)
      J.at(i, l) = (fhi[static_cast<std::size_t>(i)] - flo[static_cast<std::size_t>(i)]) /
                   (2.0 * step);
  }
  return J;
}

namespace {

std::vector<Complex> cauchy_nodes(const CriticalProfile& profile) {
  std::vector<Complex> c;
  for (double t : profile.points) c.push_back(unit_point(t));
  return c;
}

std::vector<Complex> cauchy_poles(const ParameterPoint& mu) {
  std::vector<Complex> b;
  for (int j = 1; j <= mu.m(); ++j) {
    const Complex aj = mu.pole(j);
    b.push_back(aj);
    b.push_back(1.0 / std::conj(aj));
  }
  return b;
}

}  // namespace

Complex cauchy_determinant(const CriticalProfile& profile, const ParameterPoint& mu) {
  // det(1/(c_i - b_l)) = prod_{i<j}(c_j - c_i)(b_i - b_j) / prod_{i,l}(c_i - b_l).
  const auto c = cauchy_nodes(profile);
  const auto b = cauchy_poles(mu);
  const std::size_t n = c.size();
  Complex num{1.0, 0.0};
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) num *= (c[j] - c[i]) * (b[i] - b[j]);
  Complex den{1.0, 0.0};
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) den *= (c[i] - b[j]);
  return num / den;
}

double cauchy_certificate(const CriticalProfile& profile, const ParameterPoint& mu) {
  const auto c = cauchy_nodes(profile);
  const auto b = cauchy_poles(mu);
  const std::size_t n = c.size();
  double hadamard = 1.0;
  for (std::size_t i = 0; i < n; ++i) {
    double row2 = 0.0;
    for (std::size_t j = 0; j < n; ++j) row2 += std::norm(1.0 / (c[i] - b[j]));
    hadamard *= std::sqrt(row2);
  }
  return std::abs(cauchy_determinant(profile, mu)) / hadamard;
}

namespace {

double sup_norm(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s = std::max(s, std::fabs(x));
  return s;
}

struct CorrectorState {
  std::vector<double> mu_vec;
  CriticalProfile profile;
  std::vector<double> raw;  // phi_raw at mu
};

bool radii_admissible(const std::vector<double>& mu_vec) {
  const int m = static_cast<int>(mu_vec.size()) / 2;
  if (!(mu_vec[1] > 1.0 + 1e-9)) return false;
  for (int j = 2; j <= m; ++j)
    if (!(mu_vec[static_cast<std::size_t>(2 * j - 2)] > 1.0 + 1e-9)) return false;
  return true;
}

}  // namespace

SolveResult solve_phi_inverse(const TargetVector& v_target, const ParameterPoint& seed,
                              const KappaVector& kappa, double tol, const Anchor& seed_anchor) {
  std::string why;
  if (!v_target.in_V(kappa, &why))
    raise(ErrorCode::TargetOutsideV, "target violates the V inequalities: " + why);

  const int n = 2 * kappa.m();

  CorrectorState cur;
  cur.mu_vec = seed.to_vector();
  cur.profile = find_critical_points(seed, kappa, seed_anchor);
  cur.raw.resize(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i)
    cur.raw[static_cast<std::size_t>(i)] =
        cur.profile.values_raw[static_cast<std::size_t>(i)] - cur.profile.points[0];

  // The integer gauge is pinned once from the seed and tracked along the whole
  // path: v(s)_1 stays in [0,1), so no jump can occur.
  const int gauge = cur.profile.gauge_shift;
  std::vector<double> v0(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) v0[static_cast<std::size_t>(i)] = cur.raw[static_cast<std::size_t>(i)] - gauge;

  SolveStats stats;
  stats.min_cauchy_certificate = cauchy_certificate(cur.profile, seed);

  auto residual_at = [&](const std::vector<double>& raw, double s) {
    std::vector<double> r(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
      const double vs = (1.0 - s) * v0[static_cast<std::size_t>(i)] +
                        s * v_target.v[static_cast<std::size_t>(i)];
      r[static_cast<std::size_t>(i)] = raw[static_cast<std::size_t>(i)] - gauge - vs;
    }
    return r;
  };

  // Damped Newton corrector at homotopy parameter s.  Returns false (leaving
  // `cur` untouched) when it diverges or drifts out of Delta.
  auto correct = [&](double s, double ctol) -> bool {
    CorrectorState trial = cur;
    std::vector<double> res = residual_at(trial.raw, s);
    double rnorm = sup_norm(res);
    for (int it = 0; it < 8; ++it) {
      if (rnorm <= ctol) {
        cur = trial;
        return true;
      }
      Matrix J = jacobian_phi_fd(ParameterPoint::from_vector(trial.mu_vec), kappa,
                                 Anchor(trial.profile.points[0]));
      std::vector<double> rhs(res.size());
      for (std::size_t i = 0; i < res.size(); ++i) rhs[i] = -res[i];
      std::vector<double> delta;
      try {
        delta = solve_linear(J, rhs);
      } catch (const Error&) {
        return false;
      }
      ++stats.newton_iterations;

      bool advanced = false;
      double damp = 1.0;
      for (int half = 0; half < 6 && !advanced; ++half, damp *= 0.5) {
        std::vector<double> cand = trial.mu_vec;
        for (std::size_t i = 0; i < cand.size(); ++i) cand[i] += damp * delta[i];
        if (!radii_admissible(cand)) continue;
        try {
          const ParameterPoint mu_cand = ParameterPoint::from_vector(cand);
          CriticalProfile prof =
              find_critical_points(mu_cand, kappa, Anchor(trial.profile.points[0]));
          std::vector<double> raw(static_cast<std::size_t>(n));
          for (int i = 0; i < n; ++i)
            raw[static_cast<std::size_t>(i)] =
                prof.values_raw[static_cast<std::size_t>(i)] - prof.points[0];
          const std::vector<double> res_cand = residual_at(raw, s);
          const double rnorm_cand = sup_norm(res_cand);
          if (rnorm_cand < rnorm || rnorm_cand <= ctol) {
            trial.mu_vec = std::move(cand);
            trial.profile = std::move(prof);
            trial.raw = std::move(raw);
            res = res_cand;
            rnorm = rnorm_cand;
            advanced = true;
          }
        } catch (const Error&) {
          // out of Delta or degenerate; damp further
        }
      }
      if (!advanced) return false;
    }
    if (rnorm <= ctol) {
      cur = trial;
      return true;
    }
    return false;
  };

  const double ctol = std::max(tol, 1e-12);
  double s = 0.0;
  double ds = 0.1;
  int successes = 0;
  while (s < 1.0) {
    const double s_next = std::min(1.0, s + ds);
    if (correct(s_next, ctol)) {
      s = s_next;
      stats.last_s = s;
      ++stats.continuation_steps;
      stats.min_cauchy_certificate =
          std::min(stats.min_cauchy_certificate,
                   cauchy_certificate(cur.profile, ParameterPoint::from_vector(cur.mu_vec)));
      if (++successes >= 2) ds = std::min(2.0 * ds, 0.25);
    } else {
      successes = 0;
      ds *= 0.5;
      if (ds < 1e-12) {
        std::ostringstream os;
        os << "continuation stalled at s = " << s;
        raise(ErrorCode::ContinuationStall, os.str());
      }
    }
  }

  stats.final_residual = sup_norm(residual_at(cur.raw, 1.0));
  SolveResult out{ParameterPoint::from_vector(cur.mu_vec), std::move(cur.profile), stats};
  return out;
}

}  // namespace blaschke

#include "blaschke/thurston.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace blaschke {

namespace {

// Normalized, gauge-fixed lift: F_hat(t) = F(t + C_1) - C_1 - gauge, so that
// F_hat(C~_i) equals the resolved critical values.
double lift_hat(double t, const ParameterPoint& mu, const KappaVector& kappa,
                const CriticalProfile& profile) {
  return lift_value(t + profile.c1(), mu, kappa) - profile.c1() - profile.gauge_shift;
}

// Solve F_hat(y) = target on the monotone branch [lo, hi] by bisection with a
// Newton polish.
double solve_on_branch(double lo, double hi, double target, const ParameterPoint& mu,
                       const KappaVector& kappa, const CriticalProfile& profile) {
  double flo = lift_hat(lo, mu, kappa, profile) - target;
  double fhi = lift_hat(hi, mu, kappa, profile) - target;
  // Targets resolved onto a window endpoint land on the endpoint itself.
  if (std::fabs(flo) < 1e-11) return lo;
  if (std::fabs(fhi) < 1e-11) return hi;
  if (flo * fhi > 0.0) {
    // Targets sit inside the branch window by construction; landing here means
    // the plan and the realized lift disagree.
    std::ostringstream os;
    os << "target " << target << " outside the branch value window (" << flo + target << ", "
       << fhi + target << ")";
    raise(ErrorCode::BranchMismatch, os.str());
  }
  double a = lo, b = hi, fa = flo;
  for (int it = 0; it < 60 && b - a > 1e-15; ++it) {
    const double mid = 0.5 * (a + b);
    const double fm = lift_hat(mid, mu, kappa, profile) - target;
    if ((fm < 0.0) == (fa < 0.0)) {
      a = mid;
      fa = fm;
    } else {
      b = mid;
    }
  }
  double y = 0.5 * (a + b);
  for (int it = 0; it < 3; ++it) {
    const double f = lift_hat(y, mu, kappa, profile) - target;
    const double d = lift_derivative(y + profile.c1(), mu, kappa);
    if (d == 0.0) break;
    const double step = f / d;
    if (!std::isfinite(step) || std::fabs(step) > (hi - lo)) break;
    const double y_new = y - step;
    if (y_new < lo || y_new > hi) break;
    y = y_new;
  }
  return y;
}

double grid_derivative_bound(const ParameterPoint& mu, const KappaVector& kappa) {
  const int n = 512;
  double bound = 0.0;
  for (int i = 0; i < n; ++i) {
    const double t = static_cast<double>(i) / n;
    bound = std::max(bound, std::fabs(lift_derivative(t, mu, kappa)));
    bound = std::max(bound, std::fabs(lift_second_derivative(t, mu, kappa)));
  }
  return bound;
}

}  // namespace

ApplyResult apply_T(const std::vector<double>& x, const CombinatorialModel& model,
                    const WarmStart& warm) {
  const KappaVector kappa = model.kappa_vector();
  check_in_W(x, model.k_count);
  const TargetVector v = resolve_offsets(x, model);
  const PullbackPlan plan = plan_pullback_targets(x, model, v);

  ParameterPoint seed = [&]() {
    if (warm.mu.has_value()) return *warm.mu;
    // Seed angles at the positions of the odd turning indices (the maxima).
    std::vector<double> guesses;
    for (int j = 0; j < model.m; ++j)
      guesses.push_back(x[static_cast<std::size_t>(model.turning[static_cast<std::size_t>(2 * j)] - 1)]);
    const double r0 = model.solver.has_value() ? model.solver->seed_radius : 1.2;
    return seed_parameters(model.m, kappa, guesses, r0);
  }();

  // The chain anchors at the seed's first maximum in [0,1) (the reference
  // normalization of the lift) and is then carried by continuity.
  const Anchor chain_anchor =
      warm.mu.has_value() ? warm.anchor : Anchor(first_max_position(seed, kappa));
  SolveResult solved = solve_phi_inverse(v, seed, kappa, 1e-12, chain_anchor);

  const CriticalProfile& profile = solved.profile;
  const std::vector<double> cpts = profile.normalized_points();

  ApplyResult out{std::vector<double>(static_cast<std::size_t>(model.k_count), 0.0),
                  solved.mu, profile, solved.stats, 0.0};

  const int m2 = 2 * model.m;
  for (int p = 1; p <= m2; ++p)
    out.y[static_cast<std::size_t>(model.turning[static_cast<std::size_t>(p - 1)] - 1)] =
        cpts[static_cast<std::size_t>(p - 1)];

  for (int p = 1; p <= m2; ++p) {
    const bool wrap = p == m2;
    const int t_start = model.turning[static_cast<std::size_t>(p - 1)];
    const int i_end = wrap ? model.k_count : model.turning[static_cast<std::size_t>(p)] - 1;
    const double lo = cpts[static_cast<std::size_t>(p - 1)];
    const double hi = wrap ? 1.0 : cpts[static_cast<std::size_t>(p)];
    for (int i = t_start + 1; i <= i_end; ++i) {
      const double target = plan.target[static_cast<std::size_t>(i - 1)];
      const double y = solve_on_branch(lo, hi, target, solved.mu, kappa, profile);
      out.y[static_cast<std::size_t>(i - 1)] = y;
      out.pullback_residual = std::max(
          out.pullback_residual, std::fabs(lift_hat(y, solved.mu, kappa, profile) - target));
    }
  }

  if (out.y[0] != 0.0)
    raise(ErrorCode::DegenerateConfiguration, "pulled-back configuration lost y_1 = 0");
  for (std::size_t i = 1; i < out.y.size(); ++i) {
    if (!(out.y[i] > out.y[i - 1]))
      raise(ErrorCode::DegenerateConfiguration,
            "pulled-back configuration is not strictly increasing");
  }
  if (!(out.y.back() < 1.0))
    raise(ErrorCode::DegenerateConfiguration, "pulled-back configuration left [0,1)");
  return out;
}

double fixed_point_residual(const std::vector<double>& x, const ParameterPoint& mu,
                            const CombinatorialModel& model, const CriticalProfile* profile) {
  if (static_cast<int>(x.size()) != model.k_count)
    raise(ErrorCode::InvalidArgument, "configuration size differs from k_count");
  const KappaVector kappa = model.kappa_vector();
  CriticalProfile local;
  if (!profile) {
    // The configuration coordinates are relative to the lift normalized at
    // the first maximum in [0,1); anchor the same way.
    local = find_critical_points(mu, kappa, Anchor(first_max_position(mu, kappa)));
    profile = &local;
  }
  double res = 0.0;
  for (int i = 1; i <= model.k_count; ++i) {
    const double fx =
        wrap_turn(lift_value(x[static_cast<std::size_t>(i - 1)] + profile->c1(), mu, kappa) -
                  profile->c1());
    const double want = x[static_cast<std::size_t>(model.sigma[static_cast<std::size_t>(i - 1)] - 1)];
    res = std::max(res, circle_dist(fx, want));
  }
  return res;
}

IterationResult iterate_to_fixed_point(const CombinatorialModel& model,
                                       const std::optional<std::vector<double>>& x0, double tol,
                                       int max_iter) {
  IterationResult result;
  std::vector<double> x;
  if (x0.has_value()) {
    x = *x0;
  } else if (model.x0.has_value()) {
    x = *model.x0;
  } else {
    x.resize(static_cast<std::size_t>(model.k_count));
    for (int i = 0; i < model.k_count; ++i)
      x[static_cast<std::size_t>(i)] = static_cast<double>(i) / model.k_count;
  }
  check_in_W(x, model.k_count);
  const KappaVector kappa = model.kappa_vector();

  WarmStart warm;
  for (int it = 1; it <= max_iter; ++it) {
    ApplyResult step = apply_T(x, model, warm);
    result.iterations = it;
    result.max_pullback_residual = std::max(result.max_pullback_residual, step.pullback_residual);
    result.M_estimate = std::max(result.M_estimate, grid_derivative_bound(step.mu, kappa));

    double sup_step = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i)
      sup_step = std::max(sup_step, std::fabs(step.y[i] - x[i]));
    const double res = fixed_point_residual(step.y, step.mu, model, &step.profile);

    result.step_history.push_back(sup_step);
    result.residual_history.push_back(res);
    result.last_step = sup_step;
    result.residual = res;

    x = step.y;
    warm.mu = step.mu;
    warm.anchor = step.profile.c1();
    result.mu = step.mu;
    result.v = resolve_offsets(x, model);

    if (std::min(res, sup_step) < tol) {
      result.converged = true;
      break;
    }
  }
  result.x = x;
  return result;
}

bool w_epsilon_check(const std::vector<double>& x, double eps, const SVector& s, double c) {
  if (!(eps > 0.0) || !(c > 1.0))
    raise(ErrorCode::InvalidArgument, "need eps > 0 and c > 1");
  const std::size_t k = x.size();
  if (s.s.size() != k)
    raise(ErrorCode::InvalidArgument, "s-vector size must match the configuration");
  for (std::size_t i = 0; i + 1 < k; ++i) {
    const double gap = x[i + 1] - x[i];
    if (gap < eps / std::pow(c, s.s[i])) return false;
  }
  const double wrap_gap = x[0] + 1.0 - x[k - 1];
  return wrap_gap >= eps / std::pow(c, s.s[k - 1]);
}

}  // namespace blaschke

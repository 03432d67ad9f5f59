#include <doctest.h>

#include <cmath>

#include "blaschke/thurston.hpp"
#include "helpers.hpp"

using namespace blaschke;
using namespace blaschke::testing;

namespace {

// Random configuration in W with a floor on all gaps (wrap included).
std::vector<double> random_config(Rng& rng, int k, double min_gap) {
  std::vector<double> gaps(static_cast<std::size_t>(k));
  double total = 0.0;
  for (double& g : gaps) {
    g = min_gap + rng.uniform();
    total += g;
  }
  std::vector<double> x(static_cast<std::size_t>(k), 0.0);
  double acc = 0.0;
  for (int i = 1; i < k; ++i) {
    acc += gaps[static_cast<std::size_t>(i - 1)] / total;
    x[static_cast<std::size_t>(i)] = acc;
  }
  return x;
}

}  // namespace

TEST_SUITE("thurston") {

TEST_CASE("apply_T fixes the reference model configuration") {
  const std::vector<double> x{0.0, 0.03427, 0.13811, 0.39748, 0.53431};
  const ApplyResult r = apply_T(x, reference_model(), {});
  for (std::size_t i = 0; i < x.size(); ++i) CHECK(std::fabs(r.y[i] - x[i]) < 1e-4);
  CHECK(std::fabs(wrap_turn(r.mu.eta0()) - 0.69690) < 5e-4);
  CHECK(std::fabs(r.mu.a1() - 1.31911) < 5e-4);
  CHECK(std::fabs(r.mu.r(2) - 1.33310) < 5e-4);
  CHECK(circle_dist(r.mu.eta(2), 0.60207) < 5e-4);
  CHECK(r.pullback_residual <= 1e-9);
}

TEST_CASE("apply_T keeps the ordering and the pull-back identity") {
  Rng rng(97);
  const CombinatorialModel model = reference_model();
  const KappaVector kappa = model.kappa_vector();
  WarmStart warm;
  for (int trial = 0; trial < 8; ++trial) {
    const std::vector<double> x = random_config(rng, model.k_count, 0.02);
    const ApplyResult r = apply_T(x, model, warm);
    CHECK(r.y[0] == 0.0);
    for (std::size_t i = 1; i < r.y.size(); ++i) CHECK(r.y[i] > r.y[i - 1]);
    CHECK(r.y.back() < 1.0);
    CHECK(r.pullback_residual <= 1e-9);

    // Defining identity, checked directly through the raw lift: the image of
    // each pulled-back point hits the prescribed class mod 1.
    const double c1 = r.profile.c1();
    for (int i = 1; i <= model.k_count; ++i) {
      const double fy =
          wrap_turn(lift_value(r.y[static_cast<std::size_t>(i - 1)] + c1, r.mu, kappa) - c1);
      const double want = x[static_cast<std::size_t>(model.sigma[static_cast<std::size_t>(i - 1)] - 1)];
      CHECK(circle_dist(fy, want) <= 1e-9);
    }
    // Realized critical values carry the model's type at every iterate, and
    // the critical gaps stay strictly inside (0, k_j).
    CHECK(compute_type(resolve_offsets(x, model)).tau == model.tau);
    const auto gaps = gap_vector(r.profile, kappa);
    for (int j = 1; j <= model.m; ++j) {
      CHECK(gaps[static_cast<std::size_t>(j - 1)] > 0.0);
      CHECK(gaps[static_cast<std::size_t>(j - 1)] < kappa.k(j));
    }
    warm.mu = r.mu;
    warm.anchor = r.profile.c1();
  }
}

TEST_CASE("iteration converges to the reference fixed point") {
  const IterationResult result = iterate_to_fixed_point(reference_model(), std::nullopt, 1e-10, 200);
  REQUIRE(result.converged);
  CHECK(result.residual <= 1e-8);
  const std::vector<double> expected{0.0, 0.03427, 0.13811, 0.39748, 0.53431};
  for (std::size_t i = 0; i < expected.size(); ++i)
    CHECK(std::fabs(result.x[i] - expected[i]) <= 2e-4);
  REQUIRE(result.mu.has_value());
  CHECK(std::fabs(wrap_turn(result.mu->eta0()) - 0.69690) <= 5e-4);
  CHECK(std::fabs(result.mu->a1() - 1.31911) <= 5e-4);
  CHECK(std::fabs(result.mu->r(2) - 1.33310) <= 5e-4);
  CHECK(circle_dist(result.mu->eta(2), 0.60207) <= 5e-4);
  CHECK(result.max_pullback_residual <= 1e-9);

  // Residual history decreases monotonically after a short burn-in.
  const auto& h = result.residual_history;
  for (std::size_t i = 10; i + 1 < h.size(); ++i) CHECK(h[i + 1] < h[i]);

  // Starting at the fixed point converges immediately.
  const IterationResult again =
      iterate_to_fixed_point(reference_model(), result.x, 1e-10, 5);
  CHECK(again.converged);
  CHECK(again.iterations <= 2);
}

TEST_CASE("the realized circle map transports marked points per sigma") {
  // Ground truth through B itself, independent of the lift machinery: the
  // realized map must send each marked circle point onto its sigma-image.
  const CombinatorialModel model = reference_model();
  const IterationResult r = iterate_to_fixed_point(model, std::nullopt, 1e-11, 200);
  REQUIRE(r.converged);
  REQUIRE(r.mu.has_value());
  const KappaVector kappa = model.kappa_vector();
  const double c1 = first_max_position(*r.mu, kappa);
  for (int i = 1; i <= model.k_count; ++i) {
    const double t = r.x[static_cast<std::size_t>(i - 1)] + c1;
    const Complex z{std::cos(kTau * t), std::sin(kTau * t)};
    const Complex image = eval_B(SpherePoint::finite(z), *r.mu, kappa).z;
    const double t_want =
        r.x[static_cast<std::size_t>(model.sigma[static_cast<std::size_t>(i - 1)] - 1)] + c1;
    const Complex want{std::cos(kTau * t_want), std::sin(kTau * t_want)};
    CHECK(std::abs(image - want) <= 1e-8);
  }
}

TEST_CASE("a model-supplied starting configuration is honored") {
  const IterationResult first = iterate_to_fixed_point(reference_model(), std::nullopt, 1e-10, 200);
  REQUIRE(first.converged);
  CombinatorialModel model = reference_model();
  model.x0 = first.x;
  const IterationResult again = iterate_to_fixed_point(model, std::nullopt, 1e-10, 5);
  CHECK(again.converged);
  CHECK(again.iterations <= 2);
}

TEST_CASE("marked integer preimages are realized at integer lift values") {
  const CombinatorialModel model = reference_model_with_integer_preimage();
  const IterationResult result = iterate_to_fixed_point(model, std::nullopt, 1e-10, 200);
  REQUIRE(result.converged);
  REQUIRE(result.mu.has_value());
  // Same realization as the plain model.
  CHECK(std::fabs(result.mu->a1() - 1.31911) <= 5e-4);
  CHECK(std::fabs(result.mu->r(2) - 1.33310) <= 5e-4);
  // The marked preimage sits between the old z2 and z3 and maps to an integer.
  const KappaVector kappa = model.kappa_vector();
  const CriticalProfile profile = find_critical_points(
      *result.mu, kappa, Anchor(first_max_position(*result.mu, kappa)));
  const double f =
      lift_value(result.x[2] + profile.c1(), *result.mu, kappa) - profile.c1();
  CHECK(std::fabs(f - std::round(f)) <= 1e-9);
  CHECK(result.x[1] < result.x[2]);
  CHECK(result.x[2] < result.x[3]);
}

TEST_CASE("a period-two critical cycle is realized for m = 1") {
  // Both turning points on a superattracting 2-cycle: f(c1) = c2, f(c2) = c1.
  CombinatorialModel model;
  model.m = 1;
  model.d = 1;
  model.kappa = {4, 3};
  model.tau = {-1};
  model.k_count = 2;
  model.turning = {1, 2};
  model.integer_preimage = {};
  model.sigma = {2, 1};
  REQUIRE(validate_model(model).valid());

  const IterationResult r = iterate_to_fixed_point(model, std::nullopt, 1e-10, 200);
  REQUIRE(r.converged);
  CHECK(r.residual <= 1e-9);
  REQUIRE(r.mu.has_value());
  const KappaVector kappa = model.kappa_vector();
  CHECK(is_in_Delta(*r.mu, kappa));

  // The realized map swaps its turning points: check through the lift.
  const CriticalProfile profile =
      find_critical_points(*r.mu, kappa, Anchor(first_max_position(*r.mu, kappa)));
  const auto cpts = profile.normalized_points();
  CHECK(std::fabs(cpts[1] - r.x[1]) <= 1e-8);
  const double f_c1 = lift_value(profile.points[0], *r.mu, kappa) - profile.c1();
  const double f_c2 = lift_value(profile.points[1], *r.mu, kappa) - profile.c1();
  CHECK(circle_dist(wrap_turn(f_c1), r.x[1]) <= 1e-9);
  CHECK(circle_dist(wrap_turn(f_c2), 0.0) <= 1e-9);
}

TEST_CASE("fixed point residual reacts to perturbations") {
  const CombinatorialModel model = reference_model();
  const IterationResult result = iterate_to_fixed_point(model, std::nullopt, 1e-10, 200);
  REQUIRE(result.converged);
  REQUIRE(result.mu.has_value());
  CHECK(fixed_point_residual(result.x, *result.mu, model) <= 1e-8);

  std::vector<double> x = result.x;
  x[2] += 1e-3;
  CHECK(fixed_point_residual(x, *result.mu, model) >= 1e-6);
}

TEST_CASE("non-convergence is reported") {
  const IterationResult result = iterate_to_fixed_point(reference_model(), std::nullopt, 1e-10, 1);
  CHECK(!result.converged);
  CHECK(result.iterations == 1);
  CHECK(result.residual > 1e-10);
}

TEST_CASE("w_epsilon_check") {
  const SVector s{{0, 0, 0, 0, 0}};
  std::vector<double> x{0.0, 0.2, 0.4, 0.6, 0.8};
  CHECK(w_epsilon_check(x, 1e-4, s, 2.0));
  x[1] = 5e-5;  // one gap below eps / c^0
  CHECK(!w_epsilon_check(x, 1e-4, s, 2.0));
  // s weights relax the bound: gap >= eps / c^s(i)
  const SVector s2{{3, 0, 0, 0, 0}};
  CHECK(w_epsilon_check(x, 1e-4, s2, 2.0));
  CHECK_THROWS_AS(w_epsilon_check(x, -1.0, s, 2.0), Error);
}

TEST_CASE("T maps sampled W_eps configurations into W_eps") {
  const CombinatorialModel model = reference_model();
  const IterationResult fixed = iterate_to_fixed_point(model, std::nullopt, 1e-10, 200);
  REQUIRE(fixed.converged);
  const SVector s = compute_s_indices(model);
  const double eps = 1e-4;
  const double c = fixed.M_estimate;
  Rng rng(2024);
  WarmStart warm{fixed.mu, fixed.mu.has_value()
                               ? Anchor(first_max_position(*fixed.mu, model.kappa_vector()))
                               : Anchor{}};
  int checked = 0;
  for (int trial = 0; trial < 12; ++trial) {
    const std::vector<double> x = random_config(rng, model.k_count, 2e-3);
    if (!w_epsilon_check(x, eps, s, c)) continue;
    const ApplyResult r = apply_T(x, model, warm);
    CHECK(w_epsilon_check(r.y, eps, s, c));
    ++checked;
  }
  CHECK(checked >= 10);
}

}  // TEST_SUITE

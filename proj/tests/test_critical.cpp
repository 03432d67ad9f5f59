#include <doctest.h>

#include <cmath>

#include "blaschke/critical.hpp"
#include "blaschke/thurston.hpp"
#include "blaschke/verify.hpp"
#include "helpers.hpp"

using namespace blaschke;
using namespace blaschke::testing;

namespace {

// Test-only oracle: bracket all sign changes of F' on a dense grid and
// bisect, independent of the production scan/polish path.
std::vector<double> brute_force_roots(const ParameterPoint& mu, const KappaVector& kappa) {
  const int n = 20000;
  std::vector<double> roots;
  double prev = lift_derivative(0.0, mu, kappa);
  for (int i = 1; i <= n; ++i) {
    const double t = static_cast<double>(i) / n;
    const double cur = lift_derivative(t, mu, kappa);
    if ((prev < 0.0) != (cur < 0.0)) {
      double lo = static_cast<double>(i - 1) / n, hi = t;
      for (int it = 0; it < 60; ++it) {
        const double mid = 0.5 * (lo + hi);
        if ((lift_derivative(mid, mu, kappa) < 0.0) == (prev < 0.0))
          lo = mid;
        else
          hi = mid;
      }
      roots.push_back(0.5 * (lo + hi));
    }
    prev = cur;
  }
  return roots;
}

}  // namespace

TEST_SUITE("critical") {

TEST_CASE("m=1 closed-form turning points") {
  const KappaVector kappa = m1_kappa();
  const ParameterPoint mu = m1_mu();
  // F' = 0 iff 2(5 - 4cos 2pi t) = 3, i.e. cos 2pi t = 7/8.
  const double theta = std::acos(7.0 / 8.0) / kTau;
  const CriticalProfile profile = find_critical_points(mu, kappa);
  REQUIRE(profile.points.size() == 2);
  CHECK(profile.points[0] == doctest::Approx(1.0 - theta).epsilon(1e-10));
  CHECK(profile.points[1] == doctest::Approx(1.0 + theta).epsilon(1e-10));
  CHECK(profile.is_max[0]);
  CHECK(!profile.is_max[1]);

  const auto oracle = brute_force_roots(mu, kappa);
  REQUIRE(oracle.size() == 2);
  CHECK(std::fabs(wrap_turn(profile.points[0]) - oracle[1]) < 1e-9);
  CHECK(std::fabs(wrap_turn(profile.points[1]) - oracle[0]) < 1e-9);
}

TEST_CASE("profile matches the brute-force scan on random draws") {
  Rng rng(71);
  for (const FamilySpec& family : standard_families()) {
    const KappaVector kappa = family.kappa_vector();
    for (int i = 0; i < 5; ++i) {
      const ParameterPoint mu = sample_mu_in_delta(family, rng);
      const CriticalProfile profile = find_critical_points(mu, kappa);
      const auto oracle = brute_force_roots(mu, kappa);
      REQUIRE(static_cast<int>(oracle.size()) == 2 * family.m);
      for (double p : profile.points) {
        double best = 1.0;
        for (double r : oracle) best = std::min(best, circle_dist(p, r));
        CHECK(best < 1e-9);
      }
    }
  }
}

TEST_CASE("is_in_Delta for the m=1 family has boundary a1 = 3") {
  const KappaVector kappa = m1_kappa();
  // F'(0) = 2 - (a+1)/(a-1) < 0 iff a < 3.
  CHECK(is_in_Delta(m1_mu(2.0), kappa));
  CHECK(is_in_Delta(m1_mu(2.9), kappa));
  CHECK(!is_in_Delta(m1_mu(3.1), kappa));
  CHECK(!is_in_Delta(m1_mu(10.0), kappa));  // monotone circle map
  CHECK_THROWS_AS(find_critical_points(m1_mu(10.0), kappa), Error);
}

TEST_CASE("seed_parameters lands in Delta") {
  CHECK(is_in_Delta(seed_parameters(1, m1_kappa(), {0.0}), m1_kappa()));
  const KappaVector k733(7, {3, 3});
  CHECK(is_in_Delta(seed_parameters(2, k733, {0.0, 0.5}), k733));
  const KappaVector k8322(8, {3, 2, 2});
  CHECK(is_in_Delta(seed_parameters(3, k8322, {0.0, 1.0 / 3.0, 2.0 / 3.0}), k8322));
  CHECK_THROWS_AS(seed_parameters(2, k733, {0.0, 0.0}), Error);
}

TEST_CASE("compute_phi at the reference parameters") {
  const ParameterPoint mu = reference_mu();
  const KappaVector kappa(7, {3, 3});

  // Anchored at the first maximum in [0,1) (the pull-back normalization):
  // v = (z3, z3 - 1, z2, -1), the known values (z3+1, z3, z2+1, 0) shifted
  // down by one.
  const TargetVector v =
      compute_phi(mu, kappa, Anchor(first_max_position(mu, kappa)));
  CHECK(std::fabs(v.v[0] - 0.13811) < 5e-4);
  CHECK(std::fabs(v.v[1] + 0.86189) < 5e-4);
  CHECK(std::fabs(v.v[2] - 0.03427) < 5e-4);
  CHECK(std::fabs(v.v[3] + 1.0) < 5e-4);
  CHECK(v.in_V(kappa));

  // The default labeling anchors C_1 on the curve enclosing a_1, which at
  // these parameters is the other maximum; the reading is the same data
  // rotated by one critical pair.
  const TargetVector v_gamma = compute_phi(mu, kappa);
  CHECK(v_gamma.in_V(kappa));
  const TypeVector t_gamma = compute_type(v_gamma);
  CHECK(t_gamma.tau == std::vector<int>{-1, 2, 0});
}

TEST_CASE("type at the realized fixed point is the reference type") {
  // The 5-digit rounded parameters sit a hair off the type boundary (the
  // first gap is 0.99998 there); at the full-precision fixed point the gap is
  // exactly 1 and the integer-tie convention counts it.
  const CombinatorialModel model = reference_model();
  const IterationResult r = iterate_to_fixed_point(model, std::nullopt, 1e-12, 200);
  REQUIRE(r.converged);
  REQUIRE(r.mu.has_value());
  const KappaVector kappa = model.kappa_vector();
  const TargetVector v =
      compute_phi(*r.mu, kappa, Anchor(first_max_position(*r.mu, kappa)));
  CHECK(compute_type(v).tau == std::vector<int>{-1, 0, -1});
}

TEST_CASE("compute_phi is gauge independent") {
  // Shifting eta0 by a whole turn shifts the raw lift by an integer and must
  // not change the normalized output.
  const KappaVector kappa(7, {3, 3});
  const ParameterPoint mu = reference_mu();
  const ParameterPoint mu_shift(0.69690 + 3.0, {1.31911, 1.33310}, {0.0, 0.60207});
  const TargetVector a = compute_phi(mu, kappa);
  const TargetVector b = compute_phi(mu_shift, kappa);
  for (std::size_t i = 0; i < a.v.size(); ++i) CHECK(std::fabs(a.v[i] - b.v[i]) < 1e-10);
}

TEST_CASE("compute_type examples") {
  CHECK(compute_type(TargetVector{{1.13811, 0.13811, 1.03427, 0.0}}).tau ==
        std::vector<int>{-1, 0, -1});
  CHECK(compute_type(TargetVector{{0.5, 0.2, 0.7, 0.1}}).tau == std::vector<int>{0, 0, 0});
  CHECK(compute_type(TargetVector{{2.0, 0.0, 1.5, 0.2}}).tau == std::vector<int>{-2, 1, -1});
  CHECK_THROWS_AS(compute_type(TargetVector{{0.1, 0.5, 0.7, 0.2}}), Error);
}

TEST_CASE("riemann_hurwitz budgets") {
  const KappaVector k733(7, {3, 3});
  const RiemannHurwitzReport rep =
      riemann_hurwitz_report(reference_mu(), k733);
  CHECK(rep.off_circle_budget == 20);
  CHECK(rep.two_dB_minus_2 == 24);
  CHECK(rep.residual == 4);
  CHECK(rep.observed_circle_count == 4);
  CHECK(rep.balanced);

  const RiemannHurwitzReport rep1 = riemann_hurwitz_report(m1_mu(), m1_kappa());
  CHECK(rep1.residual == 2);
  CHECK(rep1.balanced);
}

TEST_CASE("gap lemma on the m=1 family with a direct-lift oracle") {
  const KappaVector kappa = m1_kappa();
  const ParameterPoint mu = m1_mu();
  const CriticalProfile profile = find_critical_points(mu, kappa);
  const auto gaps = gap_vector(profile, kappa);
  REQUIRE(gaps.size() == 1);
  CHECK(gaps[0] > 0.0);
  CHECK(gaps[0] < 1.0);
  // Oracle: evaluate the lift at the closed-form turning points directly.
  const double theta = std::acos(7.0 / 8.0) / kTau;
  const double direct =
      lift_value(1.0 - theta, mu, kappa) - lift_value(1.0 + theta, mu, kappa);
  CHECK(gaps[0] == doctest::Approx(direct).epsilon(1e-10));
}

TEST_CASE("gap lemma holds strictly on sampled parameters") {
  Rng rng(301);
  for (const FamilySpec& family : standard_families()) {
    const KappaVector kappa = family.kappa_vector();
    for (int i = 0; i < 10; ++i) {
      const ParameterPoint mu = sample_mu_in_delta(family, rng);
      const CriticalProfile profile = find_critical_points(mu, kappa);
      const auto gaps = gap_vector(profile, kappa);
      for (int j = 1; j <= family.m; ++j) {
        CHECK(gaps[static_cast<std::size_t>(j - 1)] > 0.0);
        CHECK(gaps[static_cast<std::size_t>(j - 1)] < kappa.k(j));
      }
    }
  }
}

TEST_CASE("reference model gaps at the fixed-point parameters") {
  const ParameterPoint mu = reference_mu();
  const KappaVector kappa(7, {3, 3});
  const CriticalProfile profile =
      find_critical_points(mu, kappa, Anchor(first_max_position(mu, kappa)));
  const auto gaps = gap_vector(profile, kappa);
  CHECK(std::fabs(gaps[0] - 1.0) < 5e-4);
  CHECK(std::fabs(gaps[1] - 1.03427) < 5e-4);
}

TEST_CASE("labels are stable along small parameter moves") {
  // compute_type(compute_phi(mu)) stays constant along a short path in the
  // interior of Delta_tau when profiles are anchored by continuity.  (The
  // reference parameters themselves sit on a type boundary: one gap is
  // exactly an integer there, so the path starts from a generic seed.)
  const KappaVector kappa(7, {3, 3});
  const ParameterPoint base = seed_parameters(2, kappa, {0.0, 0.5});
  Anchor anchor(find_critical_points(base, kappa).points[0]);
  const TypeVector type = compute_type(compute_phi(base, kappa, anchor));
  for (int step = 1; step <= 10; ++step) {
    const double s = 0.004 * step;
    const ParameterPoint mu(0.3 * s, {base.a1() + s, base.r(2) + 0.5 * s}, {0.0, 0.5 + 0.6 * s});
    const PhiResult phi = compute_phi_full(mu, kappa, anchor);
    anchor = phi.profile.points[0];
    CHECK(compute_type(phi.v).tau == type.tau);
  }
}

}  // TEST_SUITE

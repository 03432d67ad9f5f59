#include <doctest.h>

#include <cmath>

#include "blaschke/model.hpp"
#include "helpers.hpp"

using namespace blaschke;
using namespace blaschke::testing;

namespace {

bool has_violation(const ValidationReport& rep, const std::string& code) {
  for (const Violation& v : rep.violations)
    if (v.code == code) return true;
  return false;
}

}  // namespace

TEST_SUITE("model") {

TEST_CASE("reference model is valid") {
  const ValidationReport rep = validate_model(reference_model());
  for (const Violation& v : rep.violations) MESSAGE(v.code, ": ", v.message);
  CHECK(rep.valid());
  CHECK(validate_model(reference_model_with_integer_preimage()).valid());
}

TEST_CASE("kappa below tau is rejected") {
  CombinatorialModel model = reference_model();
  model.kappa = {5, 2, 2};  // k_1 = 2 < -tau_1 + 2 = 3
  const ValidationReport rep = validate_model(model);
  CHECK(has_violation(rep, "KappaNotAboveTau"));
}

TEST_CASE("single-field corruptions are rejected") {
  auto corrupt = [](auto mutate) {
    CombinatorialModel model = reference_model();
    mutate(model);
    return validate_model(model);
  };
  CHECK(!corrupt([](CombinatorialModel& m) { m.m = 3; }).valid());
  CHECK(!corrupt([](CombinatorialModel& m) { m.d = 2; }).valid());
  CHECK(!corrupt([](CombinatorialModel& m) { m.kappa[1] = 2; }).valid());
  CHECK(!corrupt([](CombinatorialModel& m) { m.tau[1] = -1; }).valid());
  CHECK(!corrupt([](CombinatorialModel& m) { m.k_count = 6; }).valid());
  CHECK(!corrupt([](CombinatorialModel& m) { m.turning = {2, 3, 4, 5}; }).valid());
  CHECK(!corrupt([](CombinatorialModel& m) { m.integer_preimage = {2}; }).valid());
  CHECK(!corrupt([](CombinatorialModel& m) { m.sigma[4] = 6; }).valid());
  // sigma(2) -> 3 keeps every index invariant intact but is infeasible: the
  // image class equals both endpoint classes of a gap of length exactly 1.
  const ValidationReport rep =
      corrupt([](CombinatorialModel& m) { m.sigma[1] = 3; });
  CHECK(has_violation(rep, "BranchInfeasible"));
}

TEST_CASE("non-turning periodic arc loop is rejected via s-indices") {
  // m = 1, k = 6: turning {1, 4}; two adjacent plain marks on each branch
  // with sigma exchanging the arcs [z2,z3] <-> [z5,z6] creates a periodic
  // pair of arcs never meeting a turning point.  Branch 1 is decreasing, so
  // image orientation reverses there: sigma(2) = 6, sigma(3) = 5.
  CombinatorialModel model;
  model.m = 1;
  model.d = 1;
  model.kappa = {4, 3};
  model.tau = {-1};
  model.k_count = 6;
  model.turning = {1, 4};
  model.integer_preimage = {};
  model.sigma = {4, 6, 5, 1, 2, 3};
  CHECK_THROWS_AS(compute_s_indices(model), Error);
  const ValidationReport rep = validate_model(model);
  CHECK(has_violation(rep, "InessentialOrPeriodicInterval"));
}

TEST_CASE("s-indices on the reference model are all zero") {
  const SVector s = compute_s_indices(reference_model());
  CHECK(s.s == std::vector<int>{0, 0, 0, 0, 0});
}

TEST_CASE("s-index descent property on a synthetic model") {
  // m = 1, k = 5: turning {1, 3}; arc [z4,z5] has no turning endpoint and
  // maps over [z1,z2] (turning endpoint z1), so s = 1 there.
  CombinatorialModel model;
  model.m = 1;
  model.d = 1;
  model.kappa = {4, 3};
  model.tau = {-1};
  model.k_count = 5;
  model.turning = {1, 3};
  model.integer_preimage = {};
  model.sigma = {3, 2, 1, 1, 2};
  const SVector s = compute_s_indices(model);
  CHECK(s.s[0] == 0);  // [z1,z2]
  CHECK(s.s[1] == 0);  // [z2,z3]
  CHECK(s.s[2] == 0);  // [z3,z4]
  CHECK(s.s[3] == 1);  // [z4,z5] -> [z1,z2]
  CHECK(s.s[4] == 0);  // wrap arc has endpoint z1
  // Descent: the image of arc 4 contains an arc with s = 0.
}

TEST_CASE("orbifold hyperbolicity") {
  CHECK(orbifold_hyperbolicity_check(reference_model()));
  const OrbifoldReport rep = orbifold_report(reference_model());
  CHECK(rep.chi_bound < 0.0);
  CHECK(rep.punctures >= 3);  // 0, infinity, and the periodic turning orbit of z3
  CHECK(orbifold_hyperbolicity_check(reference_model_with_integer_preimage()));
}

TEST_CASE("resolve_offsets reproduces the reference critical values") {
  const std::vector<double> x{0.0, 0.03427, 0.13811, 0.39748, 0.53431};
  const TargetVector v = resolve_offsets(x, reference_model());
  CHECK(v.v[0] == doctest::Approx(0.13811).epsilon(1e-12));
  CHECK(v.v[1] == doctest::Approx(0.13811 - 1.0).epsilon(1e-12));
  CHECK(v.v[2] == doctest::Approx(0.03427).epsilon(1e-12));
  CHECK(v.v[3] == doctest::Approx(-1.0).epsilon(1e-12));
  // Gap 1 is exactly 1: sigma maps both endpoints of branch 1 to the same
  // class (the integer-length boundary convention of the type count).
  CHECK(v.v[0] - v.v[1] == doctest::Approx(1.0));
  CHECK(compute_type(v).tau == reference_model().tau);
}

TEST_CASE("resolve_offsets zero-offset case") {
  // m = 1, turning {1, 2}, sigma = (2, 1), tau = (0): fractional parts
  // already alternate and all offsets vanish.
  CombinatorialModel model;
  model.m = 1;
  model.d = 1;
  model.kappa = {3, 2};
  model.tau = {0};
  model.k_count = 2;
  model.turning = {1, 2};
  model.integer_preimage = {};
  model.sigma = {2, 1};
  const TargetVector v = resolve_offsets({0.0, 0.4}, model);
  CHECK(v.v[0] == doctest::Approx(0.4));
  CHECK(v.v[1] == doctest::Approx(0.0));
  CHECK(compute_type(v).tau == std::vector<int>{0});
}

TEST_CASE("resolve_offsets degenerate tie with tau = 0") {
  // Same class on both endpoints of a gap that tau says has length < 1.
  CombinatorialModel model;
  model.m = 1;
  model.d = 1;
  model.kappa = {3, 2};
  model.tau = {0};
  model.k_count = 2;
  model.turning = {1, 2};
  model.integer_preimage = {};
  model.sigma = {2, 2};
  CHECK_THROWS_AS(resolve_offsets({0.0, 0.4}, model), Error);
}

TEST_CASE("resolve_offsets respects W preconditions") {
  const CombinatorialModel model = reference_model();
  CHECK_THROWS_AS(resolve_offsets({0.1, 0.2, 0.3, 0.4, 0.5}, model), Error);  // x1 != 0
  CHECK_THROWS_AS(resolve_offsets({0.0, 0.5, 0.3, 0.6, 0.7}, model), Error);  // not sorted
  CHECK_THROWS_AS(resolve_offsets({0.0, 0.2, 0.4, 0.6, 1.2}, model), Error);  // leaves [0,1)
}

TEST_CASE("pullback plan places the interior point of reference model") {
  const std::vector<double> x{0.0, 0.03427, 0.13811, 0.39748, 0.53431};
  const CombinatorialModel model = reference_model();
  const TargetVector v = resolve_offsets(x, model);
  const PullbackPlan plan = plan_pullback_targets(x, model, v);
  // Index 2 (the marked fixed point) sits on branch 1 with target x_2 itself.
  CHECK(plan.branch[1] == 1);
  CHECK(plan.target[1] == doctest::Approx(0.03427).epsilon(1e-12));
  // Turning indices carry the resolved critical values.
  CHECK(plan.target[0] == doctest::Approx(v.v[0]));
  CHECK(plan.target[2] == doctest::Approx(v.v[1]));
  CHECK(plan.target[3] == doctest::Approx(v.v[2]));
  CHECK(plan.target[4] == doctest::Approx(v.v[3]));
}

TEST_CASE("pullback plan assigns integer crossings to marked preimages") {
  const CombinatorialModel model = reference_model_with_integer_preimage();
  std::vector<double> x{0.0, 0.03, 0.08, 0.14, 0.4, 0.54};
  const TargetVector v = resolve_offsets(x, model);
  const PullbackPlan plan = plan_pullback_targets(x, model, v);
  // Branch 1 runs from v_1 = x_4 down to v_2 = x_4 - 1 and crosses exactly
  // the integer 0; the marked preimage (index 3) must take it.
  CHECK(plan.target[2] == doctest::Approx(0.0));
  // A second marked crossing on the same branch would be a mismatch.
  CombinatorialModel bad = model;
  bad.k_count = 7;
  bad.turning = {1, 5, 6, 7};
  bad.integer_preimage = {3, 4};
  bad.sigma = {5, 2, 1, 1, 5, 2, 1};
  std::vector<double> xbad{0.0, 0.03, 0.06, 0.09, 0.14, 0.4, 0.54};
  const TargetVector vbad = resolve_offsets(xbad, bad);
  CHECK_THROWS_AS(plan_pullback_targets(xbad, bad, vbad), Error);
}

}  // TEST_SUITE

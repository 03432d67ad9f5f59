#include "blaschke/model.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

namespace blaschke {

namespace {
constexpr double kTieTol = 1e-9;
constexpr double kEndpointTol = 1e-12;
}  // namespace

KappaVector CombinatorialModel::kappa_vector() const {
  if (kappa.size() < 2) raise(ErrorCode::InvalidArgument, "kappa must list k0 and k_1..k_m");
  return KappaVector(kappa[0], std::vector<int>(kappa.begin() + 1, kappa.end()));
}

bool CombinatorialModel::is_turning(int index) const {
  return std::find(turning.begin(), turning.end(), index) != turning.end();
}

bool CombinatorialModel::is_integer_preimage(int index) const {
  return std::find(integer_preimage.begin(), integer_preimage.end(), index) !=
         integer_preimage.end();
}

int CombinatorialModel::branch_of(int index) const {
  // t_p <= index < t_{p+1}; indices beyond t_{2m} belong to the wrap branch.
  int p = static_cast<int>(turning.size());
  for (std::size_t q = 0; q + 1 < turning.size(); ++q) {
    if (index >= turning[q] && index < turning[q + 1]) {
      p = static_cast<int>(q) + 1;
      break;
    }
  }
  return p;
}

SVector compute_s_indices(const CombinatorialModel& model) {
  const int k = model.k_count;
  const int INF = k + 1;
  std::vector<int> s(static_cast<std::size_t>(k), INF);

  auto next_index = [&](int i) { return i % k + 1; };

  for (int r = 1; r <= k; ++r) {
    if (model.is_turning(r) || model.is_turning(next_index(r)))
      s[static_cast<std::size_t>(r - 1)] = 0;
  }

  // Image of arc r under one step: the counterclockwise marked-point range
  // from u to w where (u, w) = (sigma(r), sigma(r+1)) on increasing branches
  // and swapped on decreasing ones.  Equal endpoints mean the values differ
  // by a full integer, so the image wraps the whole circle.
  auto covered_arcs = [&](int r, std::vector<int>& arcs) {
    arcs.clear();
    int u = model.sigma[static_cast<std::size_t>(r - 1)];
    int w = model.sigma[static_cast<std::size_t>(next_index(r) - 1)];
    const bool decreasing = model.branch_of(r) % 2 == 1;
    if (decreasing) std::swap(u, w);
    if (u == w) {
      for (int a = 1; a <= k; ++a) arcs.push_back(a);
      return;
    }
    for (int a = u; a != w; a = next_index(a)) arcs.push_back(a);
  };

  std::vector<int> arcs;
  for (int sweep = 0; sweep < k + 1; ++sweep) {
    bool changed = false;
    for (int r = 1; r <= k; ++r) {
      if (s[static_cast<std::size_t>(r - 1)] == 0) continue;
      covered_arcs(r, arcs);
      int best = INF;
      for (int a : arcs) best = std::min(best, s[static_cast<std::size_t>(a - 1)]);
      if (best != INF && best + 1 < s[static_cast<std::size_t>(r - 1)]) {
        s[static_cast<std::size_t>(r - 1)] = best + 1;
        changed = true;
      }
    }
    if (!changed) break;
  }
  for (int r = 1; r <= k; ++r) {
    if (s[static_cast<std::size_t>(r - 1)] >= INF) {
      std::ostringstream os;
      os << "arc " << r << " never maps over a turning point (periodic non-turning interval)";
      raise(ErrorCode::InvalidCombinatorics, os.str());
    }
  }
  return SVector{std::move(s)};
}

OrbifoldReport orbifoldreport_impl(const CombinatorialModel& model) {
  OrbifoldReport rep;
  rep.punctures = 2;  // 0 and infinity are fixed critical points: N = infinity

  // Forward orbits of the turning indices under sigma.  Cycles met along the
  // way are punctures when they contain a turning index, finite-order points
  // (N >= 2, local degree 2 at turning points) otherwise.
  std::set<int> post_critical;
  for (int t : model.turning) {
    int cur = t;
    for (int step = 0; step < model.k_count + 1; ++step) {
      cur = model.sigma[static_cast<std::size_t>(cur - 1)];
      post_critical.insert(cur);
    }
  }
  std::set<int> punctured;
  for (int z : post_critical) {
    // z is in a cycle iff iterating k steps returns to it.
    int cur = z;
    bool in_cycle = false;
    std::set<int> cycle;
    for (int step = 0; step < model.k_count + 1; ++step) {
      cur = model.sigma[static_cast<std::size_t>(cur - 1)];
      cycle.insert(cur);
      if (cur == z) {
        in_cycle = true;
        break;
      }
    }
    if (!in_cycle) continue;
    bool has_turning = false;
    for (int c : cycle)
      if (model.is_turning(c)) has_turning = true;
    if (has_turning)
      for (int c : cycle) punctured.insert(c);
  }
  rep.punctures += static_cast<int>(punctured.size());

  double weight = 0.0;
  for (int z : post_critical) {
    if (punctured.count(z)) continue;
    ++rep.finite_order_points;
    weight += 0.5;  // 1 - 1/N with N >= 2
  }
  rep.chi_bound = (2.0 - rep.punctures) - weight;
  rep.hyperbolic = rep.chi_bound < 0.0;
  return rep;
}

OrbifoldReport orbifold_report(const CombinatorialModel& model) {
  return orbifoldreport_impl(model);
}

bool orbifold_hyperbolicity_check(const CombinatorialModel& model) {
  return orbifoldreport_impl(model).hyperbolic;
}

void check_in_W(const std::vector<double>& x, int k_count) {
  if (static_cast<int>(x.size()) != k_count)
    raise(ErrorCode::InvalidArgument, "configuration size differs from k_count");
  if (x.empty() || x[0] != 0.0)
    raise(ErrorCode::InvalidArgument, "configuration must start with x_1 = 0");
  for (std::size_t i = 1; i < x.size(); ++i)
    if (!(x[i] > x[i - 1]))
      raise(ErrorCode::InvalidArgument, "configuration must be strictly increasing");
  if (!(x.back() < 1.0))
    raise(ErrorCode::InvalidArgument, "configuration must stay below 1");
}

TargetVector resolve_offsets(const std::vector<double>& x, const CombinatorialModel& model) {
  check_in_W(x, model.k_count);
  const int m2 = 2 * model.m;
  const KappaVector kappa = model.kappa_vector();

  std::vector<double> cls(static_cast<std::size_t>(m2));
  for (int p = 1; p <= m2; ++p) {
    const int t = model.turning[static_cast<std::size_t>(p - 1)];
    cls[static_cast<std::size_t>(p - 1)] =
        x[static_cast<std::size_t>(model.sigma[static_cast<std::size_t>(t - 1)] - 1)];
  }

  TargetVector tv;
  tv.v.resize(static_cast<std::size_t>(m2));
  tv.v[0] = cls[0];  // gauge: v_1 in [0,1)
  for (int j = 1; j <= m2 - 1; ++j) {
    const int q = std::abs(model.tau[static_cast<std::size_t>(j - 1)]);
    const bool down = j % 2 == 1;
    const double vprev = tv.v[static_cast<std::size_t>(j - 1)];
    const double base = down ? vprev - cls[static_cast<std::size_t>(j)]
                             : cls[static_cast<std::size_t>(j)] - vprev;
    const double frac = wrap_turn(base);
    const bool tie = frac < kTieTol || frac > 1.0 - kTieTol;
    if (tie && q == 0) {
      std::ostringstream os;
      os << "marked values coincide across gap " << j << " but tau_" << j << " = 0";
      raise(ErrorCode::DegenerateConfiguration, os.str());
    }
    const double len = tie ? static_cast<double>(q) : q + frac;
    tv.v[static_cast<std::size_t>(j)] = down ? vprev - len : vprev + len;
  }

  std::string why;
  if (!tv.in_V(kappa, &why))
    raise(ErrorCode::TypeUnrealizable, "resolved offsets leave V: " + why);
  if (compute_type(tv).tau != model.tau)
    raise(ErrorCode::TypeUnrealizable, "resolved offsets do not realize the requested type");
  return tv;
}

PullbackPlan plan_pullback_targets(const std::vector<double>& x,
                                   const CombinatorialModel& model, const TargetVector& v,
                                   bool strict_interior) {
  const int k = model.k_count;
  const int m2 = 2 * model.m;
  PullbackPlan plan;
  plan.target.assign(static_cast<std::size_t>(k), 0.0);
  plan.branch.assign(static_cast<std::size_t>(k), 0);

  for (int p = 1; p <= m2; ++p)
    plan.target[static_cast<std::size_t>(model.turning[static_cast<std::size_t>(p - 1)] - 1)] =
        v.v[static_cast<std::size_t>(p - 1)];
  for (int i = 1; i <= k; ++i)
    plan.branch[static_cast<std::size_t>(i - 1)] = model.branch_of(i);

  for (int p = 1; p <= m2; ++p) {
    const int t_start = model.turning[static_cast<std::size_t>(p - 1)];
    const bool wrap = p == m2;
    const int t_end = wrap ? model.turning[0] : model.turning[static_cast<std::size_t>(p)];
    const double alpha = v.v[static_cast<std::size_t>(p - 1)];
    const double beta = wrap ? v.v[0] + model.d : v.v[static_cast<std::size_t>(p)];
    const bool down = p % 2 == 1;

    std::vector<int> interior;
    if (wrap) {
      for (int i = t_start + 1; i <= k; ++i) interior.push_back(i);
    } else {
      for (int i = t_start + 1; i < t_end; ++i) interior.push_back(i);
    }
    if (interior.empty()) continue;

    // Integer crossings of the branch window, ordered along the branch.
    const double lo = std::min(alpha, beta);
    const double hi = std::max(alpha, beta);
    std::vector<double> crossings;
    for (int q = static_cast<int>(std::ceil(lo - kTieTol)); q <= static_cast<int>(std::floor(hi + kTieTol)); ++q) {
      if (q > lo + kTieTol && q < hi - kTieTol) crossings.push_back(q);
    }
    if (down) std::reverse(crossings.begin(), crossings.end());

    std::vector<int> int_marks;
    for (int i : interior)
      if (model.is_integer_preimage(i)) int_marks.push_back(i);
    if (!int_marks.empty() && int_marks.size() != crossings.size()) {
      std::ostringstream os;
      os << "branch " << p << " marks " << int_marks.size() << " integer preimages but has "
         << crossings.size() << " integer crossings";
      raise(ErrorCode::BranchMismatch, os.str());
    }
    std::size_t next_cross = 0;

    // March through the interior, keeping the last placed value as the moving
    // bound; each plain point takes the first admissible lift of its class
    // past the bound, within the sub-window up to the next special value.
    double bound = alpha;
    auto ahead = [&](double a, double b) { return down ? a > b : a < b; };  // a before b

    for (std::size_t idx = 0; idx < interior.size(); ++idx) {
      const int i = interior[idx];
      if (model.is_integer_preimage(i)) {
        plan.target[static_cast<std::size_t>(i - 1)] = crossings[next_cross];
        bound = crossings[next_cross];
        ++next_cross;
        continue;
      }
      // Next special value bounding this point's sub-window.
      double window_end = beta;
      std::size_t probe = next_cross;
      for (std::size_t jdx = idx + 1; jdx < interior.size(); ++jdx) {
        if (model.is_integer_preimage(interior[jdx])) {
          window_end = crossings[probe];
          break;
        }
      }
      const double cls = x[static_cast<std::size_t>(model.sigma[static_cast<std::size_t>(i - 1)] - 1)];
      // Candidate lifts cls + n strictly between bound and window_end.
      double chosen = 0.0;
      bool found = false;
      const double wlo = std::min(bound, window_end);
      const double whi = std::max(bound, window_end);
      for (int n = static_cast<int>(std::floor(wlo - cls)) - 1;
           n <= static_cast<int>(std::ceil(whi - cls)) + 1; ++n) {
        const double cand = cls + n;
        const bool at_edge =
            std::fabs(cand - bound) < kEndpointTol || std::fabs(cand - window_end) < kEndpointTol;
        const bool inside = cand > wlo + kEndpointTol && cand < whi - kEndpointTol;
        if (!inside && !at_edge) continue;
        if (at_edge && strict_interior) continue;
        if (!found || ahead(cand, chosen)) {
          chosen = cand;
          found = true;
        }
      }
      if (!found) {
        std::ostringstream os;
        os << "no admissible value for marked point " << i << " (class " << cls
           << ") inside branch " << p;
        raise(ErrorCode::BranchMismatch, os.str());
      }
      plan.target[static_cast<std::size_t>(i - 1)] = chosen;
      bound = chosen;
    }
  }
  return plan;
}

namespace {

void add_violation(ValidationReport& rep, const std::string& code, const std::string& msg) {
  rep.violations.push_back(Violation{code, msg});
}

}  // namespace

ValidationReport validate_model(const CombinatorialModel& model) {
  ValidationReport rep;
  const int k = model.k_count;

  if (model.m < 1) add_violation(rep, "BadModality", "m must be >= 1");
  if (k < 2 * model.m)
    add_violation(rep, "BadMarkedCount", "k_count smaller than the number of turning points");
  if (static_cast<int>(model.sigma.size()) != k)
    add_violation(rep, "SigmaLength", "sigma must list one image per marked point");
  for (int s : model.sigma)
    if (s < 1 || s > k) {
      add_violation(rep, "SigmaRange", "sigma values must lie in 1..k");
      break;
    }

  if (static_cast<int>(model.turning.size()) != 2 * model.m)
    add_violation(rep, "TurningCount", "need exactly 2m turning indices");
  if (!model.turning.empty() && model.turning.front() != 1)
    add_violation(rep, "TurningFirstIndex", "t_1 must be 1 (index 1 is the first maximum)");
  for (std::size_t i = 0; i < model.turning.size(); ++i) {
    const int t = model.turning[i];
    if (t < 1 || t > k) add_violation(rep, "IndexRange", "turning index out of range");
    if (i > 0 && t <= model.turning[i - 1])
      add_violation(rep, "TurningSorted", "turning indices must be strictly increasing");
  }
  for (std::size_t i = 0; i < model.integer_preimage.size(); ++i) {
    const int t = model.integer_preimage[i];
    if (t < 1 || t > k) add_violation(rep, "IndexRange", "integer-preimage index out of range");
    if (i > 0 && t <= model.integer_preimage[i - 1])
      add_violation(rep, "IntegerPreimageSorted", "integer-preimage indices must be sorted");
    if (model.is_turning(t))
      add_violation(rep, "SpecialsOverlap", "turning and integer-preimage indices must be disjoint");
    if (static_cast<int>(model.sigma.size()) == k &&
        model.sigma[static_cast<std::size_t>(t - 1)] != 1)
      add_violation(rep, "IntegerPreimageSigma", "sigma must send integer preimages to index 1");
  }

  if (static_cast<int>(model.tau.size()) != 2 * model.m - 1)
    add_violation(rep, "TauLength", "tau must have 2m-1 entries");
  for (std::size_t j = 1; j <= model.tau.size(); ++j) {
    const int tj = model.tau[j - 1];
    if (j % 2 == 1 && tj > 0)
      add_violation(rep, "TauSigns", "odd tau entries must be <= 0");
    if (j % 2 == 0 && tj < 0)
      add_violation(rep, "TauSigns", "even tau entries must be >= 0");
  }

  if (static_cast<int>(model.kappa.size()) != model.m + 1) {
    add_violation(rep, "KappaLength", "kappa must list k0 and k_1..k_m");
  } else {
    const int k0 = model.kappa[0];
    int sum = 0;
    for (int j = 1; j <= model.m; ++j) {
      const int kj = model.kappa[static_cast<std::size_t>(j)];
      sum += kj;
      if (kj < 1) add_violation(rep, "KappaPositive", "k_j must be positive");
      if (2 * j - 2 < static_cast<int>(model.tau.size())) {
        const int tau_odd = model.tau[static_cast<std::size_t>(2 * j - 2)];
        if (kj < -tau_odd + 2) {
          std::ostringstream os;
          os << "k_" << j << " = " << kj << " < -tau_" << (2 * j - 1) << " + 2 = "
             << (-tau_odd + 2);
          add_violation(rep, "KappaNotAboveTau", os.str());
        }
      }
    }
    if (k0 != model.d + sum) {
      std::ostringstream os;
      os << "k0 = " << k0 << " but d + sum k_j = " << model.d + sum;
      add_violation(rep, "KappaDegreeMismatch", os.str());
    }
    if (k0 < 2) add_violation(rep, "KappaK0TooSmall", "k0 must be at least 2");
  }

  if (model.x0.has_value()) {
    try {
      check_in_W(*model.x0, k);
    } catch (const Error& e) {
      add_violation(rep, "BadInitialConfiguration", e.what());
    }
  }

  if (!rep.valid()) return rep;

  // Loop detection and branch feasibility need the structure above to hold.
  try {
    compute_s_indices(model);
  } catch (const Error& e) {
    add_violation(rep, "InessentialOrPeriodicInterval", e.what());
  }

  try {
    std::vector<double> x(static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i) x[static_cast<std::size_t>(i)] = static_cast<double>(i) / k;
    const TargetVector v = resolve_offsets(x, model);
    plan_pullback_targets(x, model, v, /*strict_interior=*/true);
  } catch (const Error& e) {
    add_violation(rep, "BranchInfeasible", e.what());
  }

  return rep;
}

}  // namespace blaschke

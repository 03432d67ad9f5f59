#include "blaschke/verify.hpp"

#include <algorithm>
#include <cmath>

#include <json.hpp>

#include "blaschke/inverse.hpp"
#include "blaschke/tracer.hpp"

namespace blaschke {

std::vector<FamilySpec> standard_families() {
  return {
      FamilySpec{"m1_k21", 1, {2, 1}, {0.0}},
      FamilySpec{"m2_k733", 2, {7, 3, 3}, {0.0, 0.5}},
      FamilySpec{"m3_k8322", 3, {8, 3, 2, 2}, {0.0, 1.0 / 3.0, 2.0 / 3.0}},
  };
}

ParameterPoint sample_mu_in_delta(const FamilySpec& family, Rng& rng) {
  const KappaVector kappa = family.kappa_vector();
  const ParameterPoint base = seed_parameters(family.m, kappa, family.base_angles);
  for (int attempt = 0; attempt < 60; ++attempt) {
    const double eta0 = rng.uniform();
    std::vector<double> radii, etas;
    for (int j = 1; j <= family.m; ++j) {
      radii.push_back(1.0 + (base.r(j) - 1.0) * rng.uniform(0.55, 1.7));
      etas.push_back(j == 1 ? 0.0 : wrap_turn(base.eta(j) + rng.uniform(-0.04, 0.04)));
    }
    try {
      ParameterPoint mu(eta0, radii, etas);
      if (is_in_Delta(mu, kappa)) {
        find_critical_points(mu, kappa);  // also reject degenerate labels
        return mu;
      }
    } catch (const Error&) {
      // rejected draw
    }
  }
  return base;  // the seed itself is always admissible
}

VerifySummary run_verification(std::uint64_t seed, int samples) {
  VerifySummary summary;
  summary.seed = seed;
  summary.samples = samples;
  summary.all_pass = true;

  for (const FamilySpec& family : standard_families()) {
    Rng rng(seed ^ std::hash<std::string>{}(family.name));
    const KappaVector kappa = family.kappa_vector();
    FamilyVerification fv;
    fv.family = family.name;
    fv.samples = samples;
    fv.min_gap_margin = 1e9;
    fv.gaps_ok = true;
    fv.riemann_hurwitz_ok = true;

    std::vector<ParameterPoint> draws;
    for (int i = 0; i < samples; ++i) draws.push_back(sample_mu_in_delta(family, rng));

    for (const ParameterPoint& mu : draws) {
      const CriticalProfile profile = find_critical_points(mu, kappa);
      try {
        const std::vector<double> gaps = gap_vector(profile, kappa);
        for (int j = 1; j <= family.m; ++j) {
          const double g = gaps[static_cast<std::size_t>(j - 1)];
          fv.min_gap_margin = std::min(fv.min_gap_margin, std::min(g, kappa.k(j) - g));
        }
      } catch (const Error&) {
        fv.gaps_ok = false;
      }
      const RiemannHurwitzReport rh = riemann_hurwitz_report(mu, kappa, Anchor(profile.points[0]));
      if (!rh.balanced) fv.riemann_hurwitz_ok = false;
    }
    if (fv.min_gap_margin <= 0.0) fv.gaps_ok = false;

    const int few = std::min(samples, 10);
    fv.jacobian_ok = true;
    for (int i = 0; i < few; ++i) {
      const ParameterPoint& mu = draws[static_cast<std::size_t>(i)];
      const CriticalProfile profile = find_critical_points(mu, kappa);
      const Matrix analytic = jacobian_phi(mu, profile, kappa, true);
      const Matrix fd = jacobian_phi_fd(mu, kappa, Anchor(profile.points[0]));
      double scale = 0.0, err = 0.0;
      for (std::size_t q = 0; q < fd.a.size(); ++q) {
        scale = std::max(scale, std::fabs(fd.a[q]));
        err = std::max(err, std::fabs(fd.a[q] - analytic.a[q]));
      }
      fv.jacobian_max_rel_err = std::max(fv.jacobian_max_rel_err, err / std::max(scale, 1e-12));
    }
    if (fv.jacobian_max_rel_err > 1e-5) fv.jacobian_ok = false;

    fv.roundtrip_ok = true;
    for (int i = 0; i < few; ++i) {
      const ParameterPoint& mu = draws[static_cast<std::size_t>(i)];
      const TargetVector v = compute_phi(mu, kappa);
      const ParameterPoint fresh = seed_parameters(family.m, kappa, family.base_angles);
      try {
        const SolveResult sol = solve_phi_inverse(v, fresh, kappa, 1e-12);
        const TargetVector v_back = compute_phi(sol.mu, kappa, Anchor(sol.profile.points[0]));
        double err = 0.0;
        for (std::size_t q = 0; q < v.v.size(); ++q)
          err = std::max(err, std::fabs(v.v[q] - v_back.v[q]));
        fv.roundtrip_max_err = std::max(fv.roundtrip_max_err, err);
        fv.min_cauchy_certificate =
            std::min(fv.min_cauchy_certificate, sol.stats.min_cauchy_certificate);
      } catch (const Error&) {
        fv.roundtrip_ok = false;
      }
    }
    if (fv.roundtrip_max_err > 1e-9 || fv.min_cauchy_certificate <= 1e-12)
      fv.roundtrip_ok = false;

    fv.census_ok = true;
    fv.census_checked = std::min(samples, 3);
    for (int i = 0; i < fv.census_checked; ++i) {
      try {
        const DecompositionReport rep =
            verify_decomposition(draws[static_cast<std::size_t>(i)], kappa,
                                 static_cast<unsigned>(seed + 7 * i + 1));
        if (!rep.census_ok || !rep.pairings_match) fv.census_ok = false;
      } catch (const Error&) {
        fv.census_ok = false;
      }
    }

    summary.all_pass = summary.all_pass && fv.gaps_ok && fv.riemann_hurwitz_ok &&
                       fv.jacobian_ok && fv.roundtrip_ok && fv.census_ok;
    summary.families.push_back(fv);
  }
  return summary;
}

std::string VerifySummary::to_json() const {
  nlohmann::json doc;
  doc["seed"] = seed;
  doc["samples"] = samples;
  doc["all_pass"] = all_pass;
  nlohmann::json fam = nlohmann::json::array();
  for (const FamilyVerification& fv : families) {
    fam.push_back({{"family", fv.family},
                   {"samples", fv.samples},
                   {"min_gap_margin", fv.min_gap_margin},
                   {"gaps_ok", fv.gaps_ok},
                   {"riemann_hurwitz_ok", fv.riemann_hurwitz_ok},
                   {"jacobian_max_rel_err", fv.jacobian_max_rel_err},
                   {"jacobian_ok", fv.jacobian_ok},
                   {"roundtrip_max_err", fv.roundtrip_max_err},
                   {"min_cauchy_certificate", fv.min_cauchy_certificate},
                   {"roundtrip_ok", fv.roundtrip_ok},
                   {"census_checked", fv.census_checked},
                   {"census_ok", fv.census_ok}});
  }
  doc["families"] = fam;
  return doc.dump(2) + "\n";
}

}  // namespace blaschke

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "blaschke/critical.hpp"
#include "blaschke/rng.hpp"

namespace blaschke {

struct FamilySpec {
  std::string name;
  int m = 1;
  std::vector<int> kappa;         // (k0, k1, ..., km)
  std::vector<double> base_angles;

  KappaVector kappa_vector() const {
    return KappaVector(kappa.at(0), std::vector<int>(kappa.begin() + 1, kappa.end()));
  }
};

// The families exercised by the property suites:
// (m=1, kappa=(2,1)), (m=2, kappa=(7,3,3)), (m=3, kappa=(8,3,2,2)).
std::vector<FamilySpec> standard_families();

// Draw a multimodal parameter near the family seed: random eta0, radii scaled
// around the seeded radius, slightly perturbed pole angles; rejection-sampled
// against is_in_Delta.
ParameterPoint sample_mu_in_delta(const FamilySpec& family, Rng& rng);

struct FamilyVerification {
  std::string family;
  int samples = 0;
  double min_gap_margin = 0.0;       // min over samples/j of min(g_j, k_j - g_j)
  bool gaps_ok = false;
  bool riemann_hurwitz_ok = false;
  double jacobian_max_rel_err = 0.0;
  bool jacobian_ok = false;
  double roundtrip_max_err = 0.0;
  double min_cauchy_certificate = 1.0;
  bool roundtrip_ok = false;
  int census_checked = 0;
  bool census_ok = false;
};

struct VerifySummary {
  std::uint64_t seed = 0;
  int samples = 0;
  std::vector<FamilyVerification> families;
  bool all_pass = false;

  std::string to_json() const;
};

// Critical-gap bounds, Riemann-Hurwitz counts, analytic-vs-FD Jacobian, phi
// round trips, and the preimage census, on `samples` deterministic draws.
VerifySummary run_verification(std::uint64_t seed, int samples);

}  // namespace blaschke

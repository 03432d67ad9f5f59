#pragma once

#include <vector>

#include "blaschke/model.hpp"
#include "blaschke/rng.hpp"
#include "blaschke/verify.hpp"

namespace blaschke::testing {

inline CombinatorialModel reference_model() {
  CombinatorialModel model;
  model.m = 2;
  model.d = 1;
  model.kappa = {7, 3, 3};
  model.tau = {-1, 0, -1};
  model.k_count = 5;
  model.turning = {1, 3, 4, 5};
  model.integer_preimage = {};
  model.sigma = {3, 2, 3, 2, 1};
  return model;
}

// Same combinatorics with the integer crossing of the first branch marked as
// an extra control point (index 3, between the fixed point z_2 and the old
// z_3); exercises step (2) of the pull-back.
inline CombinatorialModel reference_model_with_integer_preimage() {
  CombinatorialModel model;
  model.m = 2;
  model.d = 1;
  model.kappa = {7, 3, 3};
  model.tau = {-1, 0, -1};
  model.k_count = 6;
  model.turning = {1, 4, 5, 6};
  model.integer_preimage = {3};
  model.sigma = {4, 2, 1, 4, 2, 1};
  return model;
}

inline ParameterPoint reference_mu() {
  return ParameterPoint(0.69690, {1.31911, 1.33310}, {0.0, 0.60207});
}

inline ParameterPoint m1_mu(double a1 = 2.0) {
  return ParameterPoint(0.0, {a1}, {0.0});
}

inline KappaVector m1_kappa() { return KappaVector(2, {1}); }

}  // namespace blaschke::testing

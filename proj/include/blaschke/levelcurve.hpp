#pragma once

#include <vector>

#include "blaschke/family.hpp"

namespace blaschke {

// One component of {|B| = 1} traced inside the unit disk from a circle
// critical point to the circle critical point it pairs with.  The preimage of
// the circle decomposes into the circle itself and m analytic Jordan curves,
// each crossing it at a pair of adjacent critical points.
struct LevelCurveHalf {
  std::vector<Complex> points;  // from e^{2 pi i t_start} to e^{2 pi i t_end}
  double t_start = 0.0;
  double t_end = 0.0;  // landing angle in turns, in [0,1)
};

// Predictor-corrector trace of log|B| = 0 launched radially inward from the
// circle critical point at angle t_start (turns).  Throws TraceLost on step
// control failure.
LevelCurveHalf trace_unit_level_curve(const ParameterPoint& mu, const KappaVector& kappa,
                                      double t_start);

// Close the inside half with its inversion image 1/conj(z).
std::vector<Complex> close_by_inversion(const LevelCurveHalf& half);

// Winding-number test for a closed polyline.
bool point_in_polygon(const std::vector<Complex>& polygon, Complex p);

}  // namespace blaschke

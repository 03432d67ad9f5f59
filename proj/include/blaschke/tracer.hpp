#pragma once

#include <string>
#include <vector>

#include "blaschke/critical.hpp"
#include "blaschke/levelcurve.hpp"

namespace blaschke {

// One Jordan-curve component of B^{-1}(S^1) \ S^1: traced through the disk
// from the maximum c_{2j-1}, closed by inversion, enclosing the pole pair
// (a_j, i/conj(a_j)).
struct TracedCurve {
  int j = 0;                     // 1-based pole index
  std::vector<Complex> polyline;  // closed curve (disk half + inverted half)
  double endpoint_start = 0.0;   // circle angles in turns
  double endpoint_end = 0.0;
  bool encloses_pole = false;
  bool encloses_inverse = false;
};

TracedCurve trace_gamma(const ParameterPoint& mu, const KappaVector& kappa, int j,
                        const CriticalProfile& profile);

struct DecompositionReport {
  std::vector<TracedCurve> curves;
  int circle_crossings = 0;          // endpoints on the circle, 2 per curve
  double max_endpoint_error = 0.0;   // against the profile critical points
  double min_curve_separation = 0.0; // min distance between distinct curves
  double max_level_error = 0.0;      // max | |B| - 1 | along the polylines
  double max_symmetry_error = 0.0;   // distance from inversion-image to curve
  bool pairings_match = false;       // endpoints = (c_{2j-1}, c_{2j}) per curve
  // Regular-value census: circle count + per-curve counts must add to d_B.
  double census_value = 0.0;         // the sampled regular value (turns)
  int census_circle = 0;
  std::vector<int> census_per_curve;
  int census_total = 0;
  int sphere_degree = 0;
  bool census_ok = false;
};

DecompositionReport verify_decomposition(const ParameterPoint& mu, const KappaVector& kappa,
                                         unsigned census_seed = 1);

enum class GeometryFormat { Csv, Svg };

// CSV: one point per row, columns curve_id,re,im (no header).  SVG: unit
// circle at radius 400 in a 1000x1000 viewport with curves, critical points
// and poles.
std::string export_geometry(const std::vector<TracedCurve>& curves,
                            const CriticalProfile& profile, GeometryFormat format);

// Samples (t, F_normalized(t)) over [0, 1] for lift plots.
std::string export_lift_csv(const ParameterPoint& mu, const KappaVector& kappa, int samples);
std::string export_lift_svg(const ParameterPoint& mu, const KappaVector& kappa, int samples);

}  // namespace blaschke

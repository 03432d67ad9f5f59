#include "blaschke/levelcurve.hpp"

#include <cmath>

namespace blaschke {

namespace {

// log|B| and its gradient (as a complex number conj(d/dz log B)).
double height(Complex z, const ParameterPoint& mu, const KappaVector& kappa) {
  double h = kappa.k0() * std::log(std::abs(z));
  for (int j = 1; j <= kappa.m(); ++j) {
    const Complex aj = mu.pole(j);
    h += kappa.k(j) * (std::log(std::abs(z - aj)) - std::log(std::abs(1.0 - std::conj(aj) * z)));
  }
  return h;
}

Complex gradient(Complex z, const ParameterPoint& mu, const KappaVector& kappa) {
  return std::conj(log_derivative_B(z, mu, kappa));
}

double image_phase(Complex z, const ParameterPoint& mu, const KappaVector& kappa) {
  return std::arg(eval_B(SpherePoint::finite(z), mu, kappa).z);
}

// Newton steps along the gradient until |log|B|| <= tol.
bool correct(Complex& z, const ParameterPoint& mu, const KappaVector& kappa, double tol,
             double max_move) {
  for (int it = 0; it < 25; ++it) {
    const double h = height(z, mu, kappa);
    if (std::fabs(h) <= tol) return true;
    const Complex g = gradient(z, mu, kappa);
    const double g2 = std::norm(g);
    if (g2 < 1e-24) return false;
    Complex step = -h * g / g2;
    const double len = std::abs(step);
    if (len > max_move) step *= max_move / len;
    z += step;
  }
  return std::fabs(height(z, mu, kappa)) <= tol;
}

}  // namespace

namespace {

// The curve terminates at a simple zero of F' on the circle; polish the
// landing angle onto it.
double snap_to_critical_angle(double t_raw, const ParameterPoint& mu, const KappaVector& kappa) {
  double t = t_raw;
  for (int it = 0; it < 8; ++it) {
    const double d1 = lift_derivative(t, mu, kappa);
    const double d2 = lift_second_derivative(t, mu, kappa);
    if (d2 == 0.0) break;
    const double move = d1 / d2;
    if (!std::isfinite(move) || std::fabs(move) > 1e-3) break;
    t -= move;
    if (std::fabs(move) < 1e-15) break;
  }
  if (circle_dist(t, t_raw) > 1e-6)
    raise(ErrorCode::EndpointMismatch, "trace landed more than 1e-6 away from a critical point");
  return wrap_turn(t);
}

}  // namespace

LevelCurveHalf trace_unit_level_curve(const ParameterPoint& mu, const KappaVector& kappa,
                                      double t_start) {
  constexpr double kCorrTol = 1e-12;
  constexpr double kStepMin = 1e-4;
  constexpr double kStepMax = 1e-2;
  constexpr double kLaunch = 1e-5;
  constexpr int kMaxSteps = 400000;

  const Complex c = Complex{std::cos(kTau * t_start), std::sin(kTau * t_start)};

  LevelCurveHalf half;
  half.t_start = wrap_turn(t_start);
  half.points.push_back(c);

  // The level set crosses the circle orthogonally at the critical point, so a
  // small radial step inward is already near the curve.
  Complex z = c * (1.0 - kLaunch);
  if (!correct(z, mu, kappa, kCorrTol, kLaunch))
    raise(ErrorCode::TraceLost, "could not settle on |B|=1 near the launch point");
  half.points.push_back(z);

  Complex g = gradient(z, mu, kappa);
  if (std::abs(g) < 1e-14)
    raise(ErrorCode::TraceLost, "degenerate gradient at the launch point");
  Complex tangent = Complex{0.0, 1.0} * g / std::abs(g);
  if ((tangent * std::conj(-c)).real() < 0.0) tangent = -tangent;  // march inward

  double step = 10.0 * kLaunch;
  double prev_phase = image_phase(z, mu, kappa);
  bool left_boundary_zone = false;
  const double landing_radius = 1.0 - 3.0 * kLaunch;

  auto land = [&]() {
    half.t_end = snap_to_critical_angle(std::arg(z) / kTau, mu, kappa);
    half.points.push_back(Complex{std::cos(kTau * half.t_end), std::sin(kTau * half.t_end)});
    return half;
  };

  for (int n = 0; n < kMaxSteps; ++n) {
    Complex z_new = z + step * tangent;
    bool ok = correct(z_new, mu, kappa, kCorrTol, 2.0 * step);
    Complex tan_new{};
    double turn = 0.0;
    double dphase = 0.0;
    if (ok && std::abs(z_new) >= 1.0 - 1e-9) ok = false;  // overshooting onto the mirror half
    if (ok) {
      const Complex g_new = gradient(z_new, mu, kappa);
      if (std::abs(g_new) < 1e-12) {
        ok = false;  // passing too close to a saddle of log|B|
      } else {
        tan_new = Complex{0.0, 1.0} * g_new / std::abs(g_new);
        if ((tan_new * std::conj(tangent)).real() < 0.0) tan_new = -tan_new;
        turn = std::abs(tan_new - tangent);
        // Keep the image phase resolvable between samples: the preimage census
        // walks arg B along the polyline and must not alias by a full turn.
        dphase = std::remainder(image_phase(z_new, mu, kappa) - prev_phase, kTau);
        if ((turn > 0.5 || std::fabs(dphase) > 0.5) && step > kStepMin) ok = false;
      }
    }
    if (!ok) {
      // The march squeezes toward the circle at the landing end.
      if (left_boundary_zone && std::abs(z) > landing_radius && step < 2.0 * kLaunch)
        return land();
      step *= 0.5;
      if (step < 1e-9)
        raise(ErrorCode::TraceLost, "step control failed while tracing |B|=1");
      continue;
    }

    z = z_new;
    tangent = tan_new;
    prev_phase += dphase;
    half.points.push_back(z);
    if (turn < 0.05 && std::fabs(dphase) < 0.2) step = std::min(step * 1.4, kStepMax);

    if (std::abs(z) < landing_radius - 10.0 * kLaunch) left_boundary_zone = true;
    if (left_boundary_zone && std::abs(z) > landing_radius) return land();
  }
  raise(ErrorCode::TraceLost, "trace did not return to the circle");
}

std::vector<Complex> close_by_inversion(const LevelCurveHalf& half) {
  std::vector<Complex> poly = half.points;
  for (auto it = half.points.rbegin(); it != half.points.rend(); ++it) {
    const Complex z = *it;
    poly.push_back(1.0 / std::conj(z));
  }
  return poly;
}

bool point_in_polygon(const std::vector<Complex>& polygon, Complex p) {
  // Angle-summation winding number; the polylines here are dense enough that
  // ray casting against long segments is not needed.
  double winding = 0.0;
  const std::size_t n = polygon.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Complex a = polygon[i] - p;
    const Complex b = polygon[(i + 1) % n] - p;
    winding += std::arg(b / a);
  }
  return std::fabs(winding) > kTau / 2.0;
}

}  // namespace blaschke

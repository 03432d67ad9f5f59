#include "blaschke/tracer.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "blaschke/rng.hpp"

namespace blaschke {

namespace {

Complex unit_point(double t) { return Complex{std::cos(kTau * t), std::sin(kTau * t)}; }

double phase_of_B(Complex z, const ParameterPoint& mu, const KappaVector& kappa) {
  return std::arg(eval_B(SpherePoint::finite(z), mu, kappa).z);
}

}  // namespace

TracedCurve trace_gamma(const ParameterPoint& mu, const KappaVector& kappa, int j,
                        const CriticalProfile& profile) {
  if (j < 1 || j > kappa.m()) raise(ErrorCode::InvalidArgument, "curve index out of range");
  const double t_max = profile.points[static_cast<std::size_t>(2 * j - 2)];
  const double t_min = profile.points[static_cast<std::size_t>(2 * j - 1)];

  const LevelCurveHalf half = trace_unit_level_curve(mu, kappa, t_max);
  if (circle_dist(half.t_end, t_min) > 1e-6) {
    std::ostringstream os;
    os << "curve " << j << " landed at t = " << half.t_end << ", expected the paired minimum "
       << wrap_turn(t_min);
    raise(ErrorCode::EndpointMismatch, os.str());
  }

  TracedCurve curve;
  curve.j = j;
  curve.endpoint_start = half.t_start;
  curve.endpoint_end = half.t_end;
  curve.polyline = close_by_inversion(half);
  const Complex aj = mu.pole(j);
  curve.encloses_pole = point_in_polygon(curve.polyline, aj);
  curve.encloses_inverse = point_in_polygon(curve.polyline, 1.0 / std::conj(aj));
  return curve;
}

DecompositionReport verify_decomposition(const ParameterPoint& mu, const KappaVector& kappa,
                                         unsigned census_seed) {
  DecompositionReport rep;
  const CriticalProfile profile = find_critical_points(mu, kappa);
  const int m = kappa.m();

  for (int j = 1; j <= m; ++j) rep.curves.push_back(trace_gamma(mu, kappa, j, profile));
  rep.circle_crossings = 2 * m;

  rep.pairings_match = true;
  for (int j = 1; j <= m; ++j) {
    const TracedCurve& c = rep.curves[static_cast<std::size_t>(j - 1)];
    const double e1 = circle_dist(c.endpoint_start, profile.points[static_cast<std::size_t>(2 * j - 2)]);
    const double e2 = circle_dist(c.endpoint_end, profile.points[static_cast<std::size_t>(2 * j - 1)]);
    rep.max_endpoint_error = std::max({rep.max_endpoint_error, e1, e2});
    if (e1 > 1e-8 || e2 > 1e-8) rep.pairings_match = false;
    if (!c.encloses_pole || !c.encloses_inverse) rep.pairings_match = false;
    // No curve may enclose another pair's poles.
    for (int i = 1; i <= m; ++i) {
      if (i == j) continue;
      if (point_in_polygon(c.polyline, mu.pole(i))) rep.pairings_match = false;
    }
  }

  // Level accuracy and construction symmetry, subsampled.
  for (const TracedCurve& c : rep.curves) {
    for (std::size_t i = 0; i < c.polyline.size(); i += 3) {
      const Complex z = c.polyline[i];
      rep.max_level_error = std::max(
          rep.max_level_error, std::fabs(std::abs(eval_B(SpherePoint::finite(z), mu, kappa).z) - 1.0));
      const Complex mirror = 1.0 / std::conj(z);
      double best = 1e9;
      for (const Complex& w : c.polyline) best = std::min(best, std::abs(w - mirror));
      rep.max_symmetry_error = std::max(rep.max_symmetry_error, best);
    }
  }

  rep.min_curve_separation = 1e9;
  for (std::size_t a = 0; a < rep.curves.size(); ++a) {
    for (std::size_t b = a + 1; b < rep.curves.size(); ++b) {
      const auto& pa = rep.curves[a].polyline;
      const auto& pb = rep.curves[b].polyline;
      for (std::size_t i = 0; i < pa.size(); i += 2)
        for (std::size_t q = 0; q < pb.size(); q += 2)
          rep.min_curve_separation = std::min(rep.min_curve_separation, std::abs(pa[i] - pb[q]));
    }
  }
  if (m < 2) rep.min_curve_separation = 0.0;

  // Regular-value census: pick a circle value away from the critical values,
  // count preimages on the circle branch by branch and along each curve by
  // phase crossings; the total must reach the sphere degree.
  Rng rng(census_seed);
  const std::vector<double> vals = profile.values_raw;
  double y = 0.0;
  for (int attempt = 0; attempt < 100; ++attempt) {
    y = rng.uniform();
    bool clear = true;
    for (double v : vals)
      if (circle_dist(y, v) < 1e-3) clear = false;
    if (clear) break;
  }
  rep.census_value = y;

  const int m2 = 2 * m;
  const int d = kappa.degree();
  int circle_count = 0;
  for (int p = 1; p <= m2; ++p) {
    const double va = vals[static_cast<std::size_t>(p - 1)];
    const double vb = p == m2 ? vals[0] + d : vals[static_cast<std::size_t>(p)];
    const double lo = std::min(va, vb);
    const double hi = std::max(va, vb);
    for (int n = static_cast<int>(std::ceil(lo - y)); y + n < hi; ++n)
      if (y + n > lo) ++circle_count;
  }
  rep.census_circle = circle_count;

  rep.census_total = circle_count;
  for (const TracedCurve& c : rep.curves) {
    const double psi = kTau * y;
    double theta = phase_of_B(c.polyline[0], mu, kappa);
    double carried = (theta - psi) / kTau;
    int crossings = 0;
    for (std::size_t i = 1; i <= c.polyline.size(); ++i) {
      const Complex z = c.polyline[i % c.polyline.size()];
      const double th = phase_of_B(z, mu, kappa);
      const double dth = std::remainder(th - theta, kTau);
      theta = th;
      const double carried_new = carried + dth / kTau;
      crossings += std::abs(static_cast<int>(std::floor(carried_new)) -
                            static_cast<int>(std::floor(carried)));
      carried = carried_new;
    }
    rep.census_per_curve.push_back(crossings);
    rep.census_total += crossings;
  }
  rep.sphere_degree = kappa.sphere_degree();
  rep.census_ok = rep.census_total == rep.sphere_degree;
  return rep;
}

std::string export_geometry(const std::vector<TracedCurve>& curves,
                            const CriticalProfile& profile, GeometryFormat format) {
  std::ostringstream os;
  os.precision(17);
  if (format == GeometryFormat::Csv) {
    for (const TracedCurve& c : curves)
      for (const Complex& z : c.polyline)
        os << c.j << "," << z.real() << "," << z.imag() << "\n";
    return os.str();
  }

  // SVG: 1000x1000 viewport, unit circle at radius 400.
  auto px = [](double v) { return 500.0 + 400.0 * v; };
  auto py = [](double v) { return 500.0 - 400.0 * v; };
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"1000\" height=\"1000\" "
        "viewBox=\"0 0 1000 1000\">\n";
  os << "<rect width=\"1000\" height=\"1000\" fill=\"white\"/>\n";
  os << "<circle cx=\"500\" cy=\"500\" r=\"400\" fill=\"none\" stroke=\"black\" "
        "stroke-width=\"1.5\"/>\n";
  static const char* palette[] = {"#d62728", "#1f77b4", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"};
  for (const TracedCurve& c : curves) {
    os << "<polyline fill=\"none\" stroke=\"" << palette[(c.j - 1) % 6]
       << "\" stroke-width=\"1.2\" points=\"";
    for (const Complex& z : c.polyline) os << px(z.real()) << "," << py(z.imag()) << " ";
    os << "\"/>\n";
  }
  for (std::size_t i = 0; i < profile.points.size(); ++i) {
    const Complex z = unit_point(profile.points[i]);
    os << "<circle cx=\"" << px(z.real()) << "\" cy=\"" << py(z.imag())
       << "\" r=\"5\" fill=\"" << (profile.is_max[i] ? "black" : "gray") << "\"/>\n";
  }
  os << "</svg>\n";
  return os.str();
}

namespace {

std::vector<std::pair<double, double>> lift_samples(const ParameterPoint& mu,
                                                    const KappaVector& kappa, int samples) {
  const CriticalProfile profile = find_critical_points(mu, kappa);
  std::vector<std::pair<double, double>> pts;
  for (int i = 0; i <= samples; ++i) {
    const double t = static_cast<double>(i) / samples;
    const double f =
        lift_value(t + profile.c1(), mu, kappa) - profile.c1() - profile.gauge_shift;
    pts.emplace_back(t, f);
  }
  return pts;
}

}  // namespace

std::string export_lift_csv(const ParameterPoint& mu, const KappaVector& kappa, int samples) {
  std::ostringstream os;
  os.precision(17);
  for (const auto& [t, f] : lift_samples(mu, kappa, samples)) os << t << "," << f << "\n";
  return os.str();
}

std::string export_lift_svg(const ParameterPoint& mu, const KappaVector& kappa, int samples) {
  const auto pts = lift_samples(mu, kappa, samples);
  double fmin = pts.front().second, fmax = pts.front().second;
  for (const auto& [t, f] : pts) {
    fmin = std::min(fmin, f);
    fmax = std::max(fmax, f);
  }
  const double span = std::max(fmax - fmin, 1e-9);
  auto px = [](double t) { return 100.0 + 800.0 * t; };
  auto py = [&](double f) { return 900.0 - 800.0 * (f - fmin) / span; };

  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"1000\" height=\"1000\" "
        "viewBox=\"0 0 1000 1000\">\n";
  os << "<rect width=\"1000\" height=\"1000\" fill=\"white\"/>\n";
  os << "<rect x=\"100\" y=\"100\" width=\"800\" height=\"800\" fill=\"none\" stroke=\"black\"/>\n";
  for (int n = static_cast<int>(std::ceil(fmin)); n <= static_cast<int>(std::floor(fmax)); ++n)
    os << "<line x1=\"100\" x2=\"900\" y1=\"" << py(n) << "\" y2=\"" << py(n)
       << "\" stroke=\"#cccccc\"/>\n";
  os << "<polyline fill=\"none\" stroke=\"#1f77b4\" stroke-width=\"1.5\" points=\"";
  for (const auto& [t, f] : pts) os << px(t) << "," << py(f) << " ";
  os << "\"/>\n</svg>\n";
  return os.str();
}

}  // namespace blaschke

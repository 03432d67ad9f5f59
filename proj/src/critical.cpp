#include "blaschke/critical.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "blaschke/levelcurve.hpp"

namespace blaschke {

int scan_grid_size(const KappaVector& kappa) {
  return std::max(1024, 64 * (kappa.k0() + kappa.sum_k()));
}

bool TargetVector::in_V(const KappaVector& kappa, std::string* why) const {
  const int mm = m();
  auto fail = [&](const std::string& msg) {
    if (why) *why = msg;
    return false;
  };
  if (static_cast<int>(v.size()) != 2 * mm || mm != kappa.m())
    return fail("wrong dimension");
  for (int i = 1; i <= 2 * mm - 1; ++i) {
    const double diff = v[static_cast<std::size_t>(i)] - v[static_cast<std::size_t>(i - 1)];
    if (!(((i % 2 == 1) ? -diff : diff) > 0.0)) {
      std::ostringstream os;
      os << "alternation fails at i=" << i;
      return fail(os.str());
    }
  }
  for (int j = 1; j <= mm; ++j) {
    const double gap = v[static_cast<std::size_t>(2 * j - 2)] - v[static_cast<std::size_t>(2 * j - 1)];
    if (!(gap > 0.0 && gap < kappa.k(j))) {
      std::ostringstream os;
      os << "gap " << j << " = " << gap << " outside (0," << kappa.k(j) << ")";
      return fail(os.str());
    }
  }
  if (!(v.back() < v.front() + kappa.degree()))
    return fail("wrap inequality v_2m < v_1 + d fails");
  return true;
}

std::vector<double> CriticalProfile::normalized_points() const {
  std::vector<double> out(points.size());
  for (std::size_t i = 0; i < points.size(); ++i) out[i] = points[i] - points[0];
  return out;
}

std::vector<double> CriticalProfile::normalized_values() const {
  std::vector<double> out(values_raw.size());
  for (std::size_t i = 0; i < values_raw.size(); ++i)
    out[i] = values_raw[i] - points[0] - gauge_shift;
  return out;
}

namespace {

struct ScanResult {
  std::vector<double> roots;    // in [0,1), increasing
  std::vector<bool> root_is_max;  // sign change + -> -
  double max_abs_fprime = 0.0;
};

// Bracket the sign changes of F' on a uniform grid, then bisect and polish
// with Newton.  The grid density is tied to the total degree, which bounds
// the oscillation of F'.
ScanResult scan_critical_points(const ParameterPoint& mu, const KappaVector& kappa) {
  const int n = scan_grid_size(kappa);
  std::vector<double> f(static_cast<std::size_t>(n));
  ScanResult res;
  for (int i = 0; i < n; ++i) {
    f[static_cast<std::size_t>(i)] = lift_derivative(static_cast<double>(i) / n, mu, kappa);
    res.max_abs_fprime = std::max(res.max_abs_fprime, std::fabs(f[static_cast<std::size_t>(i)]));
  }
  auto sign = [](double x) { return x < 0.0 ? -1 : 1; };
  for (int i = 0; i < n; ++i) {
    const double fi = f[static_cast<std::size_t>(i)];
    const double fn = f[static_cast<std::size_t>((i + 1) % n)];
    if (sign(fi) == sign(fn)) continue;
    double lo = static_cast<double>(i) / n;
    double hi = static_cast<double>(i + 1) / n;
    double flo = fi;
    for (int it = 0; it < 52 && hi - lo > 1e-15; ++it) {
      const double mid = 0.5 * (lo + hi);
      const double fm = lift_derivative(mid, mu, kappa);
      if (sign(fm) == sign(flo)) {
        lo = mid;
        flo = fm;
      } else {
        hi = mid;
      }
    }
    double root = 0.5 * (lo + hi);
    for (int it = 0; it < 4; ++it) {
      const double d1 = lift_derivative(root, mu, kappa);
      const double d2 = lift_second_derivative(root, mu, kappa);
      if (d2 == 0.0) break;
      const double step = d1 / d2;
      if (!std::isfinite(step) || std::fabs(step) > 1.0 / n) break;
      root -= step;
    }
    res.roots.push_back(wrap_turn(root));
    res.root_is_max.push_back(sign(fi) > 0);
  }
  // wrap_turn may have moved a root at ~1.0 to 0.0; restore order
  std::vector<std::size_t> idx(res.roots.size());
  for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
  std::sort(idx.begin(), idx.end(),
            [&](std::size_t a, std::size_t b) { return res.roots[a] < res.roots[b]; });
  ScanResult sorted;
  sorted.max_abs_fprime = res.max_abs_fprime;
  for (std::size_t i : idx) {
    sorted.roots.push_back(res.roots[i]);
    sorted.root_is_max.push_back(res.root_is_max[i]);
  }
  return sorted;
}

// Identify the pole pair enclosed by the level curve through the critical
// point at angle t_c.  Returns the 1-based pole index.
int enclosed_pole_index(const ParameterPoint& mu, const KappaVector& kappa, double t_c) {
  const LevelCurveHalf half = trace_unit_level_curve(mu, kappa, t_c);
  const std::vector<Complex> poly = close_by_inversion(half);
  int found = 0;
  for (int j = 1; j <= kappa.m(); ++j) {
    const Complex aj = mu.pole(j);
    const bool in_a = point_in_polygon(poly, aj);
    const bool in_inv = point_in_polygon(poly, 1.0 / std::conj(aj));
    if (in_a != in_inv)
      raise(ErrorCode::EndpointMismatch, "level curve separates a_j from 1/conj(a_j)");
    if (in_a) {
      if (found != 0)
        raise(ErrorCode::EndpointMismatch, "level curve encloses more than one pole pair");
      found = j;
    }
  }
  if (found == 0)
    raise(ErrorCode::EndpointMismatch, "level curve encloses no pole pair");
  return found;
}

}  // namespace

bool is_in_Delta(const ParameterPoint& mu, const KappaVector& kappa) {
  const int n = scan_grid_size(kappa);
  auto sign = [](double x) { return x < 0.0 ? -1 : 1; };
  int changes = 0;
  const double f0 = lift_derivative(0.0, mu, kappa);
  int prev = sign(f0);
  for (int i = 1; i <= n; ++i) {
    const int s = sign(lift_derivative(static_cast<double>(i % n) / n, mu, kappa));
    if (s != prev) ++changes;
    prev = s;
  }
  return changes == 2 * kappa.m();
}

CriticalProfile find_critical_points(const ParameterPoint& mu, const KappaVector& kappa,
                                     const Anchor& anchor) {
  const int m = kappa.m();
  ScanResult scan = scan_critical_points(mu, kappa);
  if (static_cast<int>(scan.roots.size()) != 2 * m) {
    std::ostringstream os;
    os << "found " << scan.roots.size() << " sign changes of F', expected " << 2 * m;
    raise(ErrorCode::NotMultimodal, os.str());
  }

  const double degeneracy_scale = 1e-9 * (1.0 + scan.max_abs_fprime);
  for (double root : scan.roots) {
    if (std::fabs(lift_second_derivative(root, mu, kappa)) < degeneracy_scale)
      raise(ErrorCode::DegenerateCritical, "|F''| vanishes at a turning point (boundary of Delta)");
  }

  // Labels alternate; pick which maximum is C_1 (the one on the curve that
  // encloses a_1).  Along a continuation path this is the maximum nearest the
  // previous C_1; cold calls fall back to the straddle rule near seeds and to
  // an explicit level-curve trace otherwise.
  std::vector<std::size_t> maxima;
  for (std::size_t i = 0; i < scan.roots.size(); ++i)
    if (scan.root_is_max[i]) maxima.push_back(i);
  if (static_cast<int>(maxima.size()) != m)
    raise(ErrorCode::NotMultimodal, "maxima/minima do not alternate");

  std::size_t start = 0;
  if (anchor.has_value()) {
    double best = 2.0;
    for (std::size_t q = 0; q < maxima.size(); ++q) {
      const double d = circle_dist(scan.roots[maxima[q]], *anchor);
      if (d < best) {
        best = d;
        start = maxima[q];
      }
    }
  } else if (m == 1) {
    start = maxima[0];
  } else {
    // Cold anchor.  F'(0) < 0 puts t = 0 between a maximum and its paired
    // minimum; use that maximum as the trace candidate, otherwise any.
    std::size_t candidate = maxima[0];
    if (lift_derivative(0.0, mu, kappa) < 0.0) candidate = maxima.back();
    const int j_star = enclosed_pole_index(mu, kappa, scan.roots[candidate]);
    std::size_t q = 0;
    while (maxima[q] != candidate) ++q;
    const std::size_t shift =
        (q + maxima.size() - static_cast<std::size_t>(j_star - 1)) % maxima.size();
    start = maxima[shift];
  }

  CriticalProfile profile;
  profile.m = m;
  const std::size_t n = scan.roots.size();
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t k = (start + i) % n;
    double point = scan.roots[k] + (k < start ? 1.0 : 0.0);
    profile.points.push_back(point);
    profile.is_max.push_back(scan.root_is_max[k]);
  }
  if (!profile.is_max.front())
    raise(ErrorCode::NotMultimodal, "labeling did not start at a maximum");
  for (std::size_t i = 0; i < n; ++i) {
    if (profile.is_max[i] != (i % 2 == 0))
      raise(ErrorCode::NotMultimodal, "labels do not alternate");
    profile.values_raw.push_back(lift_value(profile.points[i], mu, kappa));
  }
  profile.gauge_shift =
      static_cast<int>(std::floor(profile.values_raw[0] - profile.points[0]));
  return profile;
}

double first_max_position(const ParameterPoint& mu, const KappaVector& kappa) {
  const ScanResult scan = scan_critical_points(mu, kappa);
  for (std::size_t i = 0; i < scan.roots.size(); ++i)
    if (scan.root_is_max[i]) return scan.roots[i];
  raise(ErrorCode::NotMultimodal, "no maxima found");
}

ParameterPoint seed_parameters(int m, const KappaVector& kappa,
                               const std::vector<double>& eta_guesses, double start_radius) {
  if (static_cast<int>(eta_guesses.size()) != m)
    raise(ErrorCode::InvalidArgument, "need m angle guesses");
  if (eta_guesses[0] != 0.0)
    raise(ErrorCode::InvalidArgument, "first angle guess must be 0");
  if (!(start_radius > 1.0))
    raise(ErrorCode::InvalidArgument, "seed radius must exceed 1");
  for (std::size_t i = 0; i < eta_guesses.size(); ++i)
    for (std::size_t j = i + 1; j < eta_guesses.size(); ++j)
      if (circle_dist(eta_guesses[i], eta_guesses[j]) < 1e-9)
        raise(ErrorCode::SeedFailure, "angle guesses must be distinct mod 1");

  double r = start_radius;
  for (int attempt = 0; attempt < 60; ++attempt) {
    std::vector<double> radii(static_cast<std::size_t>(m), r);
    ParameterPoint mu(0.0, radii, eta_guesses);
    if (is_in_Delta(mu, kappa)) return mu;
    r = 1.0 + 0.5 * (r - 1.0);
  }
  raise(ErrorCode::SeedFailure, "no multimodal radius found after 60 halvings");
}

PhiResult compute_phi_full(const ParameterPoint& mu, const KappaVector& kappa,
                           const Anchor& anchor) {
  PhiResult out;
  out.profile = find_critical_points(mu, kappa, anchor);
  out.v.v = out.profile.normalized_values();
  return out;
}

TargetVector compute_phi(const ParameterPoint& mu, const KappaVector& kappa,
                         const Anchor& anchor) {
  return compute_phi_full(mu, kappa, anchor).v;
}

TypeVector compute_type(const TargetVector& tv) {
  const auto& v = tv.v;
  const int m2 = static_cast<int>(v.size());
  TypeVector type;
  for (int j = 1; j <= m2 - 1; ++j) {
    const double diff = v[static_cast<std::size_t>(j)] - v[static_cast<std::size_t>(j - 1)];
    if (!(((j % 2 == 1) ? -diff : diff) > 0.0))
      raise(ErrorCode::NotAlternating, "critical values do not alternate");
    const double len = std::fabs(diff);
    const double nearest = std::round(len);
    const int count = (std::fabs(len - nearest) < 1e-9) ? static_cast<int>(nearest)
                                                        : static_cast<int>(std::floor(len));
    type.tau.push_back((j % 2 == 1) ? -count : count);
  }
  return type;
}

RiemannHurwitzReport riemann_hurwitz_report(const ParameterPoint& mu, const KappaVector& kappa,
                                            const Anchor& anchor) {
  RiemannHurwitzReport rep;
  rep.two_dB_minus_2 = 2 * kappa.sphere_degree() - 2;
  rep.off_circle_budget = 2 * (kappa.k0() - 1);
  for (int j = 1; j <= kappa.m(); ++j) rep.off_circle_budget += 2 * (kappa.k(j) - 1);
  rep.residual = rep.two_dB_minus_2 - rep.off_circle_budget;
  const CriticalProfile profile = find_critical_points(mu, kappa, anchor);
  rep.observed_circle_count = static_cast<int>(profile.points.size());
  rep.balanced = rep.residual == 2 * kappa.m() && rep.observed_circle_count == rep.residual;
  return rep;
}

std::vector<double> gap_vector(const CriticalProfile& profile, const KappaVector& kappa) {
  std::vector<double> gaps;
  for (int j = 1; j <= profile.m; ++j) {
    const double g = profile.values_raw[static_cast<std::size_t>(2 * j - 2)] -
                     profile.values_raw[static_cast<std::size_t>(2 * j - 1)];
    if (!(g > 0.0 && g < kappa.k(j))) {
      std::ostringstream os;
      os << "gap " << j << " = " << g << " outside (0," << kappa.k(j)
         << "); labeling or root finding is inconsistent";
      raise(ErrorCode::GapViolation, os.str());
    }
    gaps.push_back(g);
  }
  return gaps;
}

}  // namespace blaschke

#include "blaschke/family.hpp"

#include <cmath>
#include <numeric>

namespace blaschke {

const char* error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::NotMultimodal: return "NotMultimodal";
    case ErrorCode::DegenerateCritical: return "DegenerateCritical";
    case ErrorCode::SeedFailure: return "SeedFailure";
    case ErrorCode::NotAlternating: return "NotAlternating";
    case ErrorCode::GapViolation: return "GapViolation";
    case ErrorCode::TargetOutsideV: return "TargetOutsideV";
    case ErrorCode::ContinuationStall: return "ContinuationStall";
    case ErrorCode::TypeUnrealizable: return "TypeUnrealizable";
    case ErrorCode::DegenerateConfiguration: return "DegenerateConfiguration";
    case ErrorCode::InvalidCombinatorics: return "InvalidCombinatorics";
    case ErrorCode::BranchMismatch: return "BranchMismatch";
    case ErrorCode::TraceLost: return "TraceLost";
    case ErrorCode::EndpointMismatch: return "EndpointMismatch";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::IoError: return "IoError";
  }
  return "UnknownError";
}

double wrap_turn(double t) {
  double w = t - std::floor(t);
  if (w >= 1.0) w -= 1.0;  // guards against t = -1e-17 rounding to 1.0
  return w;
}

double circle_dist(double a, double b) {
  double d = std::fabs(wrap_turn(a) - wrap_turn(b));
  return std::min(d, 1.0 - d);
}

KappaVector::KappaVector(int k0, std::vector<int> k) : k0_(k0), k_(std::move(k)) {
  if (k_.empty()) raise(ErrorCode::InvalidArgument, "kappa needs at least one k_j");
  if (k0_ < 2) raise(ErrorCode::InvalidArgument, "k0 must be >= 2");
  for (int kj : k_) {
    if (kj < 1) raise(ErrorCode::InvalidArgument, "all k_j must be >= 1");
  }
}

int KappaVector::sum_k() const { return std::accumulate(k_.begin(), k_.end(), 0); }
int KappaVector::degree() const { return k0_ - sum_k(); }
int KappaVector::sphere_degree() const { return k0_ + sum_k(); }

ParameterPoint::ParameterPoint(double eta0, std::vector<double> radii, std::vector<double> etas)
    : eta0_(eta0), r_(std::move(radii)), eta_(std::move(etas)) {
  if (r_.empty() || r_.size() != eta_.size())
    raise(ErrorCode::InvalidArgument, "need matching radius/angle lists");
  if (eta_[0] != 0.0) raise(ErrorCode::InvalidArgument, "eta_1 must be 0 (a1 is real)");
  for (std::size_t j = 0; j < r_.size(); ++j) {
    if (!(r_[j] > 1.0))
      raise(ErrorCode::InvalidArgument, "all radii must exceed 1 (zeros outside the disk)");
  }
  // Angles stay as given: the lift is linear in eta_0 and in each eta_j, so
  // reducing mod 1 here would put jumps at the wrap boundary inside finite
  // difference stencils.  Reduction happens at presentation time.
}

ParameterPoint ParameterPoint::from_vector(const std::vector<double>& v) {
  if (v.size() < 2 || v.size() % 2 != 0)
    raise(ErrorCode::InvalidArgument, "parameter vector must have even size >= 2");
  const int m = static_cast<int>(v.size()) / 2;
  std::vector<double> radii(static_cast<std::size_t>(m));
  std::vector<double> etas(static_cast<std::size_t>(m), 0.0);
  radii[0] = v[1];
  for (int j = 2; j <= m; ++j) {
    radii[static_cast<std::size_t>(j - 1)] = v[static_cast<std::size_t>(2 * j - 2)];
    etas[static_cast<std::size_t>(j - 1)] = v[static_cast<std::size_t>(2 * j - 1)];
  }
  return ParameterPoint(v[0], std::move(radii), std::move(etas));
}

std::vector<double> ParameterPoint::to_vector() const {
  std::vector<double> v;
  v.reserve(static_cast<std::size_t>(2 * m()));
  v.push_back(eta0_);
  v.push_back(r_[0]);
  for (int j = 2; j <= m(); ++j) {
    v.push_back(r(j));
    v.push_back(eta(j));
  }
  return v;
}

Complex ParameterPoint::pole(int j) const {
  const double rj = r(j);
  const double ang = kTau * eta(j);
  return Complex{rj * std::cos(ang), rj * std::sin(ang)};
}

namespace {

Complex unit(double t) {
  const double a = kTau * t;
  return Complex{std::cos(a), std::sin(a)};
}

Complex ipow(Complex z, int n) {
  if (n == 0) return Complex{1.0, 0.0};
  bool inv = n < 0;
  unsigned e = static_cast<unsigned>(inv ? -n : n);
  Complex acc{1.0, 0.0};
  Complex base = z;
  while (e) {
    if (e & 1u) acc *= base;
    base *= base;
    e >>= 1;
  }
  return inv ? 1.0 / acc : acc;
}

}  // namespace

SpherePoint eval_B(const SpherePoint& zp, const ParameterPoint& mu, const KappaVector& kappa) {
  if (zp.at_infinity) return SpherePoint::infinity();  // k0 >= 2, so B(inf) = inf
  const Complex z = zp.z;
  Complex val = ipow(z, kappa.k0()) * unit(mu.eta0());
  for (int j = 1; j <= kappa.m(); ++j) {
    const Complex aj = mu.pole(j);
    const Complex den = 1.0 - std::conj(aj) * z;
    if (den == 0.0) return SpherePoint::infinity();
    val *= ipow((z - aj) / den, kappa.k(j));
  }
  if (!std::isfinite(val.real()) || !std::isfinite(val.imag()))
    return SpherePoint::infinity();
  return SpherePoint::finite(val);
}

Complex log_derivative_B(Complex z, const ParameterPoint& mu, const KappaVector& kappa) {
  Complex sum = static_cast<double>(kappa.k0()) / z;
  for (int j = 1; j <= kappa.m(); ++j) {
    const Complex aj = mu.pole(j);
    sum += static_cast<double>(kappa.k(j)) *
           (1.0 / (z - aj) + std::conj(aj) / (1.0 - std::conj(aj) * z));
  }
  return sum;
}

SpherePoint eval_B_prime(const SpherePoint& zp, const ParameterPoint& mu, const KappaVector& kappa) {
  if (zp.at_infinity) raise(ErrorCode::InvalidArgument, "derivative requested at a pole of B");
  const Complex z = zp.z;
  for (int j = 1; j <= kappa.m(); ++j) {
    if (1.0 - std::conj(mu.pole(j)) * z == 0.0)
      raise(ErrorCode::InvalidArgument, "derivative requested at a pole of B");
  }
  if (z == 0.0) return SpherePoint::finite(Complex{0.0, 0.0});  // k0 >= 2
  const SpherePoint b = eval_B(zp, mu, kappa);
  return SpherePoint::finite(b.z * log_derivative_B(z, mu, kappa));
}

double lift_value(double t, const ParameterPoint& mu, const KappaVector& kappa) {
  const Complex z = unit(t);
  double val = mu.eta0() + kappa.k0() * t;
  for (int j = 1; j <= kappa.m(); ++j) {
    // phi_j(t) = eta_j + 1/2 + Arg(1 - z/a_j)/(2 pi); Re(1 - z/a_j) > 0.
    const double phi = mu.eta(j) + 0.5 + std::arg(1.0 - z / mu.pole(j)) / kTau;
    val += kappa.k(j) * (2.0 * phi - t);
  }
  return val;
}

double lift_derivative(double t, const ParameterPoint& mu, const KappaVector& kappa) {
  double val = kappa.k0();
  for (int j = 1; j <= kappa.m(); ++j) {
    const double rj = mu.r(j);
    const double dj = 1.0 + rj * rj - 2.0 * rj * std::cos(kTau * (t - mu.eta(j)));
    val -= kappa.k(j) * (rj * rj - 1.0) / dj;
  }
  return val;
}

double lift_second_derivative(double t, const ParameterPoint& mu, const KappaVector& kappa) {
  double val = 0.0;
  for (int j = 1; j <= kappa.m(); ++j) {
    const double rj = mu.r(j);
    const double s = std::sin(kTau * (t - mu.eta(j)));
    const double dj = 1.0 + rj * rj - 2.0 * rj * std::cos(kTau * (t - mu.eta(j)));
    val += kappa.k(j) * (rj * rj - 1.0) * 2.0 * kTau * rj * s / (dj * dj);
  }
  return val;
}

}  // namespace blaschke

#pragma once

#include <complex>
#include <vector>

#include "blaschke/errors.hpp"

namespace blaschke {

using Complex = std::complex<double>;

inline constexpr double kTau = 6.283185307179586476925286766559;  // 2*pi

// Reduce an angle measured in turns to [0,1).
double wrap_turn(double t);

// Distance on R/Z.
double circle_dist(double a, double b);

// Point on the Riemann sphere; infinity carried as an explicit flag so that
// evaluation near poles stays total.
struct SpherePoint {
  Complex z{0.0, 0.0};
  bool at_infinity = false;

  static SpherePoint infinity() { return SpherePoint{Complex{}, true}; }
  static SpherePoint finite(Complex w) { return SpherePoint{w, false}; }
};

// Exponent vector kappa = (k0, k1, ..., km).
class KappaVector {
 public:
  KappaVector(int k0, std::vector<int> k);

  int k0() const { return k0_; }
  const std::vector<int>& k() const { return k_; }
  int k(int j) const { return k_.at(static_cast<std::size_t>(j) - 1); }  // 1-based
  int m() const { return static_cast<int>(k_.size()); }

  // Topological degree of the circle restriction, d = k0 - sum k_j.
  int degree() const;
  // Degree of B on the sphere, d_B = k0 + sum k_j.
  int sphere_degree() const;
  int sum_k() const;

 private:
  int k0_;
  std::vector<int> k_;
};

// mu = (eta0, a1, r2, eta2, ..., rm, etam).  Angles are in turns and stored
// as given (the lift depends on them linearly, so reduction mod 1 belongs at
// presentation time, not inside evaluation); all radii exceed 1 (the zeros
// a_j lie outside the closed unit disk).
class ParameterPoint {
 public:
  ParameterPoint(double eta0, std::vector<double> radii, std::vector<double> etas);

  // Pack/unpack the real coordinate vector used by the continuation solver.
  static ParameterPoint from_vector(const std::vector<double>& v);
  std::vector<double> to_vector() const;

  double eta0() const { return eta0_; }
  int m() const { return static_cast<int>(r_.size()); }
  double r(int j) const { return r_.at(static_cast<std::size_t>(j) - 1); }  // 1-based
  double eta(int j) const { return eta_.at(static_cast<std::size_t>(j) - 1); }
  double a1() const { return r_[0]; }
  Complex pole(int j) const;  // a_j = r_j e^{2 pi i eta_j}

 private:
  double eta0_;
  std::vector<double> r_;
  std::vector<double> eta_;
};

// B_{mu kappa}(z) = e^{2 pi i eta0} z^{k0} prod_j ((z - a_j)/(1 - conj(a_j) z))^{k_j}.
// Poles (z = 1/conj(a_j), z = infinity) map to the infinity flag.
SpherePoint eval_B(const SpherePoint& z, const ParameterPoint& mu, const KappaVector& kappa);

// Logarithmic derivative B'/B = k0/z + sum_j k_j [ 1/(z-a_j) + conj(a_j)/(1-conj(a_j)z) ].
Complex log_derivative_B(Complex z, const ParameterPoint& mu, const KappaVector& kappa);

// Complex derivative of B.  Domain error at the poles of B.
SpherePoint eval_B_prime(const SpherePoint& z, const ParameterPoint& mu, const KappaVector& kappa);

// Canonical lift F of the circle restriction:
//   F(t) = eta0 + k0 t + sum_j k_j (2 phi_j(t) - t),
// with phi_j(t) = eta_j + 1/2 + Arg(1 - e^{2 pi i t}/a_j)/(2 pi).  The quotient
// e^{2 pi i t}/a_j has modulus < 1, so 1 - e^{2 pi i t}/a_j stays in the open
// right half-plane and the principal branch is globally continuous: the lift
// is single-valued with no unwrapping state, and F(t+1) = F(t) + d exactly.
double lift_value(double t, const ParameterPoint& mu, const KappaVector& kappa);

// F'(t) = k0 - sum_j k_j (r_j^2 - 1)/|e^{2 pi i t} - a_j|^2.
double lift_derivative(double t, const ParameterPoint& mu, const KappaVector& kappa);

// F''(t) = sum_j k_j (r_j^2 - 1) * 4 pi r_j sin(2 pi (t - eta_j)) / D_j^2,
// D_j = |e^{2 pi i t} - a_j|^2.
double lift_second_derivative(double t, const ParameterPoint& mu, const KappaVector& kappa);

}  // namespace blaschke

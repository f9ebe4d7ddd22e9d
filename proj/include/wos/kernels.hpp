#pragma once

#include "wos/rng.hpp"
#include "wos/types.hpp"

namespace wos {

/// Radial kernels of the screened operator (Delta - c) on the ball B(0, R) in
/// R^n with zero Dirichlet data: Green's function for a unit source at the
/// center (sign convention -Delta G + c G = delta, so G > 0), the mean-value
/// weights used by walk on spheres, and the center gradient of the ball's
/// Green's function for an off-center source.
///
/// c = 0 uses the classical closed forms; c > 0 uses modified Bessel
/// functions of order n/2 - 1 (n = 3 has an elementary sinh form).
class ScreenedBallKernel {
 public:
  ScreenedBallKernel(int dim, double screening, double radius);

  int dim() const { return dim_; }
  double screening() const { return c_; }
  double radius() const { return radius_; }

  /// G(r), 0 < r < R.
  double green(double r) const;

  /// dG/dr, 0 < r < R.
  double green_grad_radial(double r) const;

  /// Mass of the screened Poisson kernel of the ball: the mean-value weight
  /// C(R) with u(center) = C(R) * mean_{sphere} u for homogeneous solutions.
  /// Equals 1 iff c = 0.
  double norm_constant() const;

  /// Weight w(R) of the boundary term in the gradient estimator,
  /// grad u(center) = (n / R) * w(R) * E[u(y) v(y)]. Equals 1 iff c = 0.
  double gradient_boundary_weight() const;

  /// Magnitude of grad_x G_B(x, z) at x = center for a source at distance r,
  /// pointing from the center toward the source. Vanishes at r = R.
  double source_gradient(double r) const;

 private:
  void check_radius(double r) const;

  int dim_;
  double c_;
  double radius_;
  double sqrt_c_;
  double order_;  // nu = n/2 - 1
};

/// Volume of the n-ball of radius R.
double ball_volume(int n, double radius);

/// Surface area of the unit sphere S^{n-1}.
double unit_sphere_area(int n);

/// Uniform direction on S^{n-1}.
Vector sample_sphere(int n, Rng& rng);

/// Uniform point in the unit n-ball.
Vector sample_ball(int n, Rng& rng);

namespace bessel {

/// Normalized regular series S_nu(x) = Gamma(nu+1) (2/x)^nu I_nu(x)
///   = sum_k (x^2/4)^k / (k! (nu+1)_k),   S_nu(0) = 1.
double normalized_i(double nu, double x);

}  // namespace bessel

}  // namespace wos

#include "wos/kernels.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <string>

namespace wos {

namespace {

constexpr double kPi = std::numbers::pi;

// Beyond this argument the regular-solution coefficient K_nu(sR)/I_nu(sR) is
// below e^-700 and is dropped.
constexpr double kNegligibleRatioArg = 350.0;

// Power series is used up to this argument, std::cyl_bessel_i beyond.
constexpr double kSeriesLimit = 25.0;

// sinh(a)/sinh(b) and cosh(a)/sinh(b) for 0 <= a <= b without overflow.
double sinh_ratio(double a, double b) {
  return std::exp(a - b) * std::expm1(-2.0 * a) / std::expm1(-2.0 * b);
}
double cosh_sinh_ratio(double a, double b) {
  return std::exp(a - b) * (1.0 + std::exp(-2.0 * a)) / -std::expm1(-2.0 * b);
}

}  // namespace

namespace bessel {

double normalized_i(double nu, double x) {
  if (x < 0.0) throw DomainError("normalized_i: negative argument");
  if (x <= kSeriesLimit) {
    const double t = 0.25 * x * x;
    double term = 1.0;
    double sum = 1.0;
    for (int k = 1; k < 500; ++k) {
      term *= t / (k * (nu + k));
      sum += term;
      if (term < 1e-17 * sum) break;
    }
    return sum;
  }
  // Gamma(nu+1) (2/x)^nu I_nu(x), assembled in log space.
  const double i = std::cyl_bessel_i(nu, x);
  if (!std::isfinite(i)) return std::numeric_limits<double>::infinity();
  return std::exp(std::lgamma(nu + 1.0) + nu * std::log(2.0 / x)) * i;
}

}  // namespace bessel

double unit_sphere_area(int n) {
  if (n < 1) throw DomainError("unit_sphere_area: dimension must be >= 1");
  return 2.0 * std::pow(kPi, 0.5 * n) / std::tgamma(0.5 * n);
}

double ball_volume(int n, double radius) {
  if (n < 1) throw DomainError("ball_volume: dimension must be >= 1");
  if (!(radius > 0.0)) throw DomainError("ball_volume: radius must be positive");
  return std::pow(kPi, 0.5 * n) * std::pow(radius, n) / std::tgamma(0.5 * n + 1.0);
}

Vector sample_sphere(int n, Rng& rng) {
  Vector v(n);
  double norm2 = 0.0;
  do {
    for (int i = 0; i < n; ++i) v[i] = rng.normal();
    norm2 = v.squaredNorm();
  } while (norm2 == 0.0);
  return v / std::sqrt(norm2);
}

Vector sample_ball(int n, Rng& rng) {
  const double r = std::pow(rng.uniform(), 1.0 / n);
  return r * sample_sphere(n, rng);
}

// ---------------------------------------------------------------------------

ScreenedBallKernel::ScreenedBallKernel(int dim, double screening, double radius)
    : dim_(dim),
      c_(screening),
      radius_(radius),
      sqrt_c_(std::sqrt(screening)),
      order_(0.5 * dim - 1.0) {
  if (dim < 2 || dim > kMaxDim) throw DomainError("kernel dimension out of range: " + std::to_string(dim));
  if (!(screening >= 0.0) || !std::isfinite(screening)) throw DomainError("screening must be finite and >= 0");
  if (!(radius > 0.0)) throw DomainError("kernel radius must be positive");
}

void ScreenedBallKernel::check_radius(double r) const {
  if (!(r > 0.0 && r < radius_)) {
    throw DomainError("kernel evaluated at r=" + std::to_string(r) + " outside (0, " +
                      std::to_string(radius_) + ")");
  }
}

double ScreenedBallKernel::green(double r) const {
  check_radius(r);
  const double R = radius_;
  const int n = dim_;
  if (c_ == 0.0) {
    if (n == 2) return std::log(R / r) / (2.0 * kPi);
    return (std::pow(r, 2.0 - n) - std::pow(R, 2.0 - n)) / ((n - 2) * unit_sphere_area(n));
  }
  const double s = sqrt_c_;
  if (n == 3) return sinh_ratio(s * (R - r), s * R) / (4.0 * kPi * r);

  const double nu = order_;
  const double amp = std::pow(s, nu) / std::pow(2.0 * kPi, 0.5 * n) * std::pow(r, -nu);
  double value = std::cyl_bessel_k(nu, s * r);
  if (s * R < kNegligibleRatioArg) {
    value -= std::cyl_bessel_k(nu, s * R) / std::cyl_bessel_i(nu, s * R) * std::cyl_bessel_i(nu, s * r);
  }
  return amp * value;
}

double ScreenedBallKernel::green_grad_radial(double r) const {
  check_radius(r);
  const double R = radius_;
  const int n = dim_;
  if (c_ == 0.0) {
    if (n == 2) return -1.0 / (2.0 * kPi * r);
    return -std::pow(r, 1.0 - n) / unit_sphere_area(n);
  }
  const double s = sqrt_c_;
  if (n == 3) {
    // d/dr [sinh(s(R-r)) / r] / (4 pi sinh(sR))
    const double a = s * (R - r);
    const double b = s * R;
    return -(s * r * cosh_sinh_ratio(a, b) + sinh_ratio(a, b)) / (4.0 * kPi * r * r);
  }

  const double nu = order_;
  const double amp = std::pow(s, nu + 1.0) / std::pow(2.0 * kPi, 0.5 * n) * std::pow(r, -nu);
  double value = std::cyl_bessel_k(nu + 1.0, s * r);
  if (s * R < kNegligibleRatioArg) {
    value += std::cyl_bessel_k(nu, s * R) / std::cyl_bessel_i(nu, s * R) * std::cyl_bessel_i(nu + 1.0, s * r);
  }
  return -amp * value;
}

double ScreenedBallKernel::norm_constant() const {
  if (c_ == 0.0) return 1.0;
  const double x = sqrt_c_ * radius_;
  if (dim_ == 3) return 2.0 * x * std::exp(-x) / -std::expm1(-2.0 * x);
  return 1.0 / bessel::normalized_i(order_, x);
}

double ScreenedBallKernel::gradient_boundary_weight() const {
  if (c_ == 0.0) return 1.0;
  return 1.0 / bessel::normalized_i(order_ + 1.0, sqrt_c_ * radius_);
}

double ScreenedBallKernel::source_gradient(double r) const {
  check_radius(r);
  const double R = radius_;
  const int n = dim_;
  if (c_ == 0.0) return (std::pow(r, 1.0 - n) - r / std::pow(R, n)) / unit_sphere_area(n);

  // Outer l=1 solution vanishing at R, normalized to match the singular part
  // of the free-space kernel.
  const double s = sqrt_c_;
  const double nu = order_;
  const double amp = std::pow(s, nu + 1.0) / std::pow(2.0 * kPi, 0.5 * n) * std::pow(r, -nu);
  double value = std::cyl_bessel_k(nu + 1.0, s * r);
  if (s * R < kNegligibleRatioArg) {
    value -= std::cyl_bessel_k(nu + 1.0, s * R) / std::cyl_bessel_i(nu + 1.0, s * R) *
             std::cyl_bessel_i(nu + 1.0, s * r);
  }
  return amp * value;
}

}  // namespace wos

#pragma once

// Test-side oracle for the radial kernels: RK4 integration of the radial
// screened equation
//   f'' + (n - 1)/r f' - (l (l + n - 2)/r^2 + c) f = 0
// for angular mode l = 0 and l = 1, without any special functions.

#include <cmath>
#include <functional>
#include <numbers>

namespace oracle {

struct State {
  double f;
  double df;
};

inline double sphere_area(int n) { return 2.0 * std::pow(std::numbers::pi, 0.5 * n) / std::tgamma(0.5 * n); }

// Integrates from (r0, s0) to r1 with `steps` RK4 steps.
inline State rk4(int n, int l, double c, double r0, State s0, double r1, int steps) {
  const double lam = l * (l + n - 2.0);
  auto rhs = [&](double r, const State& s) {
    return State{s.df, -(n - 1.0) / r * s.df + (lam / (r * r) + c) * s.f};
  };
  const double h = (r1 - r0) / steps;
  State s = s0;
  double r = r0;
  for (int i = 0; i < steps; ++i) {
    const State k1 = rhs(r, s);
    const State k2 = rhs(r + h / 2, {s.f + h / 2 * k1.f, s.df + h / 2 * k1.df});
    const State k3 = rhs(r + h / 2, {s.f + h / 2 * k2.f, s.df + h / 2 * k2.df});
    const State k4 = rhs(r + h, {s.f + h * k3.f, s.df + h * k3.df});
    s.f += h / 6 * (k1.f + 2 * k2.f + 2 * k3.f + k4.f);
    s.df += h / 6 * (k1.df + 2 * k2.df + 2 * k3.df + k4.df);
    r += h;
  }
  return s;
}

// Regular solution at r, normalized like r^l near the origin. Started from a
// short power series.
inline State regular(int n, int l, double c, double r, int steps = 40000) {
  const double r0 = 1e-4 * r;
  // f = r^l (1 + a r^2 + b r^4), a = c / (2 (2l + n)), b = a c / (4 (2l + n + 2))
  const double m = 2.0 * l + n;
  const double a = c / (2.0 * m);
  const double b = a * c / (4.0 * (m + 2.0));
  const double rl = std::pow(r0, l);
  const double f = rl * (1 + a * r0 * r0 + b * std::pow(r0, 4));
  const double df = (l > 0 ? l * std::pow(r0, l - 1) * (1 + a * r0 * r0 + b * std::pow(r0, 4)) : 0.0) +
                    rl * (2 * a * r0 + 4 * b * std::pow(r0, 3));
  return rk4(n, l, c, r0, {f, df}, r, steps);
}

// Solution with f(R) = 0, f'(R) = 1, integrated inward to r.
inline State outer(int n, int l, double c, double R, double r, int steps = 40000) {
  return rk4(n, l, c, R, {0.0, 1.0}, r, steps);
}

// Ball Green's function with the singularity at the center, -Lap G + c G = delta.
// The Wronskian of the regular and outer solutions fixes the unit flux.
inline double green(int n, double c, double R, double r) {
  const double pR = regular(n, 0, c, R).f;
  return -outer(n, 0, c, R, r).f / (sphere_area(n) * std::pow(R, n - 1) * pR);
}

inline double green_grad(int n, double c, double R, double r) {
  const double pR = regular(n, 0, c, R).f;
  return -outer(n, 0, c, R, r).df / (sphere_area(n) * std::pow(R, n - 1) * pR);
}

// u(0) = C(R) * mean over the sphere for a radial homogeneous solution.
inline double norm_constant(int n, double c, double R) { return 1.0 / regular(n, 0, c, R).f; }

// x_1 h(r) with h regular is homogeneous; grad u(0) = e_1 and the sphere mean
// of u v_1 is R h(R) / n, which fixes the weight of the boundary term.
inline double gradient_boundary_weight(int n, double c, double R) {
  return 1.0 / (regular(n, 1, c, R).f / R);
}

// |grad_x G_B(x, z)| at the center for |z| = r, from the l = 1 mode of the
// Green's function.
inline double source_gradient(int n, double c, double R, double r) {
  const double f1R = regular(n, 1, c, R).f;
  const double f2r = outer(n, 1, c, R, r).f;
  return -n * f2r / (sphere_area(n) * std::pow(R, n - 1) * f1R);
}

}  // namespace oracle

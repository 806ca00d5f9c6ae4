#ifndef STEKLOV_ODE_HPP
#define STEKLOV_ODE_HPP

#include <Eigen/Dense>

#include <cmath>
#include <stdexcept>

namespace steklov {

struct ode_failure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Adaptive Cash-Karp 4(5) integration of y' = f(t, y) from t0 to t1.
/// State is a fixed-size Eigen vector; f returns the derivative.
template <int N, class F>
Eigen::Matrix<double, N, 1> integrate_ode(F&& f, double t0, double t1,
                                          Eigen::Matrix<double, N, 1> y,
                                          double rel_tol = 1e-10,
                                          double abs_tol = 1e-12) {
  using Vec = Eigen::Matrix<double, N, 1>;
  static constexpr double a2 = 0.2, a3 = 0.3, a4 = 0.6, a5 = 1.0, a6 = 0.875;
  static constexpr double b21 = 0.2;
  static constexpr double b31 = 3.0 / 40.0, b32 = 9.0 / 40.0;
  static constexpr double b41 = 0.3, b42 = -0.9, b43 = 1.2;
  static constexpr double b51 = -11.0 / 54.0, b52 = 2.5, b53 = -70.0 / 27.0,
                          b54 = 35.0 / 27.0;
  static constexpr double b61 = 1631.0 / 55296.0, b62 = 175.0 / 512.0,
                          b63 = 575.0 / 13824.0, b64 = 44275.0 / 110592.0,
                          b65 = 253.0 / 4096.0;
  static constexpr double c1 = 37.0 / 378.0, c3 = 250.0 / 621.0,
                          c4 = 125.0 / 594.0, c6 = 512.0 / 1771.0;
  static constexpr double d1 = c1 - 2825.0 / 27648.0,
                          d3 = c3 - 18575.0 / 48384.0,
                          d4 = c4 - 13525.0 / 55296.0,
                          d5 = -277.0 / 14336.0, d6 = c6 - 0.25;

  const double dir = (t1 >= t0) ? 1.0 : -1.0;
  double t = t0;
  double h = dir * std::max(1e-8, 1e-2 * std::abs(t1 - t0));
  long steps = 0;
  while (dir * (t1 - t) > 0.0) {
    if (++steps > 2000000) throw ode_failure("integrate_ode: step limit exceeded");
    if (dir * (t + h - t1) > 0.0) h = t1 - t;
    Vec k1 = f(t, y);
    Vec k2 = f(t + a2 * h, Vec(y + h * b21 * k1));
    Vec k3 = f(t + a3 * h, Vec(y + h * (b31 * k1 + b32 * k2)));
    Vec k4 = f(t + a4 * h, Vec(y + h * (b41 * k1 + b42 * k2 + b43 * k3)));
    Vec k5 = f(t + a5 * h, Vec(y + h * (b51 * k1 + b52 * k2 + b53 * k3 + b54 * k4)));
    Vec k6 = f(t + a6 * h,
               Vec(y + h * (b61 * k1 + b62 * k2 + b63 * k3 + b64 * k4 + b65 * k5)));
    Vec y5 = y + h * (c1 * k1 + c3 * k3 + c4 * k4 + c6 * k6);
    Vec err = h * (d1 * k1 + d3 * k3 + d4 * k4 + d5 * k5 + d6 * k6);
    double scale = 0.0;
    for (int i = 0; i < N; ++i) {
      double tol = abs_tol + rel_tol * std::max(std::abs(y[i]), std::abs(y5[i]));
      scale = std::max(scale, std::abs(err[i]) / tol);
    }
    if (!std::isfinite(scale) || !y5.allFinite())
      throw ode_failure("integrate_ode: solution blow-up");
    if (scale <= 1.0) {
      t += h;
      y = y5;
      double grow = (scale > 1e-10) ? 0.9 * std::pow(scale, -0.2) : 5.0;
      h *= std::min(5.0, grow);
    } else {
      h *= std::max(0.1, 0.9 * std::pow(scale, -0.25));
      if (std::abs(h) < 1e-15 * (1.0 + std::abs(t)))
        throw ode_failure("integrate_ode: step size underflow");
    }
  }
  return y;
}

}  // namespace steklov

#endif

#ifndef STEKLOV_POWER_SERIES_HPP
#define STEKLOV_POWER_SERIES_HPP

#include <Eigen/Dense>

#include <cmath>
#include <limits>
#include <stdexcept>

namespace steklov {

/// Truncated power series around r = 0 with a certified evaluation radius.
/// coeffs[i] is the coefficient of r^i.
struct PowerSeries {
  Eigen::VectorXd coeffs;
  double radius_hint = 0.0;  // largest radius at which the tail bound holds
  double cert_radius = 0.0;  // radius R used in the sup_i |xi_i| R^i bound
  double cert_bound = 0.0;   // the bound sup_i |xi_i| R^i itself

  int truncation() const { return static_cast<int>(coeffs.size()) - 1; }

  double eval(double r) const {
    double acc = 0.0;
    for (int i = truncation(); i >= 0; --i) acc = acc * r + coeffs[i];
    return acc;
  }

  double eval_derivative(double r) const {
    double acc = 0.0;
    for (int i = truncation(); i >= 1; --i) acc = acc * r + i * coeffs[i];
    return acc;
  }

  /// Geometric tail estimate at radius r from the certified bound.
  double tail_bound(double r) const {
    if (cert_radius <= 0.0) return 0.0;  // terminating series
    double q = r / cert_radius;
    if (q >= 1.0) return std::numeric_limits<double>::infinity();
    return cert_bound * std::pow(q, truncation() + 1) / (1.0 - q);
  }
};

}  // namespace steklov

#endif

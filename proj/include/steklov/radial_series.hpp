#ifndef STEKLOV_RADIAL_SERIES_HPP
#define STEKLOV_RADIAL_SERIES_HPP

#include <Eigen/Dense>

#include <cmath>
#include <functional>
#include <stdexcept>

#include "steklov/model_space.hpp"
#include "steklov/ode.hpp"
#include "steklov/power_series.hpp"

namespace steklov {

struct unsupported_mode : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct truncation_too_small : std::runtime_error {
  using std::runtime_error::runtime_error;
};

namespace series_detail {

inline double zeta_even(int n2) {  // zeta(n2) for even n2 >= 2
  const double s = n2;
  const int K = 25;
  double acc = 0.0;
  for (int k = 1; k < K; ++k) acc += std::pow(static_cast<double>(k), -s);
  // Euler-Maclaurin tail at K
  const double Ks = std::pow(static_cast<double>(K), -s);
  acc += 0.5 * Ks + K * Ks / (s - 1.0);
  static constexpr double b2j_over_fact[4] = {1.0 / 12.0, -1.0 / 720.0,
                                              1.0 / 30240.0, -1.0 / 1209600.0};
  double rising = s;        // s (s+1) ... (s+2j-2)
  double Kpow = Ks / K;     // K^{-s-2j+1}
  for (int j = 0; j < 4; ++j) {
    acc += b2j_over_fact[j] * rising * Kpow;
    rising *= (s + 2 * j + 1) * (s + 2 * j + 2);
    Kpow /= static_cast<double>(K) * K;
  }
  return acc;
}

/// Coefficient of r^{2n} in r*cot(r): 1 for n = 0, -2 zeta(2n)/pi^{2n} else.
inline double rcot_coeff(int n) {
  if (n == 0) return 1.0;
  return -2.0 * zeta_even(2 * n) * std::pow(M_PI, -2.0 * n);
}

/// Coefficient of r^{2n} in r*coth(r): alternating version of rcot.
inline double rcoth_coeff(int n) {
  if (n == 0) return 1.0;
  return (n % 2 == 1 ? 1.0 : -1.0) * 2.0 * zeta_even(2 * n) *
         std::pow(M_PI, -2.0 * n);
}

/// Coefficient of r^{2n} in r*tanh(r) = sum rcoth_n (4^n - 1) r^{2n}.
inline double rtanh_coeff(int n) {
  if (n == 0) return 0.0;
  return rcoth_coeff(n) * (std::pow(4.0, n) - 1.0);
}

}  // namespace series_detail

/// One radial mode: spherical-harmonic degree p, the Euclidean-sphere
/// eigenvalue lambda_c = p(p+m-2), and the radial eigenvalue function
/// lambda(r) of the geodesic sphere S_r.
struct ModeSpec {
  int p = 1;
  double lambda_c = 0.0;
  std::function<double(double)> lambda_r;
};

inline ModeSpec make_mode(const ModelSpace& sp, int p) {
  if (p < 0) throw std::invalid_argument("mode degree must be >= 0");
  ModeSpec spec;
  spec.p = p;
  spec.lambda_c = static_cast<double>(p) * (p + sp.m - 2);
  if (sp.euclidean()) {
    spec.lambda_r = [lc = spec.lambda_c](double r) { return lc / (r * r); };
  } else if (sp.constant_curvature()) {
    const bool compact = sp.compact();
    spec.lambda_r = [lc = spec.lambda_c, compact](double r) {
      double s = compact ? std::sin(r) : std::sinh(r);
      return lc / (s * s);
    };
  } else if (p <= 1) {
    spec.lambda_r = [sp](double r) {
      return -(sp.m - 1) * mean_curvature_d1(sp, r);
    };
  } else {
    throw unsupported_mode(
        "modes with p >= 2 are only supported on constant-curvature spaces");
  }
  return spec;
}

/// Radius of convergence of the r theta'/theta and r^2 lambda(r) series.
inline double series_convergence_radius(const ModelSpace& sp) {
  if (sp.euclidean()) return std::numeric_limits<double>::infinity();
  return sp.d == 1 ? M_PI : 0.5 * M_PI;  // tanh-type terms halve the radius
}

/// Power-series expansions of r theta'/theta and r^2 lambda(r), exact up to
/// the closed-form cot/coth/tan/tanh expansions.
inline void alpha_beta_series(const ModelSpace& sp, const ModeSpec& spec, int N,
                              PowerSeries& alpha, PowerSeries& beta) {
  if (N < 2) throw std::invalid_argument("alpha_beta_series: N < 2");
  if (spec.p >= 2 && !sp.constant_curvature())
    throw unsupported_mode("p >= 2 requires constant curvature");
  using namespace series_detail;
  alpha.coeffs = Eigen::VectorXd::Zero(N + 1);
  beta.coeffs = Eigen::VectorXd::Zero(N + 1);
  const int m = sp.m, d = sp.d;
  if (sp.euclidean()) {
    alpha.coeffs[0] = m - 1;
    beta.coeffs[0] = spec.lambda_c;
    alpha.cert_radius = beta.cert_radius = 0.0;  // terminating
    alpha.radius_hint = beta.radius_hint = std::numeric_limits<double>::infinity();
    return;
  }
  const bool compact = sp.compact();
  for (int k = 0; 2 * k <= N; ++k) {
    const double rc = compact ? rcot_coeff(k) : rcoth_coeff(k);
    if (d == 1) {
      alpha.coeffs[2 * k] = (m - 1) * rc;
      beta.coeffs[2 * k] = spec.lambda_c * rc * (1.0 - 2.0 * k);
    } else {
      // non-compact, d >= 2
      alpha.coeffs[2 * k] = (m - 1) * rcoth_coeff(k) + (d - 1) * rtanh_coeff(k);
      // r^2 lambda_1 = (m-1) r^2/sinh^2 - (d-1) r^2 sech^2
      beta.coeffs[2 * k] = (m - 1) * rcoth_coeff(k) * (1.0 - 2.0 * k) -
                           (d - 1) * rtanh_coeff(k) * (2.0 * k - 1.0);
    }
  }
  const double rho = series_convergence_radius(sp);
  alpha.cert_radius = beta.cert_radius = rho;
  alpha.radius_hint = beta.radius_hint = rho;
}

/// A built Steklov mode: the profile a_k (xi_p = 1) and sigma_k = a_k'/a_k.
struct SteklovMode {
  ModelSpace space;
  ModeSpec spec;
  PowerSeries profile;

  double sigma_series(double r) const {
    return profile.eval_derivative(r) / profile.eval(r);
  }
};

/// Builds the profile a_k by the Frobenius recursion
/// xi_i (i(i+m-2) - p(p+m-2)) + sum_{j<i} (j alpha_{i-j} - beta_{i-j}) xi_j = 0
/// with xi_i = 0 for i < p and xi_p = 1, and records the boundedness
/// certificate sup_i |xi_i| R^i.
inline SteklovMode build_profile(const ModelSpace& sp, const ModeSpec& spec,
                                 int N, double tail_tol = 1e-10) {
  const int p = spec.p;
  if (N < p + 2) throw std::invalid_argument("build_profile: N < p + 2");
  PowerSeries alpha, beta;
  alpha_beta_series(sp, spec, N, alpha, beta);

  PowerSeries prof;
  prof.coeffs = Eigen::VectorXd::Zero(N + 1);
  prof.coeffs[p] = 1.0;
  const double lam = spec.lambda_c;
  for (int i = p + 1; i <= N; ++i) {
    if ((i - p) % 2 == 1) continue;  // alpha, beta are even series
    double acc = 0.0;
    for (int j = p; j < i; j += 2)
      acc += (j * alpha.coeffs[i - j] - beta.coeffs[i - j]) * prof.coeffs[j];
    const double denom = static_cast<double>(i) * (i + sp.m - 2) - lam;
    prof.coeffs[i] = -acc / denom;
  }

  if (sp.euclidean()) {
    prof.cert_radius = 0.0;
    prof.cert_bound = 0.0;
    prof.radius_hint = std::numeric_limits<double>::infinity();
    return {sp, spec, prof};
  }

  // Boundedness certificate at R slightly inside the convergence radius.
  const double Rc = 0.995 * series_convergence_radius(sp);
  double bound = 0.0;
  for (int i = 0; i <= N; ++i)
    bound = std::max(bound, std::abs(prof.coeffs[i]) * std::pow(Rc, i));
  prof.cert_radius = Rc;
  prof.cert_bound = bound;
  // Largest radius with geometric tail below tail_tol.
  double lo = 0.0, hi = Rc * (1.0 - 1e-12);
  for (int it = 0; it < 200; ++it) {
    double mid = 0.5 * (lo + hi);
    (prof.tail_bound(mid) <= tail_tol ? lo : hi) = mid;
  }
  prof.radius_hint = lo;
  return {sp, spec, prof};
}

/// Doubles N until the certified tail at r_target is below tail_tol.
inline SteklovMode build_profile_auto(const ModelSpace& sp, const ModeSpec& spec,
                                      double r_target, double tail_tol = 1e-10,
                                      int n_cap = 512) {
  for (int N = std::max(32, spec.p + 2); N <= n_cap; N *= 2) {
    SteklovMode mode = build_profile(sp, spec, std::min(N, n_cap), tail_tol);
    if (mode.profile.tail_bound(r_target) <= tail_tol) return mode;
  }
  throw truncation_too_small(
      "build_profile_auto: certified tail above tolerance at N = 512");
}

/// First Steklov eigenvalue of the ball B_R from a = v/v', sigma_1 = a'/a.
/// On the sphere this is the mode-1 value only.
inline double sigma_first_ball(const ModelSpace& sp, double R) {
  detail::check_radius(sp, R);
  return weight_a_prime(sp, R) / weight_a(sp, R);
}

/// Integrates the Riccati equation sigma' = lambda - sigma^2 - (m-1) h sigma
/// from r0 = 1e-3 (initial value from the series) up to R.
inline double sigma_ode_integrate(const ModelSpace& sp, const ModeSpec& spec,
                                  double R, double r0 = 1e-3) {
  detail::check_radius(sp, R);
  SteklovMode near0 = build_profile(sp, spec, std::max(32, spec.p + 8));
  Eigen::Matrix<double, 1, 1> y;
  y[0] = near0.sigma_series(r0);
  if (R <= r0) return y[0];
  auto rhs = [&](double r, const Eigen::Matrix<double, 1, 1>& s) {
    Eigen::Matrix<double, 1, 1> ds;
    ds[0] = spec.lambda_r(r) - s[0] * s[0] -
            (sp.m - 1) * mean_curvature(sp, r) * s[0];
    return ds;
  };
  try {
    y = integrate_ode<1>(rhs, r0, R, y, 1e-10, 1e-12);
  } catch (const ode_failure& e) {
    throw ode_failure(std::string("Riccati blow-up (invalid mode?): ") + e.what());
  }
  return y[0];
}

/// Values (a_k, a_k') at radius R: series inside its certified range,
/// continued by the linear harmonic ODE a'' = lambda a - (m-1) h a' beyond.
struct ProfileValue {
  double a;
  double da;
};

inline ProfileValue profile_at(const SteklovMode& mode, double R) {
  const ModelSpace& sp = mode.space;
  const double cap = 0.9 * mode.profile.radius_hint;
  if (R <= cap)
    return {mode.profile.eval(R), mode.profile.eval_derivative(R)};
  const double r0 = std::max(1e-3, 0.9 * cap);
  Eigen::Matrix<double, 2, 1> y;
  y[0] = mode.profile.eval(r0);
  y[1] = mode.profile.eval_derivative(r0);
  auto rhs = [&](double r, const Eigen::Matrix<double, 2, 1>& s) {
    Eigen::Matrix<double, 2, 1> ds;
    ds[0] = s[1];
    ds[1] = mode.spec.lambda_r(r) * s[0] -
            (sp.m - 1) * mean_curvature(sp, r) * s[1];
    return ds;
  };
  y = integrate_ode<2>(rhs, r0, R, y, 1e-12, 1e-14);
  return {y[0], y[1]};
}

/// sigma_k(R) by the best available route: series in range, ODE continuation
/// beyond.
inline double sigma_value(const SteklovMode& mode, double R) {
  ProfileValue v = profile_at(mode, R);
  return v.da / v.a;
}

/// ODE comparison check: lambda_A <= lambda_B on the grid must imply
/// sigma_A <= sigma_B everywhere.
inline bool comparison_check(const ModelSpace& sp, const ModeSpec& specA,
                             const ModeSpec& specB,
                             const Eigen::VectorXd& grid) {
  double rmax = grid.maxCoeff();
  SteklovMode ma = build_profile_auto(sp, specA, std::min(rmax, 0.8 * series_convergence_radius(sp)), 1e-8);
  SteklovMode mb = build_profile_auto(sp, specB, std::min(rmax, 0.8 * series_convergence_radius(sp)), 1e-8);
  for (int i = 0; i < grid.size(); ++i) {
    double r = grid[i];
    if (sigma_value(ma, r) > sigma_value(mb, r) + 1e-10) return false;
  }
  return true;
}

}  // namespace steklov

#endif

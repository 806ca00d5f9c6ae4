#ifndef STEKLOV_STRIP_HPP
#define STEKLOV_STRIP_HPP

#include <cmath>
#include <stdexcept>
#include <vector>

#include "steklov/radial_series.hpp"

namespace steklov {

struct claim_violation : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct StripMode {
  int p = 0;
  double C_plus = 0.0;
  double C_minus = 0.0;
};

/// Steklov data of the symmetric strip Omega_R in S^m (intersection of two
/// radius-R balls with antipodal centers), pi/2 < R < pi.
struct StripSpectrum {
  int m = 0;
  double R = 0.0;
  std::vector<StripMode> modes;
  double sigma1 = 0.0;        // = C_plus(1) by Claim 2
  double volume = 0.0;        // |Omega_R|
  double S = 0.0;             // matched ball radius, |S^m \ B_S| = |S^m \ Omega_R|
  double sigma1_ball = 0.0;   // sigma_1(B_S)
};

namespace strip_detail {

inline void check_strip_radius(double R) {
  if (!(R > 0.5 * M_PI) || !(R < M_PI))
    throw std::domain_error("strip: R outside (pi/2, pi)");
}

// int_0^x sin^{m-1}
inline double sin_integral(int m, double x) {
  return integrate([m](double t) { return std::pow(std::sin(t), m - 1); }, 0.0, x);
}

// the p-th sphere mode, built once with enough certified radius for
// evaluation near pi through the ODE continuation
inline SteklovMode sphere_mode(int m, int p) {
  auto sp = ModelSpace::make(Family::RoundSphere, m);
  return build_profile_auto(sp, make_mode(sp, p), 0.8 * M_PI, 1e-11);
}

inline StripMode mode_values(const SteklovMode& mode, double R) {
  ProfileValue at_R = profile_at(mode, R);
  ProfileValue at_co = profile_at(mode, M_PI - R);
  StripMode out;
  out.p = mode.spec.p;
  out.C_plus = (at_R.da - at_co.da) / (at_R.a + at_co.a);
  out.C_minus = (at_R.da + at_co.da) / (at_R.a - at_co.a);
  return out;
}

}  // namespace strip_detail

/// (C_p^+, C_p^-) of the strip: quotients of the degree-p sphere profile at
/// R and pi - R for the even/odd extensions across the equator.
inline StripMode strip_mode_values(int m, double R, int p) {
  strip_detail::check_strip_radius(R);
  if (p < 1) throw std::invalid_argument("strip_mode_values: p < 1");
  return strip_detail::mode_values(strip_detail::sphere_mode(m, p), R);
}

/// Matched ball: S with |S^m \ B_S| = |S^m \ Omega_R| and sigma_1(B_S).
inline std::pair<double, double> matched_ball(int m, double R) {
  strip_detail::check_strip_radius(R);
  double target = 2.0 * strip_detail::sin_integral(m, M_PI - R);
  // Newton for beta = pi - S on I(beta) = target
  double beta = M_PI - R;
  for (int it = 0; it < 100; ++it) {
    double f = strip_detail::sin_integral(m, beta) - target;
    double df = std::pow(std::sin(beta), m - 1);
    double step = f / df;
    beta -= step;
    beta = std::min(std::max(beta, 1e-12), M_PI - 1e-12);
    if (std::abs(step) < 1e-14) break;
  }
  double S = M_PI - beta;
  // sigma_1(B_S) = a_1'(S)/a_1(S), normalization-invariant:
  // theta(S)/int_0^S theta - (m-1) cot(S)
  double sigma = std::pow(std::sin(S), m - 1) / strip_detail::sin_integral(m, S) -
                 (m - 1) * std::cos(S) / std::sin(S);
  return {S, sigma};
}

/// Full strip spectrum up to p_max; asserts Claim 2 (minimum at C_1^+).
inline StripSpectrum strip_sigma1(int m, double R, int p_max = 12) {
  strip_detail::check_strip_radius(R);
  if (m < 2) throw std::invalid_argument("strip_sigma1: m < 2");
  StripSpectrum out;
  out.m = m;
  out.R = R;
  for (int p = 1; p <= p_max; ++p)
    out.modes.push_back(strip_detail::mode_values(strip_detail::sphere_mode(m, p), R));
  double best = std::numeric_limits<double>::infinity();
  for (const auto& md : out.modes) best = std::min({best, md.C_plus, md.C_minus});
  double c1 = out.modes.front().C_plus;
  if (best < c1 - 1e-10 * std::max(std::abs(c1), 1.0))
    throw claim_violation("strip_sigma1: minimum not at C_1^+");
  out.sigma1 = c1;
  double A = unit_sphere_area(m);
  out.volume = A * (strip_detail::sin_integral(m, M_PI) -
                    2.0 * strip_detail::sin_integral(m, M_PI - R));
  auto [S, sb] = matched_ball(m, R);
  out.S = S;
  out.sigma1_ball = sb;
  return out;
}

struct StripScanRow {
  int m = 0;
  double R = 0.0;
  double sigma1_strip = 0.0;
  double S = 0.0;
  double sigma1_ball = 0.0;
  double ratio = 0.0;
};

/// sigma_1(Omega_R) vs sigma_1(B_S) over a grid of R. Modes are built once
/// and reused across grid points.
inline std::vector<StripScanRow> counterexample_scan(int m,
                                                     const std::vector<double>& grid,
                                                     int p_max = 12) {
  std::vector<SteklovMode> modes;
  for (int p = 1; p <= p_max; ++p) modes.push_back(strip_detail::sphere_mode(m, p));
  std::vector<StripScanRow> rows;
  for (double R : grid) {
    strip_detail::check_strip_radius(R);
    double best = std::numeric_limits<double>::infinity();
    double c1 = 0.0;
    for (const auto& mode : modes) {
      auto md = strip_detail::mode_values(mode, R);
      if (md.p == 1) c1 = md.C_plus;
      best = std::min({best, md.C_plus, md.C_minus});
    }
    if (best < c1 - 1e-10 * std::max(std::abs(c1), 1.0))
      throw claim_violation("counterexample_scan: minimum not at C_1^+");
    StripScanRow row;
    row.m = m;
    row.R = R;
    row.sigma1_strip = c1;
    auto [S, sb] = matched_ball(m, R);
    row.S = S;
    row.sigma1_ball = sb;
    row.ratio = c1 / sb;
    rows.push_back(row);
  }
  return rows;
}

/// First crossing of sigma_1(Omega_R) = sigma_1(B_S), bracketed on a coarse
/// grid and refined by bisection to width tol.
inline std::pair<double, double> find_crossing(int m, double tol = 1e-6,
                                               int p_max = 12) {
  auto ratio_at = [&](double R) {
    // Claim 2 gives sigma_1 = C_1^+ = (m-1) cot(pi - R); the scan's series
    // route is cross-checked in tests, the closed form is used for speed
    double c1 = (m - 1) / std::tan(M_PI - R);
    return c1 / matched_ball(m, R).second;
  };
  double lo = 0.5 * M_PI + 1e-3, hi = M_PI - 1e-3;
  if (ratio_at(lo) >= 1.0) throw std::runtime_error("find_crossing: no bracket");
  // walk up until the ratio exceeds 1
  double prev = lo;
  bool found = false;
  for (int i = 1; i <= 200; ++i) {
    double R = lo + (hi - lo) * i / 200.0;
    if (ratio_at(R) > 1.0) {
      lo = prev;
      hi = R;
      found = true;
      break;
    }
    prev = R;
  }
  if (!found) throw std::runtime_error("find_crossing: no crossing on grid");
  while (hi - lo > tol) {
    double mid = 0.5 * (lo + hi);
    (ratio_at(mid) > 1.0 ? hi : lo) = mid;
  }
  return {lo, hi};
}

}  // namespace steklov

#endif

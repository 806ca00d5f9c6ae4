#ifndef STEKLOV_MODEL_SPACE_HPP
#define STEKLOV_MODEL_SPACE_HPP

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "steklov/quadrature.hpp"

namespace steklov {

enum class Family {
  Euclidean,
  RealHyperbolic,
  ComplexHyperbolic,
  QuaternionicHyperbolic,
  OctonionicHyperbolic,
  RoundSphere
};

struct unsupported_space : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Descriptor of a harmonic model space: the Euclidean space, a non-compact
/// ROSS, or the round sphere. Curvature is normalized so that sectional
/// curvatures lie in [-4,-1] (hyperbolic) or [1,4] (sphere); no scale
/// parameter is exposed.
struct ModelSpace {
  Family family = Family::Euclidean;
  int d = 1;   // real dimension of the base field/algebra
  int n = 2;   // K-dimension
  int m = 2;   // real dimension, m = d*n
  int eps = 0; // curvature sign
  double diam = std::numeric_limits<double>::infinity();

  static ModelSpace make(Family f, int n) {
    ModelSpace s;
    s.family = f;
    s.n = n;
    switch (f) {
      case Family::Euclidean:
        s.d = 1; s.eps = 0; break;
      case Family::RealHyperbolic:
        s.d = 1; s.eps = -1; break;
      case Family::ComplexHyperbolic:
        s.d = 2; s.eps = -1; break;
      case Family::QuaternionicHyperbolic:
        s.d = 4; s.eps = -1; break;
      case Family::OctonionicHyperbolic:
        if (n != 2) throw std::invalid_argument("OctonionicHyperbolic requires n = 2");
        s.d = 8; s.eps = -1; break;
      case Family::RoundSphere:
        s.d = 1; s.eps = 1; break;
    }
    s.m = s.d * s.n;
    if (s.m < 2) throw std::invalid_argument("model space dimension must be >= 2");
    s.diam = (f == Family::RoundSphere) ? M_PI
                                        : std::numeric_limits<double>::infinity();
    return s;
  }

  bool compact() const { return family == Family::RoundSphere; }
  bool euclidean() const { return family == Family::Euclidean; }
  bool constant_curvature() const { return d == 1; }
  bool non_compact_ross() const { return eps == -1; }

  /// (d-1)/(m-1), the weight of the Berger correction in h.
  double kappa() const { return static_cast<double>(d - 1) / (m - 1); }

  /// Horosphere mean curvature h0 = lim h(r) (non-compact only).
  double entropy_h0() const {
    if (compact()) throw unsupported_space("h0 undefined on the sphere");
    return euclidean() ? 0.0 : 1.0 + kappa();
  }
};

inline const char* family_name(Family f) {
  switch (f) {
    case Family::Euclidean: return "Euclidean";
    case Family::RealHyperbolic: return "RealHyperbolic";
    case Family::ComplexHyperbolic: return "ComplexHyperbolic";
    case Family::QuaternionicHyperbolic: return "QuaternionicHyperbolic";
    case Family::OctonionicHyperbolic: return "OctonionicHyperbolic";
    case Family::RoundSphere: return "RoundSphere";
  }
  return "?";
}

inline Family family_from_name(const std::string& s) {
  if (s == "Euclidean") return Family::Euclidean;
  if (s == "RealHyperbolic") return Family::RealHyperbolic;
  if (s == "ComplexHyperbolic") return Family::ComplexHyperbolic;
  if (s == "QuaternionicHyperbolic") return Family::QuaternionicHyperbolic;
  if (s == "OctonionicHyperbolic") return Family::OctonionicHyperbolic;
  if (s == "RoundSphere") return Family::RoundSphere;
  throw std::invalid_argument("unknown family: " + s);
}

namespace detail {

inline void check_radius(const ModelSpace& s, double r) {
  if (!(r > 0.0) || !(r < s.diam))
    throw std::domain_error("radius outside (0, diam)");
}

struct SinCosPair {
  double s, c;
};

/// The family's sin/sinh, cos/cosh pair (Euclidean: s = r, c = 1).
inline SinCosPair sc(const ModelSpace& sp, double r) {
  if (sp.eps == 0) return {r, 1.0};
  if (sp.eps > 0) return {std::sin(r), std::cos(r)};
  return {std::sinh(r), std::cosh(r)};
}

}  // namespace detail

/// Total area of the unit sphere S^{m-1} in R^m.
inline double unit_sphere_area(int m) {
  return 2.0 * std::pow(M_PI, 0.5 * m) / std::tgamma(0.5 * m);
}

/// Volume density theta(r) = c^{d-1} s^{m-1} (r^{m-1} in the Euclidean case).
inline double density(const ModelSpace& sp, double r) {
  detail::check_radius(sp, r);
  auto [s, c] = detail::sc(sp, r);
  return std::pow(c, sp.d - 1) * std::pow(s, sp.m - 1);
}

/// Mean curvature h(r) of the geodesic sphere of radius r.
inline double mean_curvature(const ModelSpace& sp, double r) {
  detail::check_radius(sp, r);
  if (sp.euclidean()) return 1.0 / r;
  auto [s, c] = detail::sc(sp, r);
  return c / s - sp.eps * sp.kappa() * s / c;
}

/// Closed-form h'(r).
inline double mean_curvature_d1(const ModelSpace& sp, double r) {
  detail::check_radius(sp, r);
  if (sp.euclidean()) return -1.0 / (r * r);
  auto [s, c] = detail::sc(sp, r);
  // h' = -1/s^2 - eps*kappa/c^2  (both sign conventions collapse to this)
  return -1.0 / (s * s) - sp.eps * sp.kappa() / (c * c);
}

/// Closed-form h''(r).
inline double mean_curvature_d2(const ModelSpace& sp, double r) {
  detail::check_radius(sp, r);
  if (sp.euclidean()) return 2.0 / (r * r * r);
  auto [s, c] = detail::sc(sp, r);
  // d/dr(-s^-2) = 2 c / s^3 ; d/dr(-eps*kappa*c^-2) = -2*kappa*s/c^3
  // (compact: c' = -s so the second term is +2*eps*kappa*(-s)/c^3 ... kept
  //  uniform below via eps factors)
  return 2.0 * c / (s * s * s) - 2.0 * sp.kappa() * s / (c * c * c);
}

/// Eigenvalues of the second fundamental form of S_r, with multiplicities
/// (d-1, m-d): 2 co(2r)/si(2r) and co(r)/si(r).
struct SffEigs {
  double berger;  // multiplicity d-1
  double round;   // multiplicity m-d
};

inline SffEigs sff_eigs(const ModelSpace& sp, double r) {
  detail::check_radius(sp, r);
  if (sp.euclidean()) return {1.0 / r, 1.0 / r};
  auto [s2, c2] = detail::sc(sp, 2.0 * r);
  auto [s, c] = detail::sc(sp, r);
  return {2.0 * c2 / s2, c / s};
}

/// Jacobi tensor eigenvalues alpha(r) = s(r)c(r), beta(r) = s(r) with
/// multiplicities (d-1, m-d).
struct JacobiEigs {
  double alpha;
  double beta;
};

inline JacobiEigs jacobi_eigs(const ModelSpace& sp, double r) {
  detail::check_radius(sp, r);
  auto [s, c] = detail::sc(sp, r);
  return {s * c, s};
}

/// |B_r| = |S^{m-1}| \int_0^r theta. Closed forms for low-dimensional
/// constant-curvature families, adaptive quadrature otherwise.
inline double ball_volume(const ModelSpace& sp, double r) {
  detail::check_radius(sp, r);
  const double A = unit_sphere_area(sp.m);
  if (sp.euclidean()) return A * std::pow(r, sp.m) / sp.m;
  if (sp.d == 1 && sp.m == 2)
    return sp.eps < 0 ? 2.0 * M_PI * (std::cosh(r) - 1.0)
                      : 2.0 * M_PI * (1.0 - std::cos(r));
  if (sp.d == 1 && sp.m == 3)
    return sp.eps < 0 ? M_PI * (std::sinh(2.0 * r) - 2.0 * r)
                      : M_PI * (2.0 * r - std::sin(2.0 * r));
  return A * integrate([&](double t) { return density(sp, t); }, 0.0, r);
}

/// Integral of the density, \int_0^r theta = v(r)/|S^{m-1}|.
inline double density_integral(const ModelSpace& sp, double r) {
  return ball_volume(sp, r) / unit_sphere_area(sp.m);
}

/// The isoperimetric weight a(r) = v(r)/v'(r); a(0) = 0.
inline double weight_a(const ModelSpace& sp, double r) {
  if (r == 0.0) return 0.0;
  detail::check_radius(sp, r);
  if (r < 1e-4) return r / sp.m;  // removable singularity, a = r/m + O(r^3)
  if (sp.euclidean()) return r / sp.m;
  if (sp.family == Family::RealHyperbolic && sp.m == 2)
    return std::tanh(0.5 * r);
  return density_integral(sp, r) / density(sp, r);
}

/// a'(r) = 1 - (m-1) h(r) a(r).
inline double weight_a_prime(const ModelSpace& sp, double r) {
  detail::check_radius(sp, r);
  return 1.0 - (sp.m - 1) * mean_curvature(sp, r) * weight_a(sp, r);
}

namespace detail {

inline void require_non_compact(const ModelSpace& sp, const char* what) {
  if (sp.compact())
    throw unsupported_space(std::string(what) + " is defined on non-compact spaces only");
}

}  // namespace detail

/// Calibration function G(r) = a (1 + a').
inline double calibration_G(const ModelSpace& sp, double r) {
  detail::require_non_compact(sp, "calibration_G");
  if (r == 0.0) return 0.0;
  detail::check_radius(sp, r);
  const double a = weight_a(sp, r);
  return a * (1.0 + weight_a_prime(sp, r));
}

/// G'(r) = 2 a'^2 - (m-1) h' a^2 > 0.
inline double calibration_G_prime(const ModelSpace& sp, double r) {
  detail::require_non_compact(sp, "calibration_G");
  detail::check_radius(sp, r);
  const double a = weight_a(sp, r);
  const double ap = weight_a_prime(sp, r);
  return 2.0 * ap * ap - (sp.m - 1) * mean_curvature_d1(sp, r) * a * a;
}

/// Radial energy density H(r) = a'^2 - (m-1) h' a^2 (= sum |grad F_i|^2).
inline double energy_density_H(const ModelSpace& sp, double r) {
  detail::require_non_compact(sp, "energy_density_H");
  detail::check_radius(sp, r);
  const double a = weight_a(sp, r);
  const double ap = weight_a_prime(sp, r);
  return ap * ap - (sp.m - 1) * mean_curvature_d1(sp, r) * a * a;
}

/// Radius of the ball with volume s, by safeguarded Newton on v.
inline double ball_radius_for_volume(const ModelSpace& sp, double s) {
  if (!(s > 0.0)) throw std::domain_error("volume must be positive");
  if (sp.compact() && s >= ball_volume(sp, sp.diam * (1.0 - 1e-13)))
    throw std::domain_error("volume exceeds the total volume of the sphere");
  const double A = unit_sphere_area(sp.m);
  double r = std::pow(sp.m * s / A, 1.0 / sp.m);  // Euclidean guess
  if (sp.compact()) r = std::min(r, 0.9 * sp.diam);
  // establish a bracket
  double lo = r, hi = r;
  while (ball_volume(sp, lo) > s) lo *= 0.5;
  while (ball_volume(sp, hi) < s) {
    hi = sp.compact() ? 0.5 * (hi + sp.diam) : 2.0 * hi;
    if (sp.compact() && sp.diam - hi < 1e-14) break;
  }
  for (int it = 0; it < 100; ++it) {
    const double f = ball_volume(sp, r) - s;
    if (f > 0) hi = r; else lo = r;
    const double vp = A * density(sp, r);
    double step = f / vp;
    double next = r - step;
    if (!(next > lo) || !(next < hi)) next = 0.5 * (lo + hi);
    if (std::abs(next - r) < 1e-12 * (1.0 + r)) return next;
    r = next;
  }
  return r;
}

struct StabilityG {
  double g;    // g(s) = s a(v^{-1}(s))
  double g1;   // g'(s) = G(v^{-1}(s))
  double g2;   // g''(s) = G'(t)/v'(t)
};

/// The stability profile g and its first two derivatives at volume s.
inline StabilityG stability_g(const ModelSpace& sp, double s) {
  detail::require_non_compact(sp, "stability_g");
  const double t = ball_radius_for_volume(sp, s);
  const double vp = unit_sphere_area(sp.m) * density(sp, t);
  return {s * weight_a(sp, t), calibration_G(sp, t),
          calibration_G_prime(sp, t) / vp};
}

}  // namespace steklov

#endif

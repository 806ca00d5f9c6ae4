#ifndef STEKLOV_STAR_DOMAIN_HPP
#define STEKLOV_STAR_DOMAIN_HPP

#include <cmath>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

#include "json.hpp"

#include "steklov/berger_frame.hpp"
#include "steklov/model_space.hpp"
#include "steklov/quadrature.hpp"
#include "steklov/sphere_grid.hpp"

namespace steklov {

/// g_r(X, X) for X tangent to the unit sphere at w: the Berger metric of
/// the geodesic sphere of radius r, with the d-1 fiber directions J_k w
/// rescaled by c(r)^2.
inline double berger_metric_norm(const ModelSpace& sp, const Eigen::VectorXd& w,
                                 double r, const Eigen::VectorXd& X) {
  if (std::abs(w.dot(X)) > 1e-10)
    throw std::invalid_argument("berger_metric_norm: X not tangent at w");
  auto p = detail::sc(sp, r);
  double x2 = X.squaredNorm();
  double fiber = 0.0;
  if (sp.d > 1) {
    BergerFrame frame(sp);
    for (int k = 1; k <= frame.count(); ++k) {
      double b = frame.apply(k, w).dot(X);
      fiber += b * b;
    }
  }
  return p.s * p.s * (x2 - fiber) + p.s * p.s * p.c * p.c * fiber;
}

/// Area element of the radial graph r = rho(w) at a node:
/// theta(rho) * sqrt(1 + |d rho|^2 in the inverse Berger metric).
inline double boundary_area_element(const ModelSpace& sp,
                                    const Eigen::VectorXd& w, double rho,
                                    const Eigen::VectorXd& grad_rho,
                                    const BergerFrame* frame = nullptr) {
  auto p = detail::sc(sp, rho);
  double g2 = grad_rho.squaredNorm();
  double fiber = 0.0;
  if (sp.d > 1) {
    BergerFrame local = frame ? *frame : BergerFrame(sp);
    for (int k = 1; k <= local.count(); ++k) {
      double b = local.apply(k, w).dot(grad_rho);
      fiber += b * b;
    }
  }
  double s2 = p.s * p.s;
  double grad2 = (g2 - fiber) / s2 + fiber / (s2 * p.c * p.c);
  return density(sp, rho) * std::sqrt(1.0 + grad2);
}

/// Star-shaped domain around the pole: a radial graph rho over the grid.
struct StarDomain {
  ModelSpace space;
  SphereGrid grid;
  Eigen::VectorXd rho;
  Eigen::MatrixXd grad_rho;  // m x N, filled from the grid stencil

  StarDomain(const ModelSpace& sp, const SphereGrid& g, Eigen::VectorXd r)
      : space(sp), grid(g), rho(std::move(r)) {
    if (rho.size() != grid.weights().size())
      throw std::invalid_argument("StarDomain: rho size mismatch");
    if (grid.dim() != sp.m)
      throw std::invalid_argument("StarDomain: grid dimension mismatch");
    double cap = sp.compact() ? sp.diam - 0.1 : std::numeric_limits<double>::infinity();
    for (int i = 0; i < rho.size(); ++i)
      if (!(rho[i] > 0.0) || !(rho[i] < cap))
        throw std::domain_error("StarDomain: rho out of range");
    grad_rho = grid.gradient(rho);
  }
};

/// Chebyshev caches of the radial antiderivatives used by measure_domain;
/// one per (space, radius range). Avoids nested adaptive quadrature when
/// measuring thousands of domains.
class RadialCache {
 public:
  RadialCache(const ModelSpace& sp, double length, int n = 400)
      : space_(sp),
        // theta(0) = H(0) theta(0) = 0; the Chebyshev endpoint lands on r = 0
        theta_([&sp](double t) { return t > 0 ? density(sp, t) : 0.0; }, length, n),
        h_theta_(
            [&sp](double t) {
              return t > 0 ? energy_density_H(sp, t) * density(sp, t) : 0.0;
            },
            length, n),
        g_theta_(
            [&sp](double t) {
              return t > 0 ? steklov::calibration_G(sp, t) * density(sp, t) : 0.0;
            },
            length, n) {}

  const ModelSpace& space() const { return space_; }
  double length() const { return theta_.length(); }
  // int_0^r theta and int_0^r H theta
  double theta_integral(double r) const { return theta_(r); }
  double h_theta_integral(double r) const { return h_theta_(r); }
  double g_theta_integral(double r) const { return g_theta_(r); }

  // a, a', G through the cached antiderivative instead of nested quadrature
  double weight_a(double r) const {
    if (r < 1e-4) return r / space_.m;
    return theta_(r) / density(space_, r);
  }
  double weight_a_prime(double r) const {
    return 1.0 - (space_.m - 1) * mean_curvature(space_, r) * weight_a(r);
  }
  double calibration_G(double r) const {
    double a = weight_a(r);
    return a * (1.0 + weight_a_prime(r));
  }

  double ball_volume(double r) const {
    return unit_sphere_area(space_.m) * theta_(r);
  }

  double radius_for_volume(double vol) const {
    double A = unit_sphere_area(space_.m);
    double target = vol / A;
    double lo = 0.0, hi = length();
    if (theta_(hi) < target)
      throw std::domain_error("RadialCache: volume beyond cached range");
    double r = 0.5 * hi;
    for (int it = 0; it < 100; ++it) {
      double f = theta_(r) - target;
      if (f > 0)
        hi = r;
      else
        lo = r;
      double dr = f / std::max(density(space_, std::max(r, 1e-300)), 1e-300);
      double next = r - dr;
      r = (next > lo && next < hi) ? next : 0.5 * (lo + hi);
      if (std::abs(f) < 1e-15 * std::max(target, 1.0) && hi - lo < 1e-12) break;
    }
    return r;
  }

 private:
  ModelSpace space_;
  ChebAntiderivative theta_, h_theta_, g_theta_;
};

struct DomainReport {
  double volume = 0.0;
  double weighted_perimeter = 0.0;  // P_o(Omega)
  double energy = 0.0;              // Q(Omega)
  double sym_diff = 0.0;            // |Omega \ B_R|
  double ball_radius = 0.0;         // R with |B_R| = |Omega|
  double R_ext = 0.0, R_int = 0.0;
  bool sym_diff_consistent = false;  // outer vs inner excess agree
};

/// |Omega \ B_R| from the per-node signed radial excess. Also returns the
/// inner deficit |B_R \ Omega| through the second argument.
inline double symmetric_difference(const StarDomain& dom, double R,
                                   const RadialCache& cache,
                                   double* inner = nullptr) {
  const int N = dom.grid.size();
  Eigen::VectorXd over = Eigen::VectorXd::Zero(N), under = Eigen::VectorXd::Zero(N);
  double FR = cache.theta_integral(R);
  for (int i = 0; i < N; ++i) {
    double Fi = cache.theta_integral(dom.rho[i]);
    if (dom.rho[i] > R)
      over[i] = dom.grid.weights()[i] * (Fi - FR);
    else
      under[i] = dom.grid.weights()[i] * (FR - Fi);
  }
  if (inner) *inner = pairwise_sum(under);
  return pairwise_sum(over);
}

inline DomainReport measure_domain(const StarDomain& dom,
                                   const RadialCache& cache) {
  const int N = dom.grid.size();
  const ModelSpace& sp = dom.space;
  Eigen::VectorXd vol_terms(N), per_terms(N), q_terms(N);
  std::optional<BergerFrame> frame;
  if (sp.d > 1) frame.emplace(sp);
  const BergerFrame* frame_ptr = frame ? &*frame : nullptr;
  for (int i = 0; i < N; ++i) {
    double w = dom.grid.weights()[i];
    double r = dom.rho[i];
    vol_terms[i] = w * cache.theta_integral(r);
    double area = boundary_area_element(sp, dom.grid.nodes().col(i), r,
                                        dom.grad_rho.col(i), frame_ptr);
    double a = cache.weight_a(r);
    per_terms[i] = w * a * a * area;
    q_terms[i] = w * cache.h_theta_integral(r);
  }
  DomainReport rep;
  rep.volume = pairwise_sum(vol_terms);
  rep.weighted_perimeter = pairwise_sum(per_terms);
  rep.energy = pairwise_sum(q_terms);
  rep.ball_radius = cache.radius_for_volume(rep.volume);
  double inner = 0.0;
  rep.sym_diff = symmetric_difference(dom, rep.ball_radius, cache, &inner);
  rep.sym_diff_consistent =
      std::abs(rep.sym_diff - inner) <=
      1e-8 * std::max({rep.sym_diff, inner, 1e-6 * rep.volume});
  rep.R_ext = cache.radius_for_volume(rep.volume + rep.sym_diff);
  rep.R_int = cache.radius_for_volume(std::max(rep.volume - rep.sym_diff, 0.0));
  return rep;
}

/// Convenience overload; builds a cache covering the domain's radii.
inline DomainReport measure_domain(const StarDomain& dom) {
  double L = 1.5 * dom.rho.maxCoeff() + 0.5;
  if (dom.space.compact()) L = std::min(L, dom.space.diam - 1e-9);
  return measure_domain(dom, RadialCache(dom.space, L));
}

/// Seeded random star domain: rho(w) = R0 exp(sum_j A_j <u_j, w>^{k_j}),
/// low-degree perturbations with |A_j| <= amp.
inline StarDomain random_star_domain(const ModelSpace& sp, const SphereGrid& grid,
                                     double R0, std::uint64_t seed,
                                     double amp = 0.3, int n_terms = 3) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss;
  std::uniform_real_distribution<double> uamp(-amp, amp);
  std::uniform_int_distribution<int> upow(1, 3);
  const int N = grid.size();
  Eigen::VectorXd log_rho = Eigen::VectorXd::Zero(N);
  for (int j = 0; j < n_terms; ++j) {
    Eigen::VectorXd u(sp.m);
    for (int i = 0; i < sp.m; ++i) u[i] = gauss(rng);
    u.normalize();
    double A = uamp(rng);
    int k = upow(rng);
    for (int i = 0; i < N; ++i)
      log_rho[i] += A * std::pow(u.dot(grid.nodes().col(i)), k);
  }
  return StarDomain(sp, grid, R0 * log_rho.array().exp().matrix());
}

inline nlohmann::json to_json(const StarDomain& dom) {
  nlohmann::json j;
  j["space"] = family_name(dom.space.family);
  j["n"] = dom.space.n;
  j["grid_order"] = dom.grid.order();
  j["rho"] = std::vector<double>(dom.rho.data(), dom.rho.data() + dom.rho.size());
  return j;
}

inline StarDomain star_domain_from_json(const nlohmann::json& j) {
  ModelSpace sp = ModelSpace::make(family_from_name(j.at("space")), j.at("n"));
  SphereGrid grid(sp.m, j.at("grid_order"));
  std::vector<double> r = j.at("rho");
  return StarDomain(sp, grid,
                    Eigen::Map<const Eigen::VectorXd>(r.data(), r.size()));
}

inline nlohmann::json to_json(const DomainReport& rep) {
  return nlohmann::json{{"volume", rep.volume},
                        {"weighted_perimeter", rep.weighted_perimeter},
                        {"energy", rep.energy},
                        {"sym_diff", rep.sym_diff},
                        {"ball_radius", rep.ball_radius},
                        {"R_ext", rep.R_ext},
                        {"R_int", rep.R_int},
                        {"sym_diff_consistent", rep.sym_diff_consistent}};
}

}  // namespace steklov

#endif

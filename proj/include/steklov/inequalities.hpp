#ifndef STEKLOV_INEQUALITIES_HPP
#define STEKLOV_INEQUALITIES_HPP

#include <cmath>
#include <cstdint>
#include <iomanip>
#include <ostream>
#include <string>
#include <vector>

#include "steklov/star_domain.hpp"

namespace steklov {

struct InequalityVerdict {
  double lhs = 0.0;
  double rhs = 0.0;
  double margin = 0.0;  // lhs - rhs
  double tolerance = 0.0;
  bool pass = false;
};

namespace ineq_detail {

inline double scale_tol(double lhs, double rhs) {
  return 1e-6 * std::max({std::abs(lhs), std::abs(rhs), 1.0});
}

inline InequalityVerdict make_verdict(double lhs, double rhs) {
  InequalityVerdict v;
  v.lhs = lhs;
  v.rhs = rhs;
  v.margin = lhs - rhs;
  v.tolerance = scale_tol(lhs, rhs);
  v.pass = v.margin >= -v.tolerance;
  return v;
}

// Weighted perimeter and energy of the centered ball B_R.
inline double ball_perimeter(const RadialCache& cache, double R) {
  const ModelSpace& sp = cache.space();
  double a = cache.weight_a(R);
  return a * a * unit_sphere_area(sp.m) * density(sp, R);
}

inline double ball_energy(const RadialCache& cache, double R) {
  return unit_sphere_area(cache.space().m) * cache.h_theta_integral(R);
}

// g''(s) = G'(t)/v'(t) at t = v^{-1}(s), through the cache.
inline double stability_g2(const RadialCache& cache, double s) {
  const ModelSpace& sp = cache.space();
  double t = cache.radius_for_volume(s);
  return calibration_G_prime(sp, t) / (unit_sphere_area(sp.m) * density(sp, t));
}

}  // namespace ineq_detail

struct IsoperimetricVerdict : InequalityVerdict {
  double calibration_bound = 0.0;  // proof's lower bound for the P-gap
  bool calibration_pass = false;
};

/// Thm: P_o(Omega) >= P_o(B_R) for |B_R| = |Omega| on non-compact spaces,
/// with the calibration bound int_{Omega \Delta B} |G - G(R)| from the proof.
inline IsoperimetricVerdict check_weighted_isoperimetric(
    const StarDomain& dom, const RadialCache& cache, const DomainReport& rep) {
  detail::require_non_compact(dom.space, "check_weighted_isoperimetric");
  double R = rep.ball_radius;
  IsoperimetricVerdict v;
  static_cast<InequalityVerdict&>(v) = ineq_detail::make_verdict(
      rep.weighted_perimeter, ineq_detail::ball_perimeter(cache, R));
  double GR = cache.calibration_G(R);
  double FR = cache.theta_integral(R), GFR = cache.g_theta_integral(R);
  Eigen::VectorXd terms(dom.grid.size());
  for (int i = 0; i < dom.grid.size(); ++i) {
    double r = dom.rho[i];
    double seg = cache.g_theta_integral(r) - GFR - GR * (cache.theta_integral(r) - FR);
    terms[i] = dom.grid.weights()[i] * std::abs(seg);  // G monotone: |.| per node
  }
  v.calibration_bound = pairwise_sum(terms);
  v.calibration_pass = v.margin >= v.calibration_bound - v.tolerance;
  return v;
}

inline IsoperimetricVerdict check_weighted_isoperimetric(const StarDomain& dom,
                                                         const RadialCache& cache) {
  return check_weighted_isoperimetric(dom, cache, measure_domain(dom, cache));
}

struct StabilityVerdict : InequalityVerdict {
  double constant = 0.0;        // g''(2|Omega|), the global ROSS constant
  double local_constant = 0.0;  // g''(|Omega|)/2 from the local regime
};

/// Quantitative stability: P_o(Omega) - P_o(B) >= g''(2|Omega|) |Omega \ B|^2.
inline StabilityVerdict check_stability(const StarDomain& dom,
                                        const RadialCache& cache,
                                        const DomainReport& rep) {
  detail::require_non_compact(dom.space, "check_stability");
  StabilityVerdict v;
  v.constant = ineq_detail::stability_g2(cache, 2.0 * rep.volume);
  v.local_constant = 0.5 * ineq_detail::stability_g2(cache, rep.volume);
  double gap = rep.weighted_perimeter -
               ineq_detail::ball_perimeter(cache, rep.ball_radius);
  static_cast<InequalityVerdict&>(v) =
      ineq_detail::make_verdict(gap, v.constant * rep.sym_diff * rep.sym_diff);
  return v;
}

inline StabilityVerdict check_stability(const StarDomain& dom,
                                        const RadialCache& cache) {
  return check_stability(dom, cache, measure_domain(dom, cache));
}

struct BoundChainVerdict : InequalityVerdict {
  double rayleigh_upper = 0.0;  // Q(Omega)/P_o(Omega), certified bound for sigma_1
  double sigma1_ball = 0.0;     // Q(B_R)/P_o(B_R)
  double energy_margin = 0.0;   // Q(B_R) - Q(Omega)
};

/// Brock-Weinstock chain: Q(Omega) <= Q(B_R) and Q/P_o <= sigma_1(B_R).
inline BoundChainVerdict check_bound_chain(const StarDomain& dom,
                                           const RadialCache& cache,
                                           const DomainReport& rep) {
  detail::require_non_compact(dom.space, "check_bound_chain");
  BoundChainVerdict v;
  double QB = ineq_detail::ball_energy(cache, rep.ball_radius);
  double PB = ineq_detail::ball_perimeter(cache, rep.ball_radius);
  v.rayleigh_upper = rep.energy / rep.weighted_perimeter;
  v.sigma1_ball = QB / PB;
  v.energy_margin = QB - rep.energy;
  // verdict on the ratio link; both links must hold
  static_cast<InequalityVerdict&>(v) =
      ineq_detail::make_verdict(v.sigma1_ball, v.rayleigh_upper);
  v.pass = v.pass && v.energy_margin >= -ineq_detail::scale_tol(rep.energy, QB);
  return v;
}

inline BoundChainVerdict check_bound_chain(const StarDomain& dom,
                                           const RadialCache& cache) {
  return check_bound_chain(dom, cache, measure_domain(dom, cache));
}

/// C(M, v) of the quantitative Brock-Weinstock bound:
/// sigma_1(Omega)(1 + C |Omega \ B|^2) <= sigma_1(B), C = g''(2v)/P_o(B).
inline double quantitative_bw_constant(const ModelSpace& sp, double vol) {
  detail::require_non_compact(sp, "quantitative_bw_constant");
  if (!(vol > 0)) throw std::domain_error("quantitative_bw_constant: vol <= 0");
  double R = ball_radius_for_volume(sp, vol);
  StabilityG g = stability_g(sp, 2.0 * vol);
  double a = weight_a(sp, R);
  return g.g2 / (a * a * unit_sphere_area(sp.m) * density(sp, R));
}

struct ContinuityPoint {
  double P_gap = 0.0;
  double sym_diff = 0.0;
  double bound = 0.0;  // min over probe radii of P_gap/(G(rho)-G(R)) + |B_rho \ B|
};

/// Lemma: P_o(Omega_k) -> P_o(B) forces |Omega_k \ B| -> 0, with the
/// displayed quantitative bound evaluated on a small probe grid rho > R.
inline std::vector<ContinuityPoint> continuity_probe(
    const ModelSpace& sp, double vol, const std::vector<StarDomain>& seq,
    const RadialCache& cache) {
  detail::require_non_compact(sp, "continuity_probe");
  std::vector<ContinuityPoint> out;
  double R = cache.radius_for_volume(vol);
  double A = unit_sphere_area(sp.m);
  for (const auto& dom : seq) {
    auto rep = measure_domain(dom, cache);
    if (std::abs(rep.volume - vol) > 1e-6 * std::max(vol, 1.0))
      throw std::invalid_argument("continuity_probe: volume mismatch");
    ContinuityPoint p;
    p.P_gap = rep.weighted_perimeter - ineq_detail::ball_perimeter(cache, R);
    p.sym_diff = rep.sym_diff;
    p.bound = std::numeric_limits<double>::infinity();
    for (double probe : {R + 0.1, R + 0.2, R + 0.4}) {
      if (probe >= cache.length()) continue;
      double denom = cache.calibration_G(probe) - cache.calibration_G(R);
      double slab = A * (cache.theta_integral(probe) - cache.theta_integral(R));
      p.bound = std::min(p.bound, std::max(p.P_gap, 0.0) / denom + slab);
    }
    out.push_back(p);
  }
  return out;
}

/// Radial rescaling rho -> c rho making the measured volume equal vol.
inline StarDomain normalize_volume(const StarDomain& dom, double vol,
                                   const RadialCache& cache) {
  double c = 1.0;
  for (int it = 0; it < 60; ++it) {
    StarDomain scaled(dom.space, dom.grid, c * dom.rho);
    double v = measure_domain(scaled, cache).volume;
    double err = v - vol;
    if (std::abs(err) < 1e-12 * vol) return scaled;
    // dV/dc = sum w theta(c rho) rho
    double dv = 0.0;
    for (int i = 0; i < dom.grid.size(); ++i)
      dv += dom.grid.weights()[i] * density(dom.space, c * dom.rho[i]) * dom.rho[i];
    c -= err / dv;
  }
  return StarDomain(dom.space, dom.grid, c * dom.rho);
}

struct SweepRow {
  std::uint64_t seed = 0;
  std::string space;
  double volume = 0.0;
  double P_gap = 0.0;
  double sym_diff = 0.0;
  double stability_slack = 0.0;
  double ratio_bound = 0.0;
  double sigma1_ball = 0.0;
  bool iso_pass = false, calib_pass = false, stab_pass = false, chain_pass = false;

  bool all_pass() const { return iso_pass && calib_pass && stab_pass && chain_pass; }
};

/// Seeded falsification sweep over random star domains of one space.
inline std::vector<SweepRow> falsification_sweep(const ModelSpace& sp,
                                                 int grid_order, int n_seeds,
                                                 std::uint64_t seed0 = 1) {
  detail::require_non_compact(sp, "falsification_sweep");
  SphereGrid grid(sp.m, grid_order);
  // covers rho up to R0 e^{0.9} plus the radius of the doubled-volume ball
  RadialCache cache(sp, 6.0);
  std::vector<SweepRow> rows;
  rows.reserve(n_seeds);
  for (int k = 0; k < n_seeds; ++k) {
    std::uint64_t seed = seed0 + static_cast<std::uint64_t>(k);
    // base radius varies deterministically with the seed
    std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ull);
    double R0 = 0.6 + 0.8 * std::uniform_real_distribution<double>(0, 1)(rng);
    StarDomain dom = random_star_domain(sp, grid, R0, seed);
    auto rep = measure_domain(dom, cache);
    auto iso = check_weighted_isoperimetric(dom, cache, rep);
    auto stab = check_stability(dom, cache, rep);
    auto chain = check_bound_chain(dom, cache, rep);
    SweepRow row;
    row.seed = seed;
    row.space = std::string(family_name(sp.family)) + std::to_string(sp.n);
    row.volume = rep.volume;
    row.P_gap = iso.margin;
    row.sym_diff = rep.sym_diff;
    row.stability_slack = stab.margin;
    row.ratio_bound = chain.rayleigh_upper;
    row.sigma1_ball = chain.sigma1_ball;
    row.iso_pass = iso.pass;
    row.calib_pass = iso.calibration_pass;
    row.stab_pass = stab.pass;
    row.chain_pass = chain.pass;
    rows.push_back(row);
  }
  return rows;
}

inline void write_sweep_csv(std::ostream& os, const std::vector<SweepRow>& rows) {
  os << "seed,space,volume,P_gap,sym_diff,stability_slack,ratio_bound,"
        "sigma1_ball,pass_flags\n";
  os << std::setprecision(17);
  for (const auto& r : rows) {
    os << r.seed << ',' << r.space << ',' << r.volume << ',' << r.P_gap << ','
       << r.sym_diff << ',' << r.stability_slack << ',' << r.ratio_bound << ','
       << r.sigma1_ball << ',' << r.iso_pass << r.calib_pass << r.stab_pass
       << r.chain_pass << '\n';
  }
}

}  // namespace steklov

#endif

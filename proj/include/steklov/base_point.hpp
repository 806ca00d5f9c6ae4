#ifndef STEKLOV_BASE_POINT_HPP
#define STEKLOV_BASE_POINT_HPP

#include <cmath>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

#include "json.hpp"

#include "steklov/star_domain.hpp"

namespace steklov {

enum class PointModel { EuclideanCoords, HyperboloidCoords };

/// A point of R^m or of the hyperboloid model of RH^m
/// ({<x,x>_M = -1, x0 > 0} in Minkowski space R^{1,m}).
struct ManifoldPoint {
  PointModel model = PointModel::EuclideanCoords;
  Eigen::VectorXd coords;
};

namespace bp_detail {

inline double minkowski(const Eigen::VectorXd& x, const Eigen::VectorXd& y) {
  return -x[0] * y[0] + x.tail(x.size() - 1).dot(y.tail(y.size() - 1));
}

inline void renormalize(ManifoldPoint& p) {
  if (p.model != PointModel::HyperboloidCoords) return;
  Eigen::VectorXd sp = p.coords.tail(p.coords.size() - 1);
  p.coords[0] = std::sqrt(1.0 + sp.squaredNorm());
}

inline double distance(const ManifoldPoint& x, const ManifoldPoint& y) {
  if (x.model != y.model) throw std::invalid_argument("model mismatch");
  if (x.model == PointModel::EuclideanCoords) return (x.coords - y.coords).norm();
  double c = -minkowski(x.coords, y.coords);
  return std::acosh(std::max(c, 1.0));
}

// Unit initial direction w_y(x) of the geodesic from y to x, as an ambient
// vector tangent to the model at y. Zero vector when x == y.
inline Eigen::VectorXd unit_log(const ManifoldPoint& y, const ManifoldPoint& x) {
  if (y.model == PointModel::EuclideanCoords) {
    Eigen::VectorXd v = x.coords - y.coords;
    double n = v.norm();
    return n > 0 ? Eigen::VectorXd(v / n) : Eigen::VectorXd::Zero(v.size());
  }
  double ip = minkowski(x.coords, y.coords);
  Eigen::VectorXd v = x.coords + ip * y.coords;  // tangent at y
  double d = std::acosh(std::max(-ip, 1.0));
  if (d < 1e-300) return Eigen::VectorXd::Zero(v.size());
  return v / std::sinh(d);
}

inline ManifoldPoint geodesic_step(const ManifoldPoint& y,
                                   const Eigen::VectorXd& u, double t) {
  ManifoldPoint out = y;
  if (y.model == PointModel::EuclideanCoords) {
    out.coords = y.coords + t * u;
    return out;
  }
  double n = u.norm() > 0 ? std::sqrt(std::max(minkowski(u, u), 0.0)) : 0.0;
  if (n == 0.0) return out;
  out.coords = std::cosh(t * n) * y.coords + std::sinh(t * n) * (u / n);
  renormalize(out);
  return out;
}

}  // namespace bp_detail

/// Weighted boundary point cloud; weights sum to |dOmega|.
struct BoundarySample {
  PointModel model = PointModel::EuclideanCoords;
  Eigen::MatrixXd points;   // ambient dim x N
  Eigen::VectorXd weights;  // positive

  double total_weight() const { return pairwise_sum(weights); }
};

/// a and b = int_0^r a for the solver, on a cached radial range.
class BasePointContext {
 public:
  BasePointContext(const ModelSpace& sp, double length)
      : space_(sp), cache_(sp, length),
        b_([this](double r) { return r > 0 ? cache_.weight_a(r) : 0.0; },
           length) {}

  const ModelSpace& space() const { return space_; }
  double weight_a(double r) const { return r > 0 ? cache_.weight_a(r) : 0.0; }
  double b(double r) const { return b_(r); }

 private:
  ModelSpace space_;
  RadialCache cache_;
  ChebAntiderivative b_;
};

/// Boundary sample of a star domain: points exp_o(rho(w) w) with the
/// area-element weights of the boundary quadrature. d=1 spaces only.
inline BoundarySample boundary_sample(const StarDomain& dom) {
  const ModelSpace& sp = dom.space;
  if (sp.d != 1 || sp.compact())
    throw unsupported_space("boundary_sample: Euclidean or RH^m only");
  BoundarySample out;
  out.model = sp.family == Family::Euclidean ? PointModel::EuclideanCoords
                                             : PointModel::HyperboloidCoords;
  const int N = dom.grid.size();
  int dim = (out.model == PointModel::EuclideanCoords) ? sp.m : sp.m + 1;
  out.points.resize(dim, N);
  out.weights.resize(N);
  for (int i = 0; i < N; ++i) {
    double r = dom.rho[i];
    Eigen::VectorXd w = dom.grid.nodes().col(i);
    if (out.model == PointModel::EuclideanCoords) {
      out.points.col(i) = r * w;
    } else {
      out.points.col(i)[0] = std::cosh(r);
      out.points.col(i).tail(sp.m) = std::sinh(r) * w;
    }
    out.weights[i] =
        dom.grid.weights()[i] *
        boundary_area_element(sp, w, r, dom.grad_rho.col(i));
  }
  return out;
}

/// B(y) = int_{dOmega} b(d(x, y)), the convex potential of Lemma 4.6.
inline double potential_B(const BoundarySample& sample, const ManifoldPoint& y,
                          const BasePointContext& ctx) {
  if (sample.model != y.model)
    throw std::invalid_argument("potential_B: model mismatch");
  const int N = static_cast<int>(sample.weights.size());
  Eigen::VectorXd terms(N);
  ManifoldPoint x{sample.model, Eigen::VectorXd()};
  for (int i = 0; i < N; ++i) {
    x.coords = sample.points.col(i);
    terms[i] = sample.weights[i] * ctx.b(bp_detail::distance(x, y));
  }
  return pairwise_sum(terms);
}

/// grad B(y) = -int a(d(x,y)) w_y(x), an ambient tangent vector at y.
inline Eigen::VectorXd gradient_B(const BoundarySample& sample,
                                  const ManifoldPoint& y,
                                  const BasePointContext& ctx) {
  if (sample.model != y.model)
    throw std::invalid_argument("gradient_B: model mismatch");
  const int N = static_cast<int>(sample.weights.size());
  Eigen::VectorXd g = Eigen::VectorXd::Zero(sample.points.rows());
  ManifoldPoint x{sample.model, Eigen::VectorXd()};
  for (int i = 0; i < N; ++i) {
    x.coords = sample.points.col(i);
    double d = bp_detail::distance(x, y);
    if (d < 1e-10)
      throw std::invalid_argument("gradient_B: y coincides with a sample point");
    g -= sample.weights[i] * ctx.weight_a(d) * bp_detail::unit_log(y, x);
  }
  return g;
}

/// Geodesic gradient descent with Armijo backtracking; converges globally
/// since B is strictly convex on these nonpositively curved models.
inline ManifoldPoint find_base_point(const BoundarySample& sample,
                                     const BasePointContext& ctx,
                                     const ManifoldPoint* init = nullptr) {
  if (sample.weights.size() == 0)
    throw std::invalid_argument("find_base_point: empty sample");
  double area = sample.total_weight();
  ManifoldPoint y;
  if (init) {
    y = *init;
  } else {
    y.model = sample.model;
    y.coords = (sample.points * sample.weights) / area;  // ambient centroid
    bp_detail::renormalize(y);
  }
  double f = potential_B(sample, y, ctx);
  double step = 1.0;
  double gn = 0.0;
  Eigen::VectorXd g;
  for (int it = 0; it < 1000; ++it) {
    g = gradient_B(sample, y, ctx);
    gn = g.norm();
    if (gn < 1e-9 * area) return y;
    Eigen::VectorXd u = -g / gn;
    bool accepted = false;
    for (int ls = 0; ls < 60; ++ls) {
      ManifoldPoint trial = bp_detail::geodesic_step(y, u, step);
      double ft = potential_B(sample, trial, ctx);
      if (ft <= f - 1e-4 * step * gn) {
        y = trial;
        f = ft;
        step *= 2.0;
        accepted = true;
        break;
      }
      step *= 0.5;
    }
    if (!accepted) break;  // f differences below roundoff; polish on |grad|
  }
  // Near the minimum the potential is flat to machine precision while the
  // gradient is still resolvable; descend monitoring |grad B| instead.
  double t = 0.1 / area;
  for (int it = 0; it < 500 && gn >= 1e-9 * area; ++it) {
    if (t * gn < 1e-18) break;
    ManifoldPoint trial = bp_detail::geodesic_step(y, -g / gn, t * gn);
    Eigen::VectorXd gt = gradient_B(sample, trial, ctx);
    if (gt.norm() < gn) {
      y = trial;
      g = gt;
      gn = gt.norm();
      t *= 1.5;
    } else {
      t *= 0.5;
    }
  }
  if (gn < 1e-9 * area) return y;
  throw std::runtime_error("find_base_point: no convergence");
}

inline nlohmann::json to_json(const BoundarySample& s) {
  nlohmann::json j;
  j["model"] = (s.model == PointModel::EuclideanCoords) ? "euclidean" : "hyperboloid";
  for (int i = 0; i < s.weights.size(); ++i) {
    nlohmann::json row;
    row["coords"] = std::vector<double>(s.points.col(i).data(),
                                        s.points.col(i).data() + s.points.rows());
    row["weight"] = s.weights[i];
    j["samples"].push_back(row);
  }
  return j;
}

inline BoundarySample boundary_sample_from_json(const nlohmann::json& j) {
  BoundarySample s;
  s.model = (j.at("model") == "euclidean") ? PointModel::EuclideanCoords
                                           : PointModel::HyperboloidCoords;
  const auto& rows = j.at("samples");
  const int N = static_cast<int>(rows.size());
  if (N == 0) throw std::invalid_argument("boundary sample: empty");
  std::vector<double> first = rows[0].at("coords");
  s.points.resize(static_cast<int>(first.size()), N);
  s.weights.resize(N);
  for (int i = 0; i < N; ++i) {
    std::vector<double> c = rows[i].at("coords");
    s.points.col(i) = Eigen::Map<const Eigen::VectorXd>(c.data(), c.size());
    s.weights[i] = rows[i].at("weight");
  }
  return s;
}

inline nlohmann::json to_json(const ManifoldPoint& p, double grad_norm,
                              double area) {
  nlohmann::json j;
  j["model"] = (p.model == PointModel::EuclideanCoords) ? "euclidean" : "hyperboloid";
  j["coords"] = std::vector<double>(p.coords.data(), p.coords.data() + p.coords.size());
  j["grad_norm"] = grad_norm;
  j["boundary_area"] = area;
  return j;
}

}  // namespace steklov

#endif

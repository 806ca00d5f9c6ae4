#include "doctest.h"

#include <cmath>
#include <random>

#include "steklov/base_point.hpp"

using namespace steklov;

namespace {

ModelSpace RH(int n) { return ModelSpace::make(Family::RealHyperbolic, n); }
ModelSpace Euc(int m) { return ModelSpace::make(Family::Euclidean, m); }

// geodesic circle of radius r about p in the hyperboloid model of RH^2
BoundarySample circle_about(const Eigen::Vector3d& p, double r, int N) {
  Eigen::Vector3d e1, e2;
  // tangent frame at p = (cosh t, sinh t cos u, sinh t sin u): differentiate
  double t = std::acosh(p[0]);
  if (t < 1e-12) {
    e1 << 0, 1, 0;
    e2 << 0, 0, 1;
  } else {
    Eigen::Vector2d dir = p.tail(2).normalized();
    e1 << std::sinh(t), std::cosh(t) * dir[0], std::cosh(t) * dir[1];
    e2 << 0, -dir[1], dir[0];
  }
  BoundarySample s;
  s.model = PointModel::HyperboloidCoords;
  s.points.resize(3, N);
  s.weights = Eigen::VectorXd::Constant(N, 2.0 * M_PI * std::sinh(r) / N);
  for (int i = 0; i < N; ++i) {
    double phi = 2.0 * M_PI * i / N;
    Eigen::Vector3d u = std::cos(phi) * e1 + std::sin(phi) * e2;
    s.points.col(i) = std::cosh(r) * p + std::sinh(r) * u;
  }
  return s;
}

}  // namespace

TEST_CASE("potential basics") {
  BasePointContext ctx(Euc(2), 10.0);
  BoundarySample s;
  s.model = PointModel::EuclideanCoords;
  s.points = Eigen::MatrixXd::Zero(2, 1);
  s.points(0, 0) = 0.7;
  s.weights = Eigen::VectorXd::Constant(1, 1.0);
  ManifoldPoint y{PointModel::EuclideanCoords, s.points.col(0)};
  CHECK(potential_B(s, y, ctx) == doctest::Approx(0.0));
  // model mismatch rejected
  ManifoldPoint bad{PointModel::HyperboloidCoords, Eigen::Vector3d(1, 0, 0)};
  CHECK_THROWS_AS(potential_B(s, bad, ctx), std::invalid_argument);
}

TEST_CASE("two equal masses are balanced at the midpoint") {
  BasePointContext ctx(Euc(2), 10.0);
  BoundarySample s;
  s.model = PointModel::EuclideanCoords;
  s.points.resize(2, 2);
  s.points.col(0) << -1.0, 0.3;
  s.points.col(1) << 1.0, -0.3;
  s.weights = Eigen::VectorXd::Constant(2, 1.0);
  ManifoldPoint mid{PointModel::EuclideanCoords, Eigen::Vector2d(0.0, 0.0)};
  CHECK(gradient_B(s, mid, ctx).norm() < 1e-14);
  auto y = find_base_point(s, ctx);
  CHECK((y.coords - mid.coords).norm() < 1e-8);
}

TEST_CASE("hyperbolic circle recovers its center") {
  BasePointContext ctx(RH(2), 10.0);
  Eigen::Vector3d p(std::cosh(0.8), std::sinh(0.8) * 0.6, std::sinh(0.8) * 0.8);
  auto s = circle_about(p, 1.0, 64);
  auto y = find_base_point(s, ctx);
  CHECK((y.coords - p).norm() < 1e-8);
  // gradient vanishes at the center
  ManifoldPoint c{PointModel::HyperboloidCoords, p};
  CHECK(gradient_B(s, c, ctx).norm() < 1e-10 * s.total_weight());
}

TEST_CASE("gradient matches finite differences of the potential") {
  std::mt19937_64 rng(21);
  std::normal_distribution<double> gauss;
  BasePointContext ctx(RH(2), 12.0);
  Eigen::Vector3d p(1.0, 0.0, 0.0);
  auto s = circle_about(p, 1.2, 48);
  for (int trial = 0; trial < 20; ++trial) {
    // random y near the sample, off the boundary
    Eigen::Vector3d z(0.0, 0.4 * gauss(rng), 0.4 * gauss(rng));
    ManifoldPoint y{PointModel::HyperboloidCoords, Eigen::Vector3d()};
    y.coords = z;
    bp_detail::renormalize(y);
    Eigen::VectorXd g = gradient_B(s, y, ctx);
    // tangent directions at y
    for (int k = 0; k < 2; ++k) {
      Eigen::Vector3d v = Eigen::Vector3d::Zero();
      v[1 + k] = 1.0;
      // project to the tangent space: <v, y>_M y + v
      Eigen::Vector3d u = v + bp_detail::minkowski(v, y.coords) * y.coords;
      u /= std::sqrt(bp_detail::minkowski(u, u));
      double h = 1e-5;
      double fp = potential_B(s, bp_detail::geodesic_step(y, u, h), ctx);
      double fm = potential_B(s, bp_detail::geodesic_step(y, u, -h), ctx);
      double fd = (fp - fm) / (2.0 * h);
      double an = bp_detail::minkowski(g, u);
      REQUIRE(std::abs(an - fd) < 1e-6 * std::max(1.0, std::abs(fd)));
    }
  }
}

TEST_CASE("small displacement reverses the gradient direction") {
  BasePointContext ctx(RH(2), 10.0);
  Eigen::Vector3d p(1.0, 0.0, 0.0);
  auto s = circle_about(p, 1.0, 64);
  Eigen::Vector3d xi(0.0, 1.0, 0.0);  // tangent at p
  for (double t : {1e-3, 2e-3}) {
    ManifoldPoint y = bp_detail::geodesic_step(
        ManifoldPoint{PointModel::HyperboloidCoords, p}, xi, t);
    Eigen::VectorXd g = gradient_B(s, y, ctx);
    // gradient points uphill, along +xi
    CHECK(bp_detail::minkowski(g, xi) > 0.0);
  }
}

TEST_CASE("Euclidean base point equals the weighted barycenter") {
  // a(r) = r/m makes grad B linear: the solution is the weighted mean
  BasePointContext ctx(Euc(3), 20.0);
  std::mt19937_64 rng(9);
  std::normal_distribution<double> gauss;
  BoundarySample s;
  s.model = PointModel::EuclideanCoords;
  const int N = 40;
  s.points.resize(3, N);
  s.weights.resize(N);
  for (int i = 0; i < N; ++i) {
    for (int k = 0; k < 3; ++k) s.points(k, i) = gauss(rng);
    s.weights[i] = 0.5 + std::abs(gauss(rng));
  }
  auto y = find_base_point(s, ctx);
  Eigen::Vector3d mean = (s.points * s.weights) / s.weights.sum();
  CHECK((y.coords - mean).norm() < 1e-8);
}

TEST_CASE("base point of a perturbed star domain") {
  auto sp = RH(2);
  SphereGrid grid(2, 24);
  StarDomain dom = random_star_domain(sp, grid, 1.0, 31, 0.1);
  auto s = boundary_sample(dom);
  BasePointContext ctx(sp, 12.0);
  auto y = find_base_point(s, ctx);
  double area = s.total_weight();
  // orthogonality: every component of the gradient vanishes
  Eigen::VectorXd g = gradient_B(s, y, ctx);
  CHECK(g.norm() < 1e-8 * area);
  // descent sanity: the solution beats the centroid start and nearby points
  ManifoldPoint init{PointModel::HyperboloidCoords, Eigen::Vector3d()};
  init.coords = (s.points * s.weights) / area;
  bp_detail::renormalize(init);
  CHECK(potential_B(s, y, ctx) <= potential_B(s, init, ctx) + 1e-12);
  // uniqueness: random restarts agree
  std::mt19937_64 rng(77);
  std::normal_distribution<double> gauss;
  for (int trial = 0; trial < 10; ++trial) {
    ManifoldPoint start{PointModel::HyperboloidCoords, Eigen::Vector3d()};
    start.coords << 0.0, 0.5 * gauss(rng), 0.5 * gauss(rng);
    bp_detail::renormalize(start);
    auto yi = find_base_point(s, ctx, &start);
    REQUIRE((yi.coords - y.coords).norm() < 1e-7);
  }
}

TEST_CASE("sample JSON round trip") {
  auto sp = RH(2);
  SphereGrid grid(2, 8);
  StarDomain dom = random_star_domain(sp, grid, 1.0, 5);
  auto s = boundary_sample(dom);
  auto j = to_json(s);
  auto back = boundary_sample_from_json(j);
  CHECK((back.points - s.points).norm() == 0.0);
  CHECK((back.weights - s.weights).norm() == 0.0);
  CHECK(back.model == s.model);
}

#include "doctest.h"

#include <cmath>
#include <functional>
#include <random>
#include <vector>

#include "steklov/berger_frame.hpp"
#include "steklov/model_space.hpp"

using namespace steklov;

namespace {

ModelSpace RH(int n) { return ModelSpace::make(Family::RealHyperbolic, n); }
ModelSpace CH(int n) { return ModelSpace::make(Family::ComplexHyperbolic, n); }
ModelSpace Sph(int m) { return ModelSpace::make(Family::RoundSphere, m); }
ModelSpace Euc(int m) { return ModelSpace::make(Family::Euclidean, m); }

double fd_derivative(const std::function<double(double)>& f, double r,
                     double h = 1e-5) {
  return (f(r + h) - f(r - h)) / (2.0 * h);
}

}  // namespace

TEST_CASE("descriptor invariants") {
  auto ch2 = CH(2);
  CHECK(ch2.d == 2);
  CHECK(ch2.m == 4);
  CHECK(ch2.eps == -1);
  auto oh = ModelSpace::make(Family::OctonionicHyperbolic, 2);
  CHECK(oh.m == 16);
  CHECK_THROWS(ModelSpace::make(Family::OctonionicHyperbolic, 3));
  CHECK(Sph(3).diam == doctest::Approx(M_PI));
}

TEST_CASE("density closed forms") {
  CHECK(density(RH(3), 1.0) ==
        doctest::Approx(std::sinh(1.0) * std::sinh(1.0)).epsilon(1e-12));
  CHECK(density(Sph(2), M_PI / 2) == doctest::Approx(1.0));
  CHECK(density(CH(2), 1.0) ==
        doctest::Approx(std::cosh(1.0) * std::pow(std::sinh(1.0), 3)).epsilon(1e-12));
  CHECK_THROWS_AS(density(RH(3), -1.0), std::domain_error);
  CHECK_THROWS_AS(density(Sph(2), 3.5), std::domain_error);
}

TEST_CASE("mean curvature closed forms and limits") {
  for (double r : {0.3, 1.0, 2.5})
    CHECK(mean_curvature(RH(4), r) == doctest::Approx(1.0 / std::tanh(r)));
  CHECK(mean_curvature(Sph(3), M_PI / 2) == doctest::Approx(0.0));
  // h0 = 2n/(2n-1) for CH^n, volume entropy (m-1) h0 = 2n
  for (int n : {2, 3}) {
    auto sp = CH(n);
    CHECK(mean_curvature(sp, 25.0) ==
          doctest::Approx(2.0 * n / (2.0 * n - 1.0)).epsilon(1e-8));
    CHECK((sp.m - 1) * sp.entropy_h0() == doctest::Approx(2.0 * n));
  }
}

TEST_CASE("(m-1) h = theta'/theta") {
  for (auto sp : {Euc(3), RH(2), RH(3), CH(2), CH(3),
                  ModelSpace::make(Family::QuaternionicHyperbolic, 2), Sph(4)}) {
    for (double r : {0.2, 0.7, 1.4, 2.3}) {
      double lhs = (sp.m - 1) * mean_curvature(sp, r);
      double rhs = fd_derivative([&](double t) { return std::log(density(sp, t)); }, r);
      CHECK(lhs == doctest::Approx(rhs).epsilon(1e-8));
    }
  }
}

TEST_CASE("h' and h'' closed forms match finite differences") {
  for (auto sp : {RH(3), CH(2), Sph(3), Euc(4)}) {
    for (double r : {0.4, 1.1, 2.0}) {
      if (sp.compact() && r >= sp.diam - 0.2) continue;
      CHECK(mean_curvature_d1(sp, r) ==
            doctest::Approx(fd_derivative([&](double t) { return mean_curvature(sp, t); }, r))
                .epsilon(1e-7));
      CHECK(mean_curvature_d2(sp, r) ==
            doctest::Approx(fd_derivative([&](double t) { return mean_curvature_d1(sp, t); }, r))
                .epsilon(1e-7));
    }
  }
}

TEST_CASE("ball volumes") {
  CHECK(ball_volume(Euc(3), 1.0) == doctest::Approx(4.0 * M_PI / 3.0).epsilon(1e-12));
  CHECK(ball_volume(RH(2), 1.0) ==
        doctest::Approx(2.0 * M_PI * (std::cosh(1.0) - 1.0)).epsilon(1e-12));
  CHECK(ball_volume(Sph(2), M_PI - 1e-9) == doctest::Approx(4.0 * M_PI));
  // quadrature route agrees with the closed form for RH^3
  auto sp = RH(3);
  double q = unit_sphere_area(3) *
             integrate([&](double t) { return density(sp, t); }, 0.0, 2.0);
  CHECK(q == doctest::Approx(ball_volume(sp, 2.0)).epsilon(1e-12));
}

TEST_CASE("weight a closed forms and ODE identity") {
  for (double r : {0.5, 1.0, 2.0})
    CHECK(weight_a(Euc(5), r) == doctest::Approx(r / 5.0));
  for (double r : {0.5, 1.0, 2.0, 4.0})
    CHECK(weight_a(RH(2), r) == doctest::Approx(std::tanh(0.5 * r)).epsilon(1e-12));
  // a(r) -> 1/((m-1) h0)
  CHECK(weight_a(RH(4), 30.0) == doctest::Approx(1.0 / 3.0).epsilon(1e-8));
  // a' = 1 - (m-1) h a against finite differences
  for (auto sp : {RH(3), CH(2), Sph(3)}) {
    for (double r : {0.3, 0.9, 1.8}) {
      double fd = fd_derivative([&](double t) { return weight_a(sp, t); }, r);
      CHECK(weight_a_prime(sp, r) == doctest::Approx(fd).epsilon(1e-7));
    }
  }
  // tanh(r/2) agrees with the quadrature route in RH^2
  auto rh2 = RH(2);
  for (double r : {0.5, 1.0, 1.5, 2.0, 3.0})
    CHECK(density_integral(rh2, r) / density(rh2, r) ==
          doctest::Approx(std::tanh(0.5 * r)).epsilon(1e-11));
}

TEST_CASE("monotonicity: h decreasing, a increasing, G' > 0, H non-increasing") {
  for (auto sp : {RH(2), RH(3), CH(2), CH(3)}) {
    double prev_h = 1e300, prev_a = -1.0, prev_H = 1e300;
    for (int i = 1; i <= 60; ++i) {
      double r = 10.0 * i / 60.0;
      double h = mean_curvature(sp, r);
      double a = weight_a(sp, r);
      CHECK(h < prev_h);
      CHECK(h > sp.entropy_h0() - 1e-12);
      CHECK(a > prev_a);
      CHECK(calibration_G_prime(sp, r) > 0.0);
      double H = energy_density_H(sp, r);
      CHECK(H <= prev_H + 1e-12);
      prev_h = h;
      prev_a = a;
      prev_H = H;
    }
  }
}

TEST_CASE("Euclidean H is constant 1/m") {
  for (int m : {2, 3, 5})
    for (double r : {0.2, 1.0, 3.0})
      CHECK(energy_density_H(Euc(m), r) == doctest::Approx(1.0 / m).epsilon(1e-12));
}

TEST_CASE("volume entropy from log v(r)/r") {
  for (auto sp : {RH(3), CH(2)}) {
    for (double r : {20.0, 40.0}) {
      double rate = std::log(ball_volume(sp, r)) / r;
      double target = (sp.m - 1) * sp.entropy_h0();
      CHECK(std::abs(rate - target) / target < 0.05);
    }
  }
}

TEST_CASE("second fundamental form and Jacobi eigenvalues") {
  auto sp = CH(2);
  double r = 0.8;
  auto sff = sff_eigs(sp, r);
  CHECK(sff.berger == doctest::Approx(2.0 * std::cosh(2 * r) / std::sinh(2 * r)));
  CHECK(sff.round == doctest::Approx(std::cosh(r) / std::sinh(r)));
  auto j = jacobi_eigs(sp, r);
  CHECK(j.alpha == doctest::Approx(std::sinh(r) * std::cosh(r)));
  CHECK(j.beta == doctest::Approx(std::sinh(r)));
  // consistency: mean curvature is the weighted average of the sff eigenvalues
  double h = ((sp.d - 1) * sff.berger + (sp.m - sp.d) * sff.round) / (sp.m - 1);
  CHECK(h == doctest::Approx(mean_curvature(sp, r)).epsilon(1e-12));
}

TEST_CASE("ball radius inversion") {
  for (auto sp : {Euc(3), RH(2), RH(3), CH(2), Sph(3)}) {
    for (double r : {0.4, 1.0, 2.1}) {
      double v = ball_volume(sp, r);
      CHECK(ball_radius_for_volume(sp, v) == doctest::Approx(r).epsilon(1e-10));
    }
  }
}

TEST_CASE("stability g: formula vs finite differences, convexity, monotone g''") {
  auto sp = RH(3);
  double s = ball_volume(sp, 1.0);
  auto g = [&](double x) { return stability_g(sp, x).g; };
  double d2 = (g(s + 1e-2) - 2.0 * g(s) + g(s - 1e-2)) / 1e-4;
  auto sg = stability_g(sp, s);
  CHECK(sg.g2 == doctest::Approx(d2).epsilon(1e-4));
  CHECK(sg.g1 == doctest::Approx(fd_derivative(g, s, 1e-4)).epsilon(1e-6));
  CHECK(sg.g2 > 0.0);
  // g'' non-increasing on ROSS
  for (auto ross : {RH(2), RH(3), CH(2)}) {
    double prev = 1e300;
    for (int i = 1; i <= 20; ++i) {
      double vol = 0.4 * i;
      double g2 = stability_g(ross, vol).g2;
      CHECK(g2 <= prev * (1.0 + 1e-10));
      prev = g2;
    }
  }
  CHECK_THROWS_AS(stability_g(Sph(3), 1.0), unsupported_space);
}

TEST_CASE("Berger frame orthonormality") {
  std::mt19937_64 rng(7);
  std::normal_distribution<double> gauss;
  for (auto sp : {CH(2), CH(3), ModelSpace::make(Family::QuaternionicHyperbolic, 2),
                  ModelSpace::make(Family::OctonionicHyperbolic, 2)}) {
    BergerFrame frame(sp);
    for (int trial = 0; trial < 250; ++trial) {
      Eigen::VectorXd w(sp.m);
      for (int i = 0; i < sp.m; ++i) w[i] = gauss(rng);
      w.normalize();
      std::vector<Eigen::VectorXd> basis{w};
      for (int k = 1; k <= frame.count(); ++k) basis.push_back(frame.apply(k, w));
      for (size_t i = 0; i < basis.size(); ++i)
        for (size_t j = 0; j <= i; ++j) {
          double expect = (i == j) ? 1.0 : 0.0;
          REQUIRE(std::abs(basis[i].dot(basis[j]) - expect) < 1e-12);
        }
      // J_k^2 = -I
      for (int k = 1; k <= frame.count(); ++k)
        REQUIRE((frame.apply(k, frame.apply(k, w)) + w).norm() < 1e-12);
    }
  }
}

#include "doctest.h"

#include <cmath>

#include "steklov/radial_series.hpp"

using namespace steklov;

namespace {

ModelSpace RH(int n) { return ModelSpace::make(Family::RealHyperbolic, n); }
ModelSpace CH(int n) { return ModelSpace::make(Family::ComplexHyperbolic, n); }
ModelSpace Sph(int m) { return ModelSpace::make(Family::RoundSphere, m); }
ModelSpace Euc(int m) { return ModelSpace::make(Family::Euclidean, m); }

}  // namespace

TEST_CASE("alpha/beta leading coefficients") {
  for (auto sp : {Euc(4), RH(3), CH(2), Sph(3)}) {
    for (int p : {1, 2}) {
      if (p >= 2 && !sp.constant_curvature()) continue;
      PowerSeries alpha, beta;
      alpha_beta_series(sp, make_mode(sp, p), 16, alpha, beta);
      CHECK(alpha.coeffs[0] == doctest::Approx(sp.m - 1));
      CHECK(alpha.coeffs[1] == 0.0);
      CHECK(beta.coeffs[0] == doctest::Approx(static_cast<double>(p) * (p + sp.m - 2)));
      CHECK(beta.coeffs[1] == 0.0);
    }
  }
}

TEST_CASE("coth expansion: alpha for RH^2") {
  PowerSeries alpha, beta;
  auto sp = RH(2);
  alpha_beta_series(sp, make_mode(sp, 1), 8, alpha, beta);
  CHECK(alpha.coeffs[0] == doctest::Approx(1.0));
  CHECK(alpha.coeffs[2] == doctest::Approx(1.0 / 3.0).epsilon(1e-14));
  CHECK(alpha.coeffs[4] == doctest::Approx(-1.0 / 45.0).epsilon(1e-13));
  CHECK(alpha.coeffs[6] == doctest::Approx(2.0 / 945.0).epsilon(1e-12));
  // partial sums reproduce r*coth(r) at r = 0.1
  double r = 0.1, acc = 0.0;
  for (int i = 8; i >= 0; --i) acc = acc * r + alpha.coeffs[i];
  CHECK(acc == doctest::Approx(r / std::tanh(r)).epsilon(1e-14));
}

TEST_CASE("alpha/beta evaluate to r theta'/theta and r^2 lambda") {
  for (auto sp : {RH(3), CH(2), Sph(4)}) {
    auto spec = make_mode(sp, 1);
    PowerSeries alpha, beta;
    alpha_beta_series(sp, spec, 64, alpha, beta);
    for (double r : {0.1, 0.5, 1.0}) {
      double target_alpha = r * (sp.m - 1) * mean_curvature(sp, r);
      double target_beta = r * r * spec.lambda_r(r);
      CHECK(alpha.eval(r) == doctest::Approx(target_alpha).epsilon(1e-12));
      CHECK(beta.eval(r) == doctest::Approx(target_beta).epsilon(1e-11));
    }
  }
}

TEST_CASE("sphere beta/alpha coefficient relation") {
  // (j-1) p (p+m-2) alpha_j / (m-1) = -beta_j for the round sphere
  auto sp = Sph(4);
  for (int p : {1, 2, 3}) {
    auto spec = make_mode(sp, p);
    PowerSeries alpha, beta;
    alpha_beta_series(sp, spec, 24, alpha, beta);
    for (int j = 2; j <= 24; j += 2) {
      double lhs = (j - 1) * spec.lambda_c * alpha.coeffs[j] / (sp.m - 1);
      CHECK(lhs == doctest::Approx(-beta.coeffs[j]).epsilon(1e-12));
    }
  }
}

TEST_CASE("Euclidean profiles are exact monomials") {
  for (int m : {2, 3, 5}) {
    auto sp = Euc(m);
    for (int p : {1, 2, 4}) {
      auto mode = build_profile(sp, make_mode(sp, p), 32);
      for (int i = 0; i <= 32; ++i) {
        if (i == p)
          CHECK(mode.profile.coeffs[i] == 1.0);
        else
          CHECK(std::abs(mode.profile.coeffs[i]) < 1e-15);
      }
    }
  }
}

TEST_CASE("sphere p=1 profile is 2 tan(r/2)") {
  auto sp = Sph(2);
  auto mode = build_profile(sp, make_mode(sp, 1), 8);
  CHECK(mode.profile.coeffs[1] == 1.0);
  CHECK(mode.profile.coeffs[3] == doctest::Approx(1.0 / 12.0).epsilon(1e-13));
  CHECK(mode.profile.coeffs[5] == doctest::Approx(1.0 / 120.0).epsilon(1e-12));
  auto big = build_profile(sp, make_mode(sp, 1), 64);
  for (double r : {0.3, 0.8, 1.3})
    CHECK(big.profile.eval(r) == doctest::Approx(2.0 * std::tan(0.5 * r)).epsilon(1e-12));
}

TEST_CASE("sphere profiles have nonnegative coefficients") {
  for (int m : {2, 3, 5}) {
    auto sp = Sph(m);
    for (int p : {1, 2, 5}) {
      auto mode = build_profile(sp, make_mode(sp, p), 128);
      for (int i = 0; i <= 128; ++i)
        CHECK(mode.profile.coeffs[i] >= -1e-14);
    }
  }
}

TEST_CASE("recursion residual vanishes") {
  for (auto sp : {RH(3), CH(2), Sph(3)}) {
    auto spec = make_mode(sp, 1);
    auto mode = build_profile(sp, spec, 64);
    PowerSeries alpha, beta;
    alpha_beta_series(sp, spec, 64, alpha, beta);
    for (int i = spec.p + 1; i <= 64; ++i) {
      double lhs = mode.profile.coeffs[i] *
                   (static_cast<double>(i) * (i + sp.m - 2) - spec.lambda_c);
      double scale = std::abs(lhs);
      for (int j = 0; j < i; ++j) {
        double term = (j * alpha.coeffs[i - j] - beta.coeffs[i - j]) *
                      mode.profile.coeffs[j];
        lhs += term;
        scale = std::max(scale, std::abs(term));
      }
      CHECK(std::abs(lhs) <= 1e-12 * std::max(scale, 1e-300));
    }
  }
}

TEST_CASE("harmonicity residual of built profiles") {
  for (auto sp : {RH(3), CH(2), Sph(3)}) {
    auto spec = make_mode(sp, 1);
    auto mode = build_profile_auto(sp, spec, 1.0);
    double rmax = 0.9 * mode.profile.radius_hint;
    for (int i = 1; i <= 50; ++i) {
      double r = rmax * i / 50.0;
      double a = mode.profile.eval(r);
      double da = mode.profile.eval_derivative(r);
      double d2a = 0.0;
      for (int k = mode.profile.truncation(); k >= 2; --k)
        d2a = d2a * r + k * (k - 1) * mode.profile.coeffs[k];
      double res = d2a + (sp.m - 1) * mean_curvature(sp, r) * da -
                   spec.lambda_r(r) * a;
      CHECK(std::abs(res) < 1e-8 * std::max(1.0, std::abs(d2a)));
    }
  }
}

TEST_CASE("first-harmonic profile is proportional to v/v'") {
  for (auto sp : {RH(2), RH(3), CH(2), Sph(3)}) {
    auto mode = build_profile_auto(sp, make_mode(sp, 1), 1.2);
    double ref = -1.0;
    for (double r : {0.2, 0.5, 0.8, 1.1}) {
      double ratio = mode.profile.eval(r) * 1.0 / (sp.m * weight_a(sp, r));
      if (ref < 0)
        ref = ratio;
      else
        CHECK(ratio == doctest::Approx(ref).epsilon(1e-8));
    }
    CHECK(ref == doctest::Approx(1.0).epsilon(1e-8));  // xi_p = 1 matches m * v/v'
  }
}

TEST_CASE("sigma closed forms") {
  // Euclidean: sigma_1(B_R) = 1/R
  for (double R : {0.5, 1.0, 2.0}) {
    CHECK(sigma_first_ball(Euc(3), R) == doctest::Approx(1.0 / R).epsilon(1e-12));
    auto mode = build_profile(Euc(3), make_mode(Euc(3), 1), 16);
    CHECK(mode.sigma_series(R) == doctest::Approx(1.0 / R).epsilon(1e-12));
  }
  // RH^2: sigma_1(B_R) = 1/sinh(R)
  for (double R : {0.5, 1.0, 2.0, 4.0})
    CHECK(sigma_first_ball(RH(2), R) ==
          doctest::Approx(1.0 / std::sinh(R)).epsilon(1e-10));
  // small balls are asymptotically Euclidean
  CHECK(sigma_first_ball(RH(3), 1e-3) == doctest::Approx(1e3).epsilon(1e-4));
}

TEST_CASE("Riccati integration matches closed forms and series") {
  CHECK(sigma_ode_integrate(Euc(4), make_mode(Euc(4), 1), 2.0) ==
        doctest::Approx(0.5).epsilon(1e-9));
  CHECK(sigma_ode_integrate(RH(2), make_mode(RH(2), 1), 1.0) ==
        doctest::Approx(1.0 / std::sinh(1.0)).epsilon(1e-9));
  for (auto sp : {RH(3), CH(2), Sph(3)}) {
    auto spec = make_mode(sp, 1);
    auto mode = build_profile_auto(sp, spec, 1.4, 1e-12);
    for (double R : {0.4, 0.9, 1.3}) {
      CHECK(std::abs(sigma_ode_integrate(sp, spec, R) - mode.sigma_series(R)) <
            1e-6);
    }
  }
}

TEST_CASE("series/ODE continuation agree across the handoff radius") {
  auto sp = Sph(3);
  auto mode = build_profile_auto(sp, make_mode(sp, 1), 1.0);
  // closed form ladder: a_1 proportional to v/v', sigma = a'/a
  for (double R : {0.5, 1.5, 2.5, 3.0}) {
    double sigma = sigma_value(mode, R);
    CHECK(sigma == doctest::Approx(sigma_first_ball(sp, R)).epsilon(1e-8));
  }
}

TEST_CASE("mode comparison: sigma monotone in lambda") {
  Eigen::VectorXd grid(15);
  for (int i = 0; i < 15; ++i) grid[i] = 0.1 + 2.9 * i / 14.0;
  auto rh3 = RH(3);
  CHECK(comparison_check(rh3, make_mode(rh3, 1), make_mode(rh3, 2), grid));
  CHECK(comparison_check(rh3, make_mode(rh3, 1), make_mode(rh3, 1), grid));
  Eigen::VectorXd sgrid(15);
  for (int i = 0; i < 15; ++i) sgrid[i] = 0.1 + 2.8 * i / 14.0;
  auto s3 = Sph(3);
  CHECK(comparison_check(s3, make_mode(s3, 1), make_mode(s3, 2), sgrid));
}

TEST_CASE("unsupported modes and validation") {
  CHECK_THROWS_AS(make_mode(CH(2), 2), unsupported_mode);
  CHECK_THROWS_AS(build_profile(RH(3), make_mode(RH(3), 1), 1), std::invalid_argument);
}

#ifndef STEKLOV_QUADRATURE_HPP
#define STEKLOV_QUADRATURE_HPP

#include <Eigen/Dense>

#include <cmath>
#include <stdexcept>
#include <utility>

namespace steklov {

namespace detail {

// Gauss-Kronrod 7-15 pair on [-1,1]. Nodes are symmetric; only the
// nonnegative half is tabulated.
inline constexpr double kronrod_nodes[8] = {
    0.991455371120813, 0.949107912342759, 0.864864423359769,
    0.741531185599394, 0.586087235467691, 0.405845151377397,
    0.207784955007898, 0.000000000000000};

inline constexpr double kronrod_weights[8] = {
    0.022935322010529, 0.063092092629979, 0.104790010322250,
    0.140653259715525, 0.169004726639267, 0.190350578064785,
    0.204432940075298, 0.209482141084728};

inline constexpr double gauss_weights[4] = {
    0.129484966168870, 0.279705391489277, 0.381830050505119,
    0.417959183673469};

template <class F>
std::pair<double, double> gk15(F&& f, double a, double b) {
  const double c = 0.5 * (a + b);
  const double h = 0.5 * (b - a);
  double resk = 0.0, resg = 0.0;
  for (int i = 0; i < 8; ++i) {
    const double x = h * kronrod_nodes[i];
    double fv = f(c + x);
    if (i < 7) fv += f(c - x);
    resk += kronrod_weights[i] * fv;
    if (i % 2 == 1) resg += gauss_weights[i / 2] * fv;
  }
  resk *= h;
  resg *= h;
  return {resk, std::abs(resk - resg)};
}

template <class F>
double adaptive(F&& f, double a, double b, double abs_tol, double rel_tol,
                int depth) {
  auto [val, err] = gk15(f, a, b);
  if (err <= abs_tol || err <= rel_tol * std::abs(val) || depth > 48)
    return val;
  const double c = 0.5 * (a + b);
  return adaptive(f, a, c, 0.5 * abs_tol, rel_tol, depth + 1) +
         adaptive(f, c, b, 0.5 * abs_tol, rel_tol, depth + 1);
}

}  // namespace detail

/// Adaptive Gauss-Kronrod integral of f over [a,b].
template <class F>
double integrate(F&& f, double a, double b, double abs_tol = 1e-12,
                 double rel_tol = 1e-12) {
  if (a == b) return 0.0;
  return detail::adaptive(f, a, b, abs_tol, rel_tol, 0);
}

/// Gauss-Legendre nodes and weights on [-1,1], by Newton iteration on P_n.
inline void gauss_legendre(int n, Eigen::VectorXd& x, Eigen::VectorXd& w) {
  if (n < 1) throw std::invalid_argument("gauss_legendre: n < 1");
  x.resize(n);
  w.resize(n);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double t = std::cos(M_PI * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = t;
      for (int k = 2; k <= n; ++k) {
        double p2 = ((2 * k - 1) * t * p1 - (k - 1) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (t * p1 - p0) / (t * t - 1.0);
      double dt = p1 / dp;
      t -= dt;
      if (std::abs(dt) < 1e-15) break;
    }
    x[i] = -t;
    x[n - 1 - i] = t;
    double wi = 2.0 / ((1.0 - t * t) * dp * dp);
    w[i] = wi;
    w[n - 1 - i] = wi;
  }
}

/// Antiderivative F(r) = \int_0^r f of a smooth function on [0, L],
/// represented by a Chebyshev interpolant integrated term by term.
class ChebAntiderivative {
 public:
  ChebAntiderivative() = default;

  template <class F>
  ChebAntiderivative(F&& f, double length, int n = 200) : length_(length) {
    if (!(length > 0)) throw std::invalid_argument("ChebAntiderivative: L <= 0");
    // Values at Chebyshev-Lobatto points mapped to [0, L].
    Eigen::VectorXd vals(n + 1);
    for (int j = 0; j <= n; ++j) {
      double x = std::cos(M_PI * j / n);                // [-1,1]
      vals[j] = f(0.5 * length_ * (x + 1.0));
    }
    // Chebyshev coefficients (naive cosine transform; n is small).
    Eigen::VectorXd a(n + 1);
    for (int k = 0; k <= n; ++k) {
      double s = 0.5 * (vals[0] + (k % 2 == 0 ? vals[n] : -vals[n]));
      for (int j = 1; j < n; ++j) s += vals[j] * std::cos(M_PI * k * j / n);
      a[k] = 2.0 * s / n;
    }
    a[0] *= 0.5;
    a[n] *= 0.5;
    // Term-by-term antiderivative in x, scaled by dx -> dr.
    coeffs_ = Eigen::VectorXd::Zero(n + 2);
    for (int k = 1; k <= n + 1; ++k) {
      double am = (k - 1 >= 1) ? a[k - 1] : 2.0 * a[0];
      double ap = (k + 1 <= n) ? a[k + 1] : 0.0;
      coeffs_[k] = 0.5 * length_ * (am - ap) / (2.0 * k);
    }
    offset_ = -eval_raw(-1.0);
  }

  double length() const { return length_; }

  double operator()(double r) const {
    if (r < 0.0 || r > length_ * (1.0 + 1e-12))
      throw std::domain_error("ChebAntiderivative: argument out of range");
    double x = 2.0 * std::min(r, length_) / length_ - 1.0;
    return eval_raw(x) + offset_;
  }

 private:
  double eval_raw(double x) const {
    // Clenshaw recurrence.
    double b1 = 0.0, b2 = 0.0;
    for (int k = static_cast<int>(coeffs_.size()) - 1; k >= 1; --k) {
      double b0 = 2.0 * x * b1 - b2 + coeffs_[k];
      b2 = b1;
      b1 = b0;
    }
    return x * b1 - b2 + coeffs_[0];
  }

  double length_ = 0.0;
  double offset_ = 0.0;
  Eigen::VectorXd coeffs_;
};

}  // namespace steklov

#endif

#ifndef STEKLOV_SPHERE_GRID_HPP
#define STEKLOV_SPHERE_GRID_HPP

#include <cmath>
#include <complex>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

#include "steklov/model_space.hpp"
#include "steklov/quadrature.hpp"

namespace steklov {

namespace grid_detail {

// Spectral differentiation matrix for n equispaced points on the circle
// (n even), spacing 2*pi/n.
inline Eigen::MatrixXd periodic_diff(int n) {
  Eigen::MatrixXd D = Eigen::MatrixXd::Zero(n, n);
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < n; ++k) {
      if (j == k) continue;
      int s = ((j - k) % 2 == 0) ? 1 : -1;
      D(j, k) = 0.5 * s / std::tan(0.5 * (j - k) * 2.0 * M_PI / n);
    }
  return D;
}

// Barycentric differentiation matrix on arbitrary distinct nodes.
// Log-scaled barycentric weights keep the entries finite for large n.
inline Eigen::MatrixXd barycentric_diff(const Eigen::VectorXd& x) {
  const int n = static_cast<int>(x.size());
  Eigen::VectorXd logw(n);
  Eigen::VectorXi sgn(n);
  for (int i = 0; i < n; ++i) {
    double lw = 0.0;
    int s = 1;
    for (int j = 0; j < n; ++j) {
      if (j == i) continue;
      double d = x[i] - x[j];
      lw -= std::log(std::abs(d));
      if (d < 0) s = -s;
    }
    logw[i] = lw;
    sgn[i] = s;
  }
  Eigen::MatrixXd D(n, n);
  for (int i = 0; i < n; ++i) {
    double row = 0.0;
    for (int j = 0; j < n; ++j) {
      if (j == i) continue;
      double r = sgn[j] * sgn[i] * std::exp(logw[j] - logw[i]);
      D(i, j) = r / (x[i] - x[j]);
      row += D(i, j);
    }
    D(i, i) = -row;
  }
  return D;
}

}  // namespace grid_detail

/// Product quadrature grid on the unit sphere S^{m-1}, m in {2,3,4}.
///
/// m=2: uniform circle grid; m=3: Gauss-Legendre in cos(theta) x uniform
/// longitude; m=4: Hopf coordinates with Gauss-Legendre in u = cos(2 eta)
/// and two uniform circle factors, so that the J_1 direction of CH^2 is a
/// coordinate direction. Weights sum to |S^{m-1}|; gradients of node data
/// come from spectral differentiation in each factor.
class SphereGrid {
 public:
  SphereGrid(int m, int order) : m_(m), order_(order) {
    if (order < 2) throw std::invalid_argument("SphereGrid: order < 2");
    switch (m) {
      case 2:
        build_circle();
        break;
      case 3:
        build_s2();
        break;
      case 4:
        build_s3();
        break;
      default:
        throw std::invalid_argument("SphereGrid: m must be 2, 3 or 4");
    }
  }

  int dim() const { return m_; }
  int order() const { return order_; }
  int size() const { return static_cast<int>(weights_.size()); }
  const Eigen::MatrixXd& nodes() const { return nodes_; }      // m x N
  const Eigen::VectorXd& weights() const { return weights_; }  // sums to |S^{m-1}|

  /// Round-metric gradient of a node function, as embedded tangent
  /// vectors in R^m (column i is tangent to the sphere at node i).
  Eigen::MatrixXd gradient(const Eigen::VectorXd& rho) const {
    if (rho.size() != weights_.size())
      throw std::invalid_argument("SphereGrid::gradient: size mismatch");
    switch (m_) {
      case 2:
        return grad_circle(rho);
      case 3:
        return grad_s2(rho);
      default:
        return grad_s3(rho);
    }
  }

 private:
  void build_circle() {
    const int n = 2 * order_;
    nodes_.resize(2, n);
    weights_ = Eigen::VectorXd::Constant(n, 2.0 * M_PI / n);
    for (int i = 0; i < n; ++i) {
      double phi = 2.0 * M_PI * i / n;
      nodes_.col(i) << std::cos(phi), std::sin(phi);
    }
    Dphi_ = grid_detail::periodic_diff(n);
  }

  void build_s2() {
    nu_ = order_;
    nphi_ = 2 * order_;
    gauss_legendre(nu_, u_, wu_);
    Du_ = grid_detail::barycentric_diff(u_);
    Dphi_ = grid_detail::periodic_diff(nphi_);
    const int N = nu_ * nphi_;
    nodes_.resize(3, N);
    weights_.resize(N);
    for (int iu = 0; iu < nu_; ++iu) {
      double st = std::sqrt(1.0 - u_[iu] * u_[iu]);
      for (int ip = 0; ip < nphi_; ++ip) {
        double phi = 2.0 * M_PI * ip / nphi_;
        int i = iu * nphi_ + ip;
        nodes_.col(i) << st * std::cos(phi), st * std::sin(phi), u_[iu];
        weights_[i] = wu_[iu] * (2.0 * M_PI / nphi_);
      }
    }
  }

  void build_s3() {
    nu_ = order_;
    nphi_ = 2 * order_;
    gauss_legendre(nu_, u_, wu_);  // u = cos(2 eta) in (-1, 1)
    Du_ = grid_detail::barycentric_diff(u_);
    Dphi_ = grid_detail::periodic_diff(nphi_);
    const int N = nu_ * nphi_ * nphi_;
    nodes_.resize(4, N);
    weights_.resize(N);
    for (int iu = 0; iu < nu_; ++iu) {
      double ce = std::sqrt(0.5 * (1.0 + u_[iu]));  // cos(eta)
      double se = std::sqrt(0.5 * (1.0 - u_[iu]));  // sin(eta)
      for (int i1 = 0; i1 < nphi_; ++i1) {
        double p1 = 2.0 * M_PI * i1 / nphi_;
        for (int i2 = 0; i2 < nphi_; ++i2) {
          double p2 = 2.0 * M_PI * i2 / nphi_;
          int i = (iu * nphi_ + i1) * nphi_ + i2;
          nodes_.col(i) << ce * std::cos(p1), ce * std::sin(p1),
              se * std::cos(p2), se * std::sin(p2);
          // dV = (1/4) du dphi1 dphi2
          weights_[i] = 0.25 * wu_[iu] * (2.0 * M_PI / nphi_) * (2.0 * M_PI / nphi_);
        }
      }
    }
  }

  Eigen::MatrixXd grad_circle(const Eigen::VectorXd& rho) const {
    const int n = size();
    Eigen::VectorXd drho = Dphi_ * rho;
    Eigen::MatrixXd g(2, n);
    for (int i = 0; i < n; ++i) {
      double phi = 2.0 * M_PI * i / n;
      g.col(i) << -std::sin(phi) * drho[i], std::cos(phi) * drho[i];
    }
    return g;
  }

  // d/dtheta of a smooth sphere function, mode by azimuthal mode: the
  // theta-profile of Fourier mode k is sin^{|k| mod 2}(theta) times a
  // smooth function of u = cos(theta), so odd modes are desingularized
  // before polynomial differentiation in u.
  Eigen::MatrixXd dtheta_sheet(const Eigen::MatrixXd& sheet) const {
    const int n = nphi_;
    Eigen::MatrixXcd modes(nu_, n);
    for (int k = 0; k < n; ++k)
      for (int iu = 0; iu < nu_; ++iu) {
        std::complex<double> c(0.0, 0.0);
        for (int ip = 0; ip < n; ++ip)
          c += sheet(iu, ip) *
               std::polar(1.0, -2.0 * M_PI * k * ip / n);
        modes(iu, k) = c;
      }
    Eigen::MatrixXcd dmodes(nu_, n);
    for (int k = 0; k < n; ++k) {
      int kappa = (k <= n / 2) ? k : k - n;
      int parity = std::abs(kappa) % 2;
      Eigen::VectorXcd gmode(nu_);
      for (int iu = 0; iu < nu_; ++iu) {
        double st = std::sqrt(1.0 - u_[iu] * u_[iu]);
        gmode[iu] = modes(iu, k) / (parity ? st : 1.0);
      }
      Eigen::VectorXcd gp = Du_ * gmode;
      for (int iu = 0; iu < nu_; ++iu) {
        double u = u_[iu];
        double s2 = 1.0 - u * u;
        if (parity == 0)
          dmodes(iu, k) = -std::sqrt(s2) * gp[iu];
        else
          dmodes(iu, k) = u * gmode[iu] - s2 * gp[iu];
      }
    }
    Eigen::MatrixXd out(nu_, n);
    for (int iu = 0; iu < nu_; ++iu)
      for (int ip = 0; ip < n; ++ip) {
        std::complex<double> c(0.0, 0.0);
        for (int k = 0; k < n; ++k)
          c += dmodes(iu, k) * std::polar(1.0, 2.0 * M_PI * k * ip / n);
        out(iu, ip) = c.real() / n;
      }
    return out;
  }

  Eigen::MatrixXd grad_s2(const Eigen::VectorXd& rho) const {
    Eigen::MatrixXd g(3, size());
    Eigen::MatrixXd sheet(nu_, nphi_);
    for (int iu = 0; iu < nu_; ++iu)
      for (int ip = 0; ip < nphi_; ++ip) sheet(iu, ip) = rho[iu * nphi_ + ip];
    Eigen::MatrixXd dth = dtheta_sheet(sheet);
    Eigen::MatrixXd dphi = sheet * Dphi_.transpose();
    for (int iu = 0; iu < nu_; ++iu) {
      double u = u_[iu];
      double st = std::sqrt(1.0 - u * u);
      for (int ip = 0; ip < nphi_; ++ip) {
        double phi = 2.0 * M_PI * ip / nphi_;
        double cp = std::cos(phi), sp = std::sin(phi);
        // theta-hat and phi-hat with u = cos(theta)
        Eigen::Vector3d that(u * cp, u * sp, -st);
        Eigen::Vector3d phat(-sp, cp, 0.0);
        g.col(iu * nphi_ + ip) = dth(iu, ip) * that + (dphi(iu, ip) / st) * phat;
      }
    }
    return g;
  }

  // d/deta on the Hopf grid: the eta-profile of the (k1, k2) double Fourier
  // mode is cos^{e1}(eta) sin^{e2}(eta) times a smooth function of
  // u = cos(2 eta), with e_i = |k_i| mod 2.
  Eigen::VectorXd deta_cube(const Eigen::VectorXd& rho) const {
    const int n1 = nphi_, n2 = nphi_;
    Eigen::MatrixXcd W(n1, n1);
    for (int k = 0; k < n1; ++k)
      for (int j = 0; j < n1; ++j) W(k, j) = std::polar(1.0, -2.0 * M_PI * k * j / n1);
    std::vector<Eigen::MatrixXcd> modes(nu_);
    for (int iu = 0; iu < nu_; ++iu) {
      Eigen::MatrixXcd sheet(n1, n2);
      for (int i1 = 0; i1 < n1; ++i1)
        for (int i2 = 0; i2 < n2; ++i2)
          sheet(i1, i2) = rho[(iu * n1 + i1) * n2 + i2];
      modes[iu] = W * sheet * W.transpose();
    }
    std::vector<Eigen::MatrixXcd> dmodes(nu_, Eigen::MatrixXcd(n1, n2));
    Eigen::VectorXcd gmode(nu_);
    for (int k1 = 0; k1 < n1; ++k1) {
      int e1 = std::abs((k1 <= n1 / 2) ? k1 : k1 - n1) % 2;
      for (int k2 = 0; k2 < n2; ++k2) {
        int e2 = std::abs((k2 <= n2 / 2) ? k2 : k2 - n2) % 2;
        for (int iu = 0; iu < nu_; ++iu) {
          double ce = std::sqrt(0.5 * (1.0 + u_[iu]));
          double se = std::sqrt(0.5 * (1.0 - u_[iu]));
          double den = (e1 ? ce : 1.0) * (e2 ? se : 1.0);
          gmode[iu] = modes[iu](k1, k2) / den;
        }
        Eigen::VectorXcd gp = Du_ * gmode;
        for (int iu = 0; iu < nu_; ++iu) {
          double ce = std::sqrt(0.5 * (1.0 + u_[iu]));
          double se = std::sqrt(0.5 * (1.0 - u_[iu]));
          double pref = (e1 ? ce : 1.0) * (e2 ? se : 1.0);
          dmodes[iu](k1, k2) =
              (e2 * ce * (e1 ? ce : 1.0) - e1 * se * (e2 ? se : 1.0)) * gmode[iu] -
              4.0 * se * ce * pref * gp[iu];
        }
      }
    }
    Eigen::VectorXd out(size());
    for (int iu = 0; iu < nu_; ++iu) {
      Eigen::MatrixXcd back = W.conjugate() * dmodes[iu] * W.adjoint();
      for (int i1 = 0; i1 < n1; ++i1)
        for (int i2 = 0; i2 < n2; ++i2)
          out[(iu * n1 + i1) * n2 + i2] = back(i1, i2).real() / (n1 * n2);
    }
    return out;
  }

  Eigen::MatrixXd grad_s3(const Eigen::VectorXd& rho) const {
    Eigen::MatrixXd g(4, size());
    const int n1 = nphi_, n2 = nphi_;
    Eigen::VectorXd deta = deta_cube(rho);
    Eigen::VectorXd d1(size()), d2(size());
    for (int iu = 0; iu < nu_; ++iu) {
      for (int i2 = 0; i2 < n2; ++i2) {
        Eigen::VectorXd col(n1);
        for (int i1 = 0; i1 < n1; ++i1) col[i1] = rho[(iu * n1 + i1) * n2 + i2];
        Eigen::VectorXd dc = Dphi_ * col;
        for (int i1 = 0; i1 < n1; ++i1) d1[(iu * n1 + i1) * n2 + i2] = dc[i1];
      }
      for (int i1 = 0; i1 < n1; ++i1) {
        Eigen::VectorXd col(n2);
        for (int i2 = 0; i2 < n2; ++i2) col[i2] = rho[(iu * n1 + i1) * n2 + i2];
        Eigen::VectorXd dc = Dphi_ * col;
        for (int i2 = 0; i2 < n2; ++i2) d2[(iu * n1 + i1) * n2 + i2] = dc[i2];
      }
    }
    for (int iu = 0; iu < nu_; ++iu) {
      double u = u_[iu];
      double ce = std::sqrt(0.5 * (1.0 + u));
      double se = std::sqrt(0.5 * (1.0 - u));
      for (int i1 = 0; i1 < n1; ++i1) {
        double p1 = 2.0 * M_PI * i1 / n1;
        for (int i2 = 0; i2 < n2; ++i2) {
          double p2 = 2.0 * M_PI * i2 / n2;
          int i = (iu * n1 + i1) * n2 + i2;
          Eigen::Vector4d eeta(-se * std::cos(p1), -se * std::sin(p1),
                               ce * std::cos(p2), ce * std::sin(p2));
          Eigen::Vector4d e1(-std::sin(p1), std::cos(p1), 0.0, 0.0);
          Eigen::Vector4d e2(0.0, 0.0, -std::sin(p2), std::cos(p2));
          g.col(i) = deta[i] * eeta + (d1[i] / ce) * e1 + (d2[i] / se) * e2;
        }
      }
    }
    return g;
  }

  int m_, order_;
  int nu_ = 0, nphi_ = 0;
  Eigen::MatrixXd nodes_;
  Eigen::VectorXd weights_;
  Eigen::VectorXd u_, wu_;
  Eigen::MatrixXd Du_, Dphi_;
};

/// Pairwise reduction; fixed association tree for run-to-run determinism.
inline double pairwise_sum(const Eigen::VectorXd& v) {
  const int n = static_cast<int>(v.size());
  if (n == 0) return 0.0;
  std::vector<double> buf(v.data(), v.data() + n);
  int len = n;
  while (len > 1) {
    int half = len / 2;
    for (int i = 0; i < half; ++i) buf[i] = buf[2 * i] + buf[2 * i + 1];
    if (len % 2 == 1) {
      buf[half] = buf[len - 1];
      len = half + 1;
    } else {
      len = half;
    }
  }
  return buf[0];
}

}  // namespace steklov

#endif

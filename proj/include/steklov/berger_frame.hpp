#ifndef STEKLOV_BERGER_FRAME_HPP
#define STEKLOV_BERGER_FRAME_HPP

#include <Eigen/Dense>

#include <array>
#include <stdexcept>

#include "steklov/model_space.hpp"

namespace steklov {

namespace detail {

using Quat = std::array<double, 4>;

inline Quat qmul(const Quat& a, const Quat& b) {
  return {a[0] * b[0] - a[1] * b[1] - a[2] * b[2] - a[3] * b[3],
          a[0] * b[1] + a[1] * b[0] + a[2] * b[3] - a[3] * b[2],
          a[0] * b[2] - a[1] * b[3] + a[2] * b[0] + a[3] * b[1],
          a[0] * b[3] + a[1] * b[2] - a[2] * b[1] + a[3] * b[0]};
}

inline Quat qconj(const Quat& a) { return {a[0], -a[1], -a[2], -a[3]}; }

using Oct = std::array<double, 8>;

// Cayley-Dickson doubling: (a,b)(c,d) = (ac - conj(d) b, d a + b conj(c)).
inline Oct omul(const Oct& x, const Oct& y) {
  Quat a = {x[0], x[1], x[2], x[3]}, b = {x[4], x[5], x[6], x[7]};
  Quat c = {y[0], y[1], y[2], y[3]}, d = {y[4], y[5], y[6], y[7]};
  Quat lo1 = qmul(a, c), lo2 = qmul(qconj(d), b);
  Quat hi1 = qmul(d, a), hi2 = qmul(b, qconj(c));
  return {lo1[0] - lo2[0], lo1[1] - lo2[1], lo1[2] - lo2[2], lo1[3] - lo2[3],
          hi1[0] + hi2[0], hi1[1] + hi2[1], hi1[2] + hi2[2], hi1[3] + hi2[3]};
}

}  // namespace detail

/// The d-1 orthogonal complex structures J_k of a ROSS, acting on the
/// tangent space at the pole (left multiplication by the imaginary units of
/// K in the standard basis of K^n, resp. O^2).
class BergerFrame {
 public:
  explicit BergerFrame(const ModelSpace& space) : d_(space.d), m_(space.m) {}

  int count() const { return d_ - 1; }

  /// J_k w for k in 1..d-1.
  Eigen::VectorXd apply(int k, const Eigen::VectorXd& w) const {
    if (k < 1 || k > d_ - 1) throw std::invalid_argument("BergerFrame: bad index");
    if (w.size() != m_) throw std::invalid_argument("BergerFrame: bad dimension");
    Eigen::VectorXd out(m_);
    if (d_ == 2) {
      for (int i = 0; i < m_; i += 2) {
        out[i] = -w[i + 1];
        out[i + 1] = w[i];
      }
    } else if (d_ == 4) {
      detail::Quat u = {0, 0, 0, 0};
      u[k] = 1.0;
      for (int i = 0; i < m_; i += 4) {
        detail::Quat q = {w[i], w[i + 1], w[i + 2], w[i + 3]};
        detail::Quat p = detail::qmul(u, q);
        for (int j = 0; j < 4; ++j) out[i + j] = p[j];
      }
    } else if (d_ == 8) {
      detail::Oct u = {0, 0, 0, 0, 0, 0, 0, 0};
      u[k] = 1.0;
      for (int i = 0; i < m_; i += 8) {
        detail::Oct q;
        for (int j = 0; j < 8; ++j) q[j] = w[i + j];
        detail::Oct p = detail::omul(u, q);
        for (int j = 0; j < 8; ++j) out[i + j] = p[j];
      }
    } else {
      throw std::invalid_argument("BergerFrame: space has no complex structures");
    }
    return out;
  }

 private:
  int d_;
  int m_;
};

}  // namespace steklov

#endif

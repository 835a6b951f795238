#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <vector>

namespace supercasimir::numerics {

namespace detail {

inline bool opposite_signs(double x, double y) { return (x > 0 && y < 0) || (x < 0 && y > 0); }

}  // namespace detail

/// Shape-preserving piecewise cubic Hermite interpolant (Fritsch-Butland
/// slopes with Brodlie weights). Monotone data give a monotone interpolant and
/// local extrema of the data are not overshot.
class MonotoneCubic {
 public:
  MonotoneCubic() = default;

  MonotoneCubic(std::vector<double> x, std::vector<double> y) : x_(std::move(x)), y_(std::move(y)) {
    if (x_.size() != y_.size() || x_.size() < 2) {
      throw std::invalid_argument("MonotoneCubic: need at least two matching nodes");
    }
    for (std::size_t i = 1; i < x_.size(); ++i) {
      if (!(x_[i] > x_[i - 1])) throw std::invalid_argument("MonotoneCubic: nodes not increasing");
    }
    compute_slopes();
  }

  double operator()(double t) const {
    const std::size_t n = x_.size();
    std::size_t k;
    if (t <= x_.front()) {
      k = 0;
    } else if (t >= x_.back()) {
      k = n - 2;
    } else {
      k = static_cast<std::size_t>(std::upper_bound(x_.begin(), x_.end(), t) - x_.begin()) - 1;
    }
    const double h = x_[k + 1] - x_[k];
    const double s = (t - x_[k]) / h;
    const double s2 = s * s;
    const double s3 = s2 * s;
    const double h00 = 2 * s3 - 3 * s2 + 1;
    const double h10 = s3 - 2 * s2 + s;
    const double h01 = -2 * s3 + 3 * s2;
    const double h11 = s3 - s2;
    return h00 * y_[k] + h10 * h * d_[k] + h01 * y_[k + 1] + h11 * h * d_[k + 1];
  }

  std::span<const double> nodes() const { return x_; }
  std::span<const double> values() const { return y_; }
  bool empty() const { return x_.empty(); }

 private:
  void compute_slopes() {
    const std::size_t n = x_.size();
    std::vector<double> h(n - 1);
    std::vector<double> delta(n - 1);
    for (std::size_t i = 0; i + 1 < n; ++i) {
      h[i] = x_[i + 1] - x_[i];
      delta[i] = (y_[i + 1] - y_[i]) / h[i];
    }
    d_.assign(n, 0.0);
    if (n == 2) {
      d_[0] = d_[1] = delta[0];
      return;
    }
    for (std::size_t k = 1; k + 1 < n; ++k) {
      if (delta[k - 1] * delta[k] <= 0.0) continue;
      const double w1 = 2 * h[k] + h[k - 1];
      const double w2 = h[k] + 2 * h[k - 1];
      d_[k] = (w1 + w2) / (w1 / delta[k - 1] + w2 / delta[k]);
    }
    d_[0] = edge_slope(h[0], h[1], delta[0], delta[1]);
    d_[n - 1] = edge_slope(h[n - 2], h[n - 3], delta[n - 2], delta[n - 3]);
  }

  static double edge_slope(double h0, double h1, double m0, double m1) {
    double d = ((2 * h0 + h1) * m0 - h0 * m1) / (h0 + h1);
    if (detail::opposite_signs(d, m0) || m0 == 0.0) {
      d = 0.0;
    } else if (detail::opposite_signs(m0, m1) && std::abs(d) > 3 * std::abs(m0)) {
      d = 3 * m0;
    }
    return d;
  }

  std::vector<double> x_;
  std::vector<double> y_;
  std::vector<double> d_;
};

}  // namespace supercasimir::numerics

#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace wcle {

// Fritsch–Carlson monotone cubic Hermite interpolant. Given monotone data it
// produces a monotone C^1 curve, which keeps interpolated CDFs invertible and
// weight tables free of spurious wiggles.
class MonotoneCubic {
 public:
  MonotoneCubic() = default;

  MonotoneCubic(std::vector<double> xs, std::vector<double> ys)
      : xs_(std::move(xs)), ys_(std::move(ys)) {
    const std::size_t n = xs_.size();
    if (n < 2 || ys_.size() != n) throw std::invalid_argument("MonotoneCubic: need >= 2 points");
    for (std::size_t i = 1; i < n; ++i) {
      if (!(xs_[i] > xs_[i - 1])) throw std::invalid_argument("MonotoneCubic: xs not increasing");
    }
    std::vector<double> d(n - 1);
    for (std::size_t i = 0; i + 1 < n; ++i) d[i] = (ys_[i + 1] - ys_[i]) / (xs_[i + 1] - xs_[i]);
    ms_.resize(n);
    ms_[0] = d[0];
    ms_[n - 1] = d[n - 2];
    for (std::size_t i = 1; i + 1 < n; ++i) {
      ms_[i] = (d[i - 1] * d[i] <= 0.0) ? 0.0 : 0.5 * (d[i - 1] + d[i]);
    }
    for (std::size_t i = 0; i + 1 < n; ++i) {
      if (d[i] == 0.0) {
        ms_[i] = ms_[i + 1] = 0.0;
        continue;
      }
      const double a = ms_[i] / d[i];
      const double b = ms_[i + 1] / d[i];
      const double s = a * a + b * b;
      if (s > 9.0) {
        const double t = 3.0 / std::sqrt(s);
        ms_[i] = t * a * d[i];
        ms_[i + 1] = t * b * d[i];
      }
    }
  }

  double x_min() const { return xs_.front(); }
  double x_max() const { return xs_.back(); }

  // Hermite evaluation; x is clamped to the table range.
  double operator()(double x) const {
    if (x <= xs_.front()) return ys_.front();
    if (x >= xs_.back()) return ys_.back();
    const std::size_t i = segment(x);
    const double h = xs_[i + 1] - xs_[i];
    const double t = (x - xs_[i]) / h;
    const double t2 = t * t, t3 = t2 * t;
    const double h00 = 2 * t3 - 3 * t2 + 1;
    const double h10 = t3 - 2 * t2 + t;
    const double h01 = -2 * t3 + 3 * t2;
    const double h11 = t3 - t2;
    return h00 * ys_[i] + h10 * h * ms_[i] + h01 * ys_[i + 1] + h11 * h * ms_[i + 1];
  }

  // Inverse lookup for strictly monotone tables (bisection on the evaluator).
  double inverse(double y) const {
    const bool incr = ys_.back() > ys_.front();
    double lo = xs_.front(), hi = xs_.back();
    const double ylo = incr ? ys_.front() : ys_.back();
    const double yhi = incr ? ys_.back() : ys_.front();
    if (y <= ylo) return incr ? lo : hi;
    if (y >= yhi) return incr ? hi : lo;
    for (int it = 0; it < 200 && hi - lo > 1e-14 * (1.0 + std::abs(lo)); ++it) {
      const double mid = 0.5 * (lo + hi);
      const double v = (*this)(mid);
      if ((v < y) == incr) lo = mid; else hi = mid;
    }
    return 0.5 * (lo + hi);
  }

 private:
  std::size_t segment(double x) const {
    auto it = std::upper_bound(xs_.begin(), xs_.end(), x);
    std::size_t i = static_cast<std::size_t>(it - xs_.begin());
    if (i == 0) return 0;
    if (i >= xs_.size()) return xs_.size() - 2;
    return i - 1;
  }

  std::vector<double> xs_, ys_, ms_;
};

// Pool-adjacent-violators: least-squares projection onto non-decreasing
// sequences. Used to clean Monte-Carlo noise off tables that must be monotone.
inline std::vector<double> isotonic_non_decreasing(std::vector<double> y) {
  const std::size_t n = y.size();
  std::vector<double> level(n), weight(n);
  std::vector<std::size_t> count(n);
  std::size_t m = 0;
  for (std::size_t i = 0; i < n; ++i) {
    level[m] = y[i];
    weight[m] = 1.0;
    count[m] = 1;
    ++m;
    while (m > 1 && level[m - 2] > level[m - 1]) {
      const double w = weight[m - 2] + weight[m - 1];
      level[m - 2] = (weight[m - 2] * level[m - 2] + weight[m - 1] * level[m - 1]) / w;
      weight[m - 2] = w;
      count[m - 2] += count[m - 1];
      --m;
    }
  }
  std::vector<double> out;
  out.reserve(n);
  for (std::size_t b = 0; b < m; ++b) out.insert(out.end(), count[b], level[b]);
  return out;
}

inline std::vector<double> isotonic_non_increasing(std::vector<double> y) {
  for (auto& v : y) v = -v;
  auto out = isotonic_non_decreasing(std::move(y));
  for (auto& v : out) v = -v;
  return out;
}

// Log-spaced grid over [lo, hi], endpoints included.
inline std::vector<double> log_grid(double lo, double hi, std::size_t n) {
  if (!(lo > 0.0 && hi > lo && n >= 2)) throw std::invalid_argument("log_grid: bad range");
  std::vector<double> g(n);
  const double a = std::log(lo), b = std::log(hi);
  for (std::size_t i = 0; i < n; ++i) {
    g[i] = std::exp(a + (b - a) * static_cast<double>(i) / static_cast<double>(n - 1));
  }
  g.front() = lo;
  g.back() = hi;
  return g;
}

}  // namespace wcle

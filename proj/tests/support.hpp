#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "tvlp/grid.hpp"

namespace tvlp_test {

// Small generator wrapper for property tests.
class Gen {
 public:
  explicit Gen(std::uint64_t seed) : rng_(seed) {}

  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }
  int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }
  bool coin() { return integer(0, 1) == 1; }

  std::vector<double> vec(std::size_t n, double lo, double hi) {
    std::vector<double> v(n);
    for (double& x : v) x = uniform(lo, hi);
    return v;
  }

  tvlp::Image2D image(std::size_t rows, std::size_t cols, double lo = -1.0, double hi = 1.0, double spacing = 1.0) {
    return tvlp::Image2D(rows, cols, vec(rows * cols, lo, hi), spacing);
  }

  tvlp::VectorField2D field(std::size_t rows, std::size_t cols, double lo = -1.0, double hi = 1.0,
                            double spacing = 1.0) {
    tvlp::Image2D a = image(rows, cols, lo, hi, spacing);
    tvlp::Image2D b = cols == 1 ? tvlp::Image2D(rows, cols, spacing) : image(rows, cols, lo, hi, spacing);
    return {std::move(a), std::move(b)};
  }

  // Piecewise constant 1D signal with a few random jumps plus optional noise.
  std::vector<double> piecewise(std::size_t n, int pieces, double amplitude, double noise) {
    std::vector<double> v(n);
    double level = uniform(-amplitude, amplitude);
    std::size_t next = 0;
    for (std::size_t i = 0; i < n; ++i) {
      if (i == next) {
        level = uniform(-amplitude, amplitude);
        next = i + std::max<std::size_t>(1, n / static_cast<std::size_t>(pieces) + integer(-1, 1));
      }
      v[i] = level + uniform(-noise, noise);
    }
    return v;
  }

 private:
  std::mt19937_64 rng_;
};

inline double max_abs_diff(const tvlp::Image2D& a, const tvlp::Image2D& b) {
  double m = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) m = std::max(m, std::abs(a[k] - b[k]));
  return m;
}

inline double max_abs(const tvlp::Image2D& a) {
  double m = 0.0;
  for (double v : a.values()) m = std::max(m, std::abs(v));
  return m;
}

inline double l2(const tvlp::Image2D& a) {
  double s = 0.0;
  for (double v : a.values()) s += v * v;
  return std::sqrt(s);
}

inline double range_of(const tvlp::Image2D& a) {
  const auto [lo, hi] = std::minmax_element(a.values().begin(), a.values().end());
  return *hi - *lo;
}

}  // namespace tvlp_test

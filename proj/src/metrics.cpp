#include "tvlp/metrics.hpp"

#include <array>
#include <cmath>
#include <limits>

#include "tvlp/error.hpp"

namespace tvlp {

namespace {

constexpr int kWindow = 11;
constexpr double kSigma = 1.5;

std::array<double, kWindow> gaussian_taps() {
  std::array<double, kWindow> taps{};
  double sum = 0.0;
  for (int i = 0; i < kWindow; ++i) {
    const double x = i - kWindow / 2;
    taps[i] = std::exp(-x * x / (2.0 * kSigma * kSigma));
    sum += taps[i];
  }
  for (double& v : taps) v /= sum;
  return taps;
}

// Separable "valid" Gaussian filter: output is (rows - 10) x (cols - 10).
std::vector<double> filter_valid(const std::vector<double>& x, std::size_t rows, std::size_t cols,
                                 const std::array<double, kWindow>& taps) {
  const std::size_t out_cols = cols - kWindow + 1;
  const std::size_t out_rows = rows - kWindow + 1;
  std::vector<double> horizontal(rows * out_cols);
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < out_cols; ++j) {
      double s = 0.0;
      for (int k = 0; k < kWindow; ++k) s += taps[k] * x[i * cols + j + k];
      horizontal[i * out_cols + j] = s;
    }
  }
  std::vector<double> out(out_rows * out_cols);
  for (std::size_t i = 0; i < out_rows; ++i) {
    for (std::size_t j = 0; j < out_cols; ++j) {
      double s = 0.0;
      for (int k = 0; k < kWindow; ++k) s += taps[k] * horizontal[(i + k) * out_cols + j];
      out[i * out_cols + j] = s;
    }
  }
  return out;
}

}  // namespace

double psnr(const Image2D& u, const Image2D& reference, double peak) {
  if (!u.same_shape(reference)) throw InvalidArgument("psnr: shapes differ");
  if (!(peak > 0.0)) throw InvalidArgument("psnr: peak must be positive");
  double sum = 0.0;
  for (std::size_t k = 0; k < u.size(); ++k) {
    const double d = u[k] - reference[k];
    sum += d * d;
  }
  const double mse = sum / static_cast<double>(u.size());
  if (mse == 0.0) return std::numeric_limits<double>::infinity();
  return 10.0 * std::log10(peak * peak / mse);
}

double ssim(const Image2D& u, const Image2D& reference, double dynamic_range) {
  if (!u.same_shape(reference)) throw InvalidArgument("ssim: shapes differ");
  if (!(dynamic_range > 0.0)) throw InvalidArgument("ssim: dynamic range must be positive");
  const std::size_t rows = u.rows();
  const std::size_t cols = u.cols();
  if (rows < kWindow || cols < kWindow) throw InvalidArgument("ssim: image smaller than the 11x11 window");

  const auto taps = gaussian_taps();
  const std::vector<double>& a = u.vector();
  const std::vector<double>& b = reference.vector();
  std::vector<double> aa(a.size()), bb(a.size()), ab(a.size());
  for (std::size_t k = 0; k < a.size(); ++k) {
    aa[k] = a[k] * a[k];
    bb[k] = b[k] * b[k];
    ab[k] = a[k] * b[k];
  }
  const auto mu_a = filter_valid(a, rows, cols, taps);
  const auto mu_b = filter_valid(b, rows, cols, taps);
  const auto e_aa = filter_valid(aa, rows, cols, taps);
  const auto e_bb = filter_valid(bb, rows, cols, taps);
  const auto e_ab = filter_valid(ab, rows, cols, taps);

  const double c1 = std::pow(0.01 * dynamic_range, 2);
  const double c2 = std::pow(0.03 * dynamic_range, 2);
  double total = 0.0;
  for (std::size_t k = 0; k < mu_a.size(); ++k) {
    const double ma = mu_a[k];
    const double mb = mu_b[k];
    const double va = e_aa[k] - ma * ma;
    const double vb = e_bb[k] - mb * mb;
    const double cov = e_ab[k] - ma * mb;
    total += (2.0 * ma * mb + c1) * (2.0 * cov + c2) / ((ma * ma + mb * mb + c1) * (va + vb + c2));
  }
  return total / static_cast<double>(mu_a.size());
}

}  // namespace tvlp

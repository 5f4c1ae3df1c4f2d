#include "tvlp/dct.hpp"

#include <fftw3.h>

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <utility>
#include <vector>

#include "tvlp/error.hpp"
#include "tvlp/operators.hpp"

namespace tvlp {

namespace {

// FFTW planning is not thread-safe; execution of an existing plan on fresh
// arrays is.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

class FftwPlanPair {
 public:
  FftwPlanPair(std::size_t n, std::size_t m) : n_(n), m_(m) {
    std::vector<double> in(n * m), out(n * m);
    const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
    std::lock_guard lock(planner_mutex());
    if (m == 1) {
      forward_ = fftw_plan_r2r_1d(static_cast<int>(n), in.data(), out.data(), FFTW_REDFT10, flags);
      inverse_ = fftw_plan_r2r_1d(static_cast<int>(n), in.data(), out.data(), FFTW_REDFT01, flags);
    } else {
      forward_ = fftw_plan_r2r_2d(static_cast<int>(n), static_cast<int>(m), in.data(), out.data(), FFTW_REDFT10,
                                  FFTW_REDFT10, flags);
      inverse_ = fftw_plan_r2r_2d(static_cast<int>(n), static_cast<int>(m), in.data(), out.data(), FFTW_REDFT01,
                                  FFTW_REDFT01, flags);
    }
    if (forward_ == nullptr || inverse_ == nullptr) throw Error("FFTW failed to create a DCT plan");
  }

  ~FftwPlanPair() {
    std::lock_guard lock(planner_mutex());
    fftw_destroy_plan(forward_);
    fftw_destroy_plan(inverse_);
  }

  FftwPlanPair(const FftwPlanPair&) = delete;
  FftwPlanPair& operator=(const FftwPlanPair&) = delete;

  // Orthonormal DCT-II.
  void forward(const std::vector<double>& in, std::vector<double>& out) const {
    std::vector<double> scratch(in);
    out.resize(in.size());
    fftw_execute_r2r(forward_, scratch.data(), out.data());
    for (std::size_t i = 0; i < n_; ++i) {
      const double si = scale(i, n_);
      for (std::size_t j = 0; j < m_; ++j) out[i * m_ + j] *= si * (m_ == 1 ? 1.0 : scale(j, m_));
    }
  }

  // Orthonormal DCT-III, the inverse of forward().
  void inverse(const std::vector<double>& in, std::vector<double>& out) const {
    std::vector<double> scratch(in.size());
    for (std::size_t i = 0; i < n_; ++i) {
      const double si = inverse_scale(i, n_);
      for (std::size_t j = 0; j < m_; ++j) {
        scratch[i * m_ + j] = in[i * m_ + j] * si * (m_ == 1 ? 1.0 : inverse_scale(j, m_));
      }
    }
    out.resize(in.size());
    fftw_execute_r2r(inverse_, scratch.data(), out.data());
  }

 private:
  // FFTW's REDFT10 is 2 * sum x_j cos(pi (j + 1/2) k / n).
  static double scale(std::size_t k, std::size_t n) {
    const double nn = static_cast<double>(n);
    return k == 0 ? 1.0 / (2.0 * std::sqrt(nn)) : 1.0 / std::sqrt(2.0 * nn);
  }
  // REDFT01 is X_0 + 2 * sum_{k>=1} X_k cos(pi k (j + 1/2) / n).
  static double inverse_scale(std::size_t k, std::size_t n) {
    const double nn = static_cast<double>(n);
    return k == 0 ? 1.0 / std::sqrt(nn) : 1.0 / std::sqrt(2.0 * nn);
  }

  std::size_t n_;
  std::size_t m_;
  fftw_plan forward_ = nullptr;
  fftw_plan inverse_ = nullptr;
};

std::shared_ptr<const FftwPlanPair> plan_for(std::size_t n, std::size_t m) {
  static std::mutex cache_mutex;
  static std::map<std::pair<std::size_t, std::size_t>, std::shared_ptr<const FftwPlanPair>> cache;
  std::lock_guard lock(cache_mutex);
  auto& slot = cache[{n, m}];
  if (!slot) slot = std::make_shared<const FftwPlanPair>(n, m);
  return slot;
}

// Orthonormal DCT-II matrix, row k = frequency.
std::vector<double> cosine_matrix(std::size_t n) {
  std::vector<double> c(n * n);
  const double nn = static_cast<double>(n);
  for (std::size_t k = 0; k < n; ++k) {
    const double eps = k == 0 ? std::sqrt(1.0 / nn) : std::sqrt(2.0 / nn);
    for (std::size_t j = 0; j < n; ++j) {
      c[k * n + j] = eps * std::cos(std::numbers::pi * (static_cast<double>(j) + 0.5) * static_cast<double>(k) / nn);
    }
  }
  return c;
}

// out = Cn * in * Cm^T when transpose == false, Cn^T * in * Cm otherwise.
std::vector<double> direct_transform(const std::vector<double>& in, std::size_t n, std::size_t m, bool transpose) {
  const auto cn = cosine_matrix(n);
  const auto cm = cosine_matrix(m);
  auto at = [transpose](const std::vector<double>& c, std::size_t dim, std::size_t a, std::size_t b) {
    return transpose ? c[b * dim + a] : c[a * dim + b];
  };
  std::vector<double> tmp(n * m, 0.0);
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t i = 0; i < n; ++i) {
      const double c = at(cn, n, k, i);
      for (std::size_t j = 0; j < m; ++j) tmp[k * m + j] += c * in[i * m + j];
    }
  }
  std::vector<double> out(n * m, 0.0);
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t l = 0; l < m; ++l) {
      double s = 0.0;
      for (std::size_t j = 0; j < m; ++j) s += at(cm, m, l, j) * tmp[k * m + j];
      out[k * m + l] = s;
    }
  }
  return out;
}

Image2D transform(const Image2D& u, DctBackend backend, bool inverse) {
  std::vector<double> out;
  if (backend == DctBackend::Direct) {
    out = direct_transform(u.vector(), u.rows(), u.cols(), inverse);
  } else {
    const auto plan = plan_for(u.rows(), u.cols());
    if (inverse) {
      plan->inverse(u.vector(), out);
    } else {
      plan->forward(u.vector(), out);
    }
  }
  return Image2D(u.rows(), u.cols(), std::move(out), u.spacing());
}

Image2D analytic_spectrum(std::size_t n, std::size_t m, double lambda, double spacing) {
  Image2D mu(n, m, spacing);
  const double c = lambda / (spacing * spacing);
  for (std::size_t i = 0; i < n; ++i) {
    const double ai = 2.0 - 2.0 * std::cos(std::numbers::pi * static_cast<double>(i) / static_cast<double>(n));
    for (std::size_t j = 0; j < m; ++j) {
      const double aj = 2.0 - 2.0 * std::cos(std::numbers::pi * static_cast<double>(j) / static_cast<double>(m));
      mu(i, j) = 1.0 + c * (ai + aj);
    }
  }
  return mu;
}

Image2D probe_spectrum(std::size_t n, std::size_t m, double lambda, double spacing) {
  Image2D e1(n, m, spacing);
  e1[0] = 1.0;
  const Image2D num = dct2(apply_screened_operator(e1, lambda));
  const Image2D den = dct2(e1);
  Image2D mu(n, m, spacing);
  for (std::size_t k = 0; k < mu.size(); ++k) mu[k] = num[k] / den[k];
  return mu;
}

}  // namespace

Image2D dct2(const Image2D& u, DctBackend backend) { return transform(u, backend, false); }

Image2D idct2(const Image2D& coeffs, DctBackend backend) { return transform(coeffs, backend, true); }

NeumannSpectrum neumann_eigenvalues(std::size_t n, std::size_t m, double lambda, double spacing,
                                    SpectrumMethod method) {
  if (!(spacing > 0.0)) throw InvalidArgument("spacing must be positive");
  if (!(lambda >= 0.0) || !std::isfinite(lambda)) throw InvalidArgument("lambda must be nonnegative");
  if (n < 2 || m < 1) throw InvalidArgument("spectrum needs n >= 2 and m >= 1");
  Image2D mu = method == SpectrumMethod::Analytic ? analytic_spectrum(n, m, lambda, spacing)
                                                  : probe_spectrum(n, m, lambda, spacing);
  return {std::move(mu), lambda, spacing};
}

Image2D apply_screened_operator(const Image2D& u, double lambda) { return u - lambda * laplacian(u); }

struct ScreenedPoissonSolver::Impl {
  NeumannSpectrum spectrum;
  std::shared_ptr<const FftwPlanPair> plan;
};

ScreenedPoissonSolver::ScreenedPoissonSolver(std::size_t n, std::size_t m, double lambda, double spacing)
    : impl_(std::make_unique<Impl>(Impl{neumann_eigenvalues(n, m, lambda, spacing), plan_for(n, m)})) {}

ScreenedPoissonSolver::~ScreenedPoissonSolver() = default;
ScreenedPoissonSolver::ScreenedPoissonSolver(ScreenedPoissonSolver&&) noexcept = default;
ScreenedPoissonSolver& ScreenedPoissonSolver::operator=(ScreenedPoissonSolver&&) noexcept = default;

const NeumannSpectrum& ScreenedPoissonSolver::spectrum() const noexcept { return impl_->spectrum; }

Image2D ScreenedPoissonSolver::solve(const Image2D& rhs) const {
  const Image2D& mu = impl_->spectrum.eigenvalues;
  if (!rhs.same_shape(mu)) throw InvalidArgument("right-hand side shape does not match solver");
  std::vector<double> coeffs;
  impl_->plan->forward(rhs.vector(), coeffs);
  for (std::size_t k = 0; k < coeffs.size(); ++k) coeffs[k] /= mu[k];
  std::vector<double> out;
  impl_->plan->inverse(coeffs, out);
  return Image2D(rhs.rows(), rhs.cols(), std::move(out), rhs.spacing());
}

Image2D solve_screened_poisson(const Image2D& rhs, double lambda) {
  return ScreenedPoissonSolver(rhs.rows(), rhs.cols(), lambda, rhs.spacing()).solve(rhs);
}

}  // namespace tvlp

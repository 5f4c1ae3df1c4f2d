#pragma once

#include <cstddef>
#include <memory>

#include "tvlp/grid.hpp"

namespace tvlp {

/// Orthonormal 2D DCT-II backends. Fftw is the fast path; Direct applies the
/// separable cosine matrices explicitly in O(nm(n+m)) and serves as a
/// reference implementation.
enum class DctBackend { Fftw, Direct };

Image2D dct2(const Image2D& u, DctBackend backend = DctBackend::Fftw);
Image2D idct2(const Image2D& coeffs, DctBackend backend = DctBackend::Fftw);

enum class SpectrumMethod {
  Analytic,      // closed-form cosine eigenvalues
  ImpulseProbe,  // transform of the first column of the operator
};

/// Eigenvalues of I - lambda * laplacian in the DCT basis.
struct NeumannSpectrum {
  Image2D eigenvalues;
  double lambda = 0.0;
  double spacing = 1.0;
};

NeumannSpectrum neumann_eigenvalues(std::size_t n, std::size_t m, double lambda, double spacing,
                                    SpectrumMethod method = SpectrumMethod::Analytic);

/// Applies u - lambda * div(grad u) with the operators of operators.hpp.
Image2D apply_screened_operator(const Image2D& u, double lambda);

/// Solves (I - lambda * laplacian) u = rhs with Neumann boundary conditions.
Image2D solve_screened_poisson(const Image2D& rhs, double lambda);

/// Reusable solver for a fixed shape and lambda. Immutable after
/// construction; solve() may be called concurrently.
class ScreenedPoissonSolver {
 public:
  ScreenedPoissonSolver(std::size_t n, std::size_t m, double lambda, double spacing);
  ~ScreenedPoissonSolver();
  ScreenedPoissonSolver(ScreenedPoissonSolver&&) noexcept;
  ScreenedPoissonSolver& operator=(ScreenedPoissonSolver&&) noexcept;

  Image2D solve(const Image2D& rhs) const;
  const NeumannSpectrum& spectrum() const noexcept;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace tvlp

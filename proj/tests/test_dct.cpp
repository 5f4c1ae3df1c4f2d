#include <doctest.h>

#include <cmath>
#include <numbers>

#include "oracles.hpp"
#include "support.hpp"
#include "tvlp/dct.hpp"
#include "tvlp/error.hpp"
#include "tvlp/operators.hpp"

using namespace tvlp;
using tvlp_test::Gen;

TEST_CASE("dct agrees with the defining sum") {
  Gen gen(31);
  for (DctBackend backend : {DctBackend::Fftw, DctBackend::Direct}) {
    for (int trial = 0; trial < 10; ++trial) {
      const std::size_t n = gen.integer(2, 9);
      const std::size_t m = gen.integer(1, 9);
      const Image2D u = gen.image(n, m);
      CHECK(tvlp_test::max_abs_diff(dct2(u, backend), tvlp_test::brute_dct2(u)) <= 1e-12);
    }
  }
}

TEST_CASE("dct round trip and Parseval") {
  Gen gen(32);
  const Image2D u = gen.image(16, 16);
  for (DctBackend backend : {DctBackend::Fftw, DctBackend::Direct}) {
    const Image2D c = dct2(u, backend);
    CHECK(tvlp_test::max_abs_diff(idct2(c, backend), u) <= 1e-11);
    CHECK(std::abs(tvlp_test::l2(c) - tvlp_test::l2(u)) <= 1e-11 * tvlp_test::l2(u));
  }
  const Image2D c = dct2(Image2D::constant(8, 6, 2.0));
  CHECK(c(0, 0) == doctest::Approx(2.0 * std::sqrt(48.0)));
  double rest = 0.0;
  for (std::size_t k = 1; k < c.size(); ++k) rest = std::max(rest, std::abs(c[k]));
  CHECK(rest <= 1e-12);
}

TEST_CASE("neumann eigenvalue examples") {
  const NeumannSpectrum zero = neumann_eigenvalues(5, 4, 0.0, 1.0);
  for (double mu : zero.eigenvalues.values()) CHECK(mu == 1.0);

  const NeumannSpectrum s = neumann_eigenvalues(6, 7, 3.5, 0.2);
  CHECK(s.eigenvalues(0, 0) == doctest::Approx(1.0));
  for (double mu : s.eigenvalues.values()) CHECK(mu >= 1.0);

  for (SpectrumMethod method : {SpectrumMethod::Analytic, SpectrumMethod::ImpulseProbe}) {
    const NeumannSpectrum one = neumann_eigenvalues(4, 1, 1.0, 1.0, method);
    CHECK(one.eigenvalues(2, 0) == doctest::Approx(3.0).epsilon(1e-12));
  }
  CHECK_THROWS_AS(neumann_eigenvalues(4, 4, 1.0, 0.0), InvalidArgument);
  CHECK_THROWS_AS(neumann_eigenvalues(4, 4, -1.0, 1.0), InvalidArgument);
}

TEST_CASE("analytic and probed spectra agree") {
  for (double lambda : {0.1, 1.0, 1000.0}) {
    for (auto [n, m] : {std::pair<std::size_t, std::size_t>{64, 64}, {17, 5}, {2000, 1}, {3, 64}}) {
      const NeumannSpectrum a = neumann_eigenvalues(n, m, lambda, 1.0, SpectrumMethod::Analytic);
      const NeumannSpectrum b = neumann_eigenvalues(n, m, lambda, 1.0, SpectrumMethod::ImpulseProbe);
      double worst = 0.0;
      for (std::size_t k = 0; k < a.eigenvalues.size(); ++k)
        worst = std::max(worst, std::abs(a.eigenvalues[k] - b.eigenvalues[k]) / a.eigenvalues[k]);
      CHECK(worst <= 1e-8);
    }
  }
}

TEST_CASE("screened operator matches the five-point stencil") {
  Gen gen(33);
  for (int trial = 0; trial < 20; ++trial) {
    const double t = gen.uniform(0.1, 2.0);
    const std::size_t n = gen.integer(2, 12);
    const std::size_t m = gen.integer(1, 12);
    const Image2D u = gen.image(n, m, -1.0, 1.0, t);
    const double lambda = gen.uniform(0.0, 5.0);
    const Image2D expected = u - lambda * tvlp_test::stencil_laplacian(u);
    CHECK(tvlp_test::max_abs_diff(apply_screened_operator(u, lambda), expected) <= 1e-10 * (1.0 + lambda / (t * t)));
  }
}

TEST_CASE("screened Poisson examples") {
  Gen gen(34);
  const Image2D rhs = gen.image(32, 32);
  CHECK(tvlp_test::max_abs_diff(solve_screened_poisson(rhs, 0.0), rhs) <= 1e-12);
  const Image2D c = Image2D::constant(9, 7, 4.0);
  CHECK(tvlp_test::max_abs_diff(solve_screened_poisson(c, 10.0), c) <= 1e-12);

  const Image2D u = solve_screened_poisson(rhs, 10.0);
  const Image2D residual = apply_screened_operator(u, 10.0) - rhs;
  CHECK(tvlp_test::l2(residual) <= 1e-9 * tvlp_test::l2(rhs));
}

TEST_CASE("screened solve inverts the operator and keeps the mean") {
  Gen gen(35);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t n = gen.integer(2, 64);
    const std::size_t m = gen.integer(1, 64);
    const double t = gen.uniform(0.2, 2.0);
    const double lambda = std::exp(gen.uniform(-3.0, 5.0));
    const Image2D u = gen.image(n, m, -1.0, 1.0, t);
    const ScreenedPoissonSolver solver(n, m, lambda, t);
    const Image2D rhs = apply_screened_operator(u, lambda);
    CHECK(tvlp_test::l2(solver.solve(rhs) - u) <= 1e-9 * tvlp_test::l2(u));
    const Image2D back = solver.solve(u);
    CHECK(std::abs(mean_value(back) - mean_value(u)) <= 1e-12);
  }
}

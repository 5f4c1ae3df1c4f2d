#pragma once

#include <vector>

#include "tvlp/grid.hpp"

namespace tvlp {

enum class Termination { Tolerance, MaxIter };

struct SolveReport {
  std::vector<double> objective_trace;
  /// ||u^{k+1} - u^k||_2 / ||u^{k+1}||_2 per outer iteration.
  std::vector<double> relative_residuals;
  Termination terminated_by = Termination::MaxIter;
  double wall_time = 0.0;  // seconds
  double lambda = 0.0;     // penalty actually used

  int iterations() const noexcept { return static_cast<int>(relative_residuals.size()); }
};

/// Iterates of the split Bregman method.
struct SolveState {
  Image2D u;
  VectorField2D z;
  VectorField2D w;
  VectorField2D b;
  int outer_iter = 0;
};

struct DenoiseResult {
  Image2D u;
  VectorField2D w;
  SolveReport report;
};

/// 1/2 ||f - u||^2 + alpha ||grad u - w||_1 + beta ||w||_p, or
/// (beta / p) ||w||_p^p for the p-homogeneous mode.
double objective(const Image2D& u, const VectorField2D& w, const Image2D& f, const SolveParams& params,
                 bool quadrature);

/// min over w of alpha ||grad u - w||_1 + beta ||w||_p (or the
/// p-homogeneous variant). Solved exactly: the p-homogeneous problem is
/// separable per pixel, and the 1-homogeneous one is reduced to it by a
/// scalar search on the equivalent p-homogeneous weight.
double tvlp_value(const Image2D& u, const SolveParams& params, bool quadrature);

/// The minimising w of tvlp_value.
VectorField2D tvlp_optimal_w(const Image2D& u, const SolveParams& params, bool quadrature);

/// L^2-TVL^p denoising by split Bregman. Throws NonFinite if an iterate
/// blows up; hitting max_outer is reported, not thrown.
DenoiseResult denoise(const Image2D& f, const SolveParams& params);

/// Same loop with w pinned to zero: the ROF model 1/2||f-u||^2 + alpha TV(u).
DenoiseResult denoise_rof(const Image2D& f, double alpha, const SolveParams& controls);

/// Maps parameters stated for quadrature-weighted norms to the equivalent
/// parameters for plain sums on the same grid (same minimiser).
SolveParams to_discrete_params(const SolveParams& quadrature_params, const Image2D& grid);

}  // namespace tvlp

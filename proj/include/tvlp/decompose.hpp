#pragma once

#include <optional>
#include <vector>

#include "tvlp/solver.hpp"

namespace tvlp {

/// f ~ u + v with u penalised by alpha TV and v by beta ||grad v||_p.
struct Decomposition {
  Image2D u_part;
  Image2D v_part;  // mean zero
  SolveReport report;
};

/// 1/2 ||f - u - v||^2 + alpha ||grad u||_1 + beta ||grad v||_p, or
/// (beta / p) ||grad v||_p^p in the p-homogeneous mode.
double decomposition_objective(const Image2D& u, const Image2D& v, const Image2D& f, const SolveParams& params,
                               bool quadrature);

/// Split Bregman with d1 ~ grad u and d2 ~ grad v. The coupled (u, v) step
/// is a 2x2 system per DCT frequency and is solved exactly; the zero
/// frequency goes to u so that mean(v) = 0. v0 sets the starting split
/// (u0 = f - v0, default v0 = 0).
Decomposition decompose(const Image2D& f, const SolveParams& params,
                        const std::optional<Image2D>& v0 = std::nullopt);

struct UniquenessReport {
  std::vector<Decomposition> runs;
  /// max over restarts of max |(u_r + v_r) - (u_0 + v_0)|.
  double max_sum_deviation = 0.0;
  /// Per restart r >= 1: mu minimising ||grad v_r - mu grad v_0|| and the
  /// relative residual of that fit.
  std::vector<double> mu;
  std::vector<double> mu_residual;
};

/// Runs decompose from n_restarts different starting splits
/// v0 = (r / n_restarts) (f - mean f), r = 0..n_restarts-1.
UniquenessReport check_decomposition_uniqueness(const Image2D& f, const SolveParams& params, int n_restarts);

}  // namespace tvlp

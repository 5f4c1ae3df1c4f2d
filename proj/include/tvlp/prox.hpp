#pragma once

#include "tvlp/grid.hpp"

namespace tvlp {

/// Isotropic soft thresholding: each pixel vector is pulled towards zero by
/// `threshold` in Euclidean length and set to zero inside the ball.
VectorField2D shrink(const VectorField2D& g, double threshold);

struct FixedPointOptions {
  int max_sweeps = 5;
  /// Stop early once the relative residual is below this; 0 runs all sweeps.
  double tol = 0.0;
  /// Whether ||w||_p carries the t^d cell weight.
  bool quadrature = false;
};

struct ProxResult {
  VectorField2D w;
  /// Relative residual of the first-order condition
  /// kappa |w|^{p-2} w / ||w||_p^{p-1} + w - eta = 0 (or of the dual-ball
  /// condition ||eta||_q <= kappa when w = 0).
  double residual = 0.0;
  int sweeps = 0;
};

/// Multiplicative fixed-point iteration for the prox of kappa * ||.||_p:
///   w <- eta ||w||^{p-1} / (kappa |w|^{p-2} + ||w||^{p-1}),  0/0 = 0.
/// For p > 2.5 each new radius is the geometric mean r^{1-theta} r_new^theta
/// with theta = 1.5 / (p - 1); the plain map oscillates for large p.
/// w = 0 is absorbing, so start from a nonzero w0 (eta by default); for
/// p < 2 single vanished pixels of w0 also restart from eta. Returns zero
/// without sweeping when ||eta||_q <= kappa.
/// Throws NonFinite if a sweep produces NaN or Inf.
ProxResult lp_prox_fixed_point(const VectorField2D& eta, double kappa, double p, const VectorField2D& w0,
                               const FixedPointOptions& options = {});
ProxResult lp_prox_fixed_point(const VectorField2D& eta, double kappa, double p,
                               const FixedPointOptions& options = {});

/// Same prox solved directly: for a scale s every pixel solves
/// r + s r^{p-1} = |eta|, and s is found so that s ||w||^{p-1} = kappa.
/// Returns zero exactly when ||eta||_q <= kappa.
ProxResult lp_prox_exact(const VectorField2D& eta, double kappa, double p, bool quadrature = false);

/// Relative residual of the first-order condition above for a given w.
double lp_prox_residual(const VectorField2D& w, const VectorField2D& eta, double kappa, double p, bool quadrature);

/// Prox of (kappa / p) ||.||_p^p, pointwise: r + kappa r^{p-1} = |eta|.
VectorField2D phom_prox(const VectorField2D& eta, double kappa, double p);

/// eta / (1 + kappa), the p = 2 case of phom_prox.
VectorField2D phom_prox_p2(const VectorField2D& eta, double kappa);

/// Positive root of r + s r^{p-1} = a for a >= 0, s >= 0, p > 1.
double radial_root(double a, double s, double p);

struct HuberParams {
  double alpha = 1.0;
  double beta = 1.0;
  double threshold() const { return alpha / beta; }
  void validate() const;
};

/// alpha |x| - alpha^2 / (2 beta) above the threshold alpha / beta,
/// beta |x|^2 / 2 below it.
double huber_phi(double magnitude, const HuberParams& params);
double huber_phi(double x1, double x2, const HuberParams& params);

/// Minimiser over w of alpha |grad u - w| + beta / 2 |w|^2, pointwise.
VectorField2D huber_w_star(const VectorField2D& grad_u, const HuberParams& params);

/// Sum of huber_phi(grad u) with the cell weight of the chosen convention.
double huber_tv_value(const Image2D& u, const HuberParams& params, bool quadrature);

}  // namespace tvlp

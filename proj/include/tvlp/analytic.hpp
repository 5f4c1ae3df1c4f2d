#pragma once

#include <optional>

#include "tvlp/grid.hpp"

namespace tvlp {

enum class StepModel {
  OneHom,  // beta ||w||_p
  TwoHom,  // (beta / 2) ||w||_2^2
};

enum class StepRegime {
  PiecewiseConstantROF,
  ConstantMean,
  ContinuousExponential,
  DiscontinuousExponential,
};

const char* to_string(StepRegime regime) noexcept;

/// Data f = 0 on (-L, 0], h on (0, L).
struct StepProblem {
  double h = 100.0;
  double L = 1.0;
  double alpha = 1.0;
  double beta = 1.0;
  double p = 2.0;
  StepModel model = StepModel::OneHom;

  void validate() const;
};

/// Closed-form solution for step data. For the exponential regimes, on
/// (-L, 0]:
///   u(x) = c1 e^{kx} + c2 e^{-kx},  w(x) = k c2 (e^{2kL + kx} - e^{-kx}),
/// and on (0, L) u(x) = h - u(-x), w(x) = w(-x). k = 1 / sqrt(beta_2hom).
class StepAnalytic {
 public:
  StepRegime regime() const noexcept { return regime_; }
  double k() const noexcept { return k_; }
  double c1() const noexcept { return c1_; }
  double c2() const noexcept { return c2_; }
  /// 2-homogeneous weight the exponential constants were computed for (the
  /// mapped weight when the problem was posed 1-homogeneously).
  double beta_2hom() const noexcept { return beta2_; }

  double u(double x) const;
  double w(double x) const;
  /// Dual certificate: phi' = u - f, phi(-L) = phi(L) = 0.
  double phi(double x) const;

 private:
  friend StepAnalytic step_exact_2hom(const StepProblem& problem);
  friend StepAnalytic step_exact(const StepProblem& problem);

  StepRegime regime_ = StepRegime::PiecewiseConstantROF;
  double h_ = 0.0;
  double L_ = 1.0;
  double alpha_ = 0.0;
  double k_ = 0.0;
  double c1_ = 0.0;
  double c2_ = 0.0;
  double beta2_ = 0.0;
};

/// beta / alpha >= |Omega|^{1/q}: w = 0 is optimal for any data.
bool rof_region(double alpha, double beta, double p, double omega_measure);

/// alpha >= ||f - mean f||_1 and beta >= |Omega|^{1/q} ||f - mean f||_1
/// (quadrature-weighted): the solution is the mean of f.
bool mean_region(const Grid1D& f, double alpha, double beta, double q);

StepRegime classify_step(const StepProblem& problem);

/// Exponential solution of the 2-homogeneous p = 2 problem. Throws for p != 2.
StepAnalytic step_exact_2hom(const StepProblem& problem);

/// Any regime: piecewise constant solutions for the w = 0 regions, and the
/// exponential solution (through the beta map) otherwise. The exponential
/// case requires p = 2.
StepAnalytic step_exact(const StepProblem& problem);

/// ||w||_{L^2(-L, L)} = c2 sqrt(2k) e^{kL} (sinh(2kL) - 2kL)^{1/2}.
double w_norm_2hom(const StepProblem& problem);

/// beta_1hom = beta_phom * ||w||_p^{p-1}. Throws for w_norm <= 0.
double beta_map(double beta_phom, double w_norm, double p);

/// Inverse of the p = 2 beta map for step data: the 2-homogeneous weight
/// whose solution coincides with the 1-homogeneous problem at beta_1hom.
/// Throws if beta_1hom lies in the w = 0 region.
double beta_map_inverse_step(double h, double L, double alpha, double beta_1hom);

/// Second-order approximation of the continuous/discontinuous boundary,
/// beta = h L^3 / (3 (h L - 2 alpha)). Throws at alpha = hL/2.
double taylor_beta_boundary(double alpha, double h, double L);

struct OptimalityCertificate {
  double boundary_residual = 0.0;  // |phi_n|
  double dual_bound_excess = 0.0;  // max(0, max|phi| - alpha)
  double support_residual = 0.0;   // max |phi - alpha sign(grad u - w)| on the support
  double w_residual = 0.0;         // w-optimality (see verify_optimality_1d)
  bool w_is_zero = false;

  double max_residual() const;
};

/// Dual certificate check for a 1D candidate (u, w). phi_i = t sum_{j<=i}(u_j - f_j).
/// The w condition is phi = beta |w|^{p-2} w / ||w||_p^{p-1} (1-homogeneous,
/// or beta |w|^{p-2} w for the p-homogeneous mode), and ||phi||_q <= beta
/// when w = 0. Norms follow params.norm for 1D data (Auto = quadrature).
/// eps_support defaults to max(1e-6 max|grad u - w|, 1e-3 max|grad f|).
OptimalityCertificate verify_optimality_1d(const Grid1D& u, const Grid1D& w, const Grid1D& f,
                                           const SolveParams& params,
                                           std::optional<double> eps_support = std::nullopt);

}  // namespace tvlp

#include "tvlp/analytic.hpp"

#include <algorithm>
#include <cmath>

#include "tvlp/error.hpp"
#include "tvlp/operators.hpp"

namespace tvlp {

namespace {

// log(e^x - 1) for x > 0 without overflow.
double log_expm1(double x) { return x > 30.0 ? x + std::log1p(-std::exp(-x)) : std::log(std::expm1(x)); }

// log(e^x + 1).
double log_exp_plus1(double x) { return x > 0.0 ? x + std::log1p(std::exp(-x)) : std::log1p(std::exp(x)); }

// log(sinh x - x) for x > 0; a series near zero avoids cancellation.
double log_sinh_minus_x(double x) {
  if (x < 1e-2) {
    const double x2 = x * x;
    return std::log(x2 * x / 6.0) + std::log1p(x2 / 20.0 + x2 * x2 / 840.0);
  }
  if (x > 30.0) return x - std::log(2.0) + std::log1p(-std::exp(-2.0 * x) - 2.0 * x * std::exp(-x));
  return std::log(std::sinh(x) - x);
}

struct Exponential {
  StepRegime regime;
  double k;
  double log_c2;
};

Exponential exponential_constants(double h, double L, double alpha, double beta2) {
  const double k = 1.0 / std::sqrt(beta2);
  const bool continuous = std::tanh(k * L) / k < 2.0 * alpha / h;
  const double log_c2 = continuous ? std::log(h / 2.0) - log_exp_plus1(2.0 * k * L)
                                   : std::log(alpha * k) - log_expm1(2.0 * k * L);
  return {continuous ? StepRegime::ContinuousExponential : StepRegime::DiscontinuousExponential, k, log_c2};
}

double log_w_norm(const Exponential& e, double L) {
  const double k = e.k;
  return e.log_c2 + 0.5 * std::log(2.0 * k) + k * L + 0.5 * log_sinh_minus_x(2.0 * k * L);
}

// beta_2 ||w(beta_2)||_2, increasing in beta_2.
double mapped_weight(double h, double L, double alpha, double beta2) {
  return beta2 * std::exp(log_w_norm(exponential_constants(h, L, alpha, beta2), L));
}

void require_positive(double value, const char* name) {
  if (!(value > 0.0) || !std::isfinite(value)) throw InvalidArgument(std::string(name) + " must be positive and finite");
}

bool mean_threshold_holds(const StepProblem& pr, double q) {
  return pr.alpha >= pr.h * pr.L / 2.0 &&
         pr.beta >= pr.h / 2.0 * std::pow(2.0 * std::pow(pr.L, q + 1.0) / (q + 1.0), 1.0 / q);
}

bool rof_threshold_holds(const StepProblem& pr, double q) {
  return pr.beta / pr.alpha >= std::pow(2.0 * pr.L / (q + 1.0), 1.0 / q);
}

}  // namespace

const char* to_string(StepRegime regime) noexcept {
  switch (regime) {
    case StepRegime::PiecewiseConstantROF:
      return "piecewise-constant-rof";
    case StepRegime::ConstantMean:
      return "constant-mean";
    case StepRegime::ContinuousExponential:
      return "continuous-exponential";
    case StepRegime::DiscontinuousExponential:
      return "discontinuous-exponential";
  }
  return "unknown";
}

void StepProblem::validate() const {
  require_positive(h, "h");
  require_positive(L, "L");
  require_positive(alpha, "alpha");
  require_positive(beta, "beta");
  if (!(p > 1.0) || !std::isfinite(p)) throw InvalidArgument("p must lie in (1, inf)");
}

double StepAnalytic::u(double x) const {
  if (x > 0.0) return h_ - u(-x);
  switch (regime_) {
    case StepRegime::PiecewiseConstantROF:
      return alpha_ / L_;
    case StepRegime::ConstantMean:
      return h_ / 2.0;
    default:
      break;
  }
  const double log_c2 = std::log(c2_);
  return std::exp(log_c2 + k_ * (2.0 * L_ + x)) + std::exp(log_c2 - k_ * x);
}

double StepAnalytic::w(double x) const {
  if (x > 0.0) return w(-x);
  if (regime_ == StepRegime::PiecewiseConstantROF || regime_ == StepRegime::ConstantMean) return 0.0;
  const double log_kc2 = std::log(k_ * c2_);
  return std::exp(log_kc2 + k_ * (2.0 * L_ + x)) - std::exp(log_kc2 - k_ * x);
}

double StepAnalytic::phi(double x) const {
  if (x > 0.0) return phi(-x);
  switch (regime_) {
    case StepRegime::PiecewiseConstantROF:
      return alpha_ / L_ * (x + L_);
    case StepRegime::ConstantMean:
      return h_ / 2.0 * (x + L_);
    default:
      break;
  }
  // Integral of u from -L to x; equals beta_2 w(x).
  return beta2_ * w(x);
}

bool rof_region(double alpha, double beta, double p, double omega_measure) {
  require_positive(alpha, "alpha");
  require_positive(beta, "beta");
  require_positive(omega_measure, "domain measure");
  return beta / alpha >= std::pow(omega_measure, 1.0 / conjugate_exponent(p));
}

bool mean_region(const Grid1D& f, double alpha, double beta, double q) {
  require_positive(alpha, "alpha");
  require_positive(beta, "beta");
  if (!(q >= 1.0)) throw InvalidArgument("q must be at least 1");
  const Image2D image = f.to_image();
  const double mean = mean_value(image);
  double l1 = 0.0;
  for (double v : f.values()) l1 += std::abs(v - mean);
  l1 *= f.spacing();
  const double measure = f.spacing() * static_cast<double>(f.size());
  return alpha >= l1 && beta >= std::pow(measure, 1.0 / q) * l1;
}

StepRegime classify_step(const StepProblem& problem) {
  problem.validate();
  if (problem.model == StepModel::TwoHom) {
    if (problem.p != 2.0) throw InvalidArgument("the 2-homogeneous step analysis requires p = 2");
    return exponential_constants(problem.h, problem.L, problem.alpha, problem.beta).regime;
  }
  const double q = conjugate_exponent(problem.p);
  if (mean_threshold_holds(problem, q)) return StepRegime::ConstantMean;
  if (rof_threshold_holds(problem, q)) return StepRegime::PiecewiseConstantROF;
  if (problem.p != 2.0) throw InvalidArgument("no closed-form classification for p != 2 outside the w = 0 regions");
  const double beta2 = beta_map_inverse_step(problem.h, problem.L, problem.alpha, problem.beta);
  return exponential_constants(problem.h, problem.L, problem.alpha, beta2).regime;
}

StepAnalytic step_exact_2hom(const StepProblem& problem) {
  problem.validate();
  if (problem.p != 2.0) throw InvalidArgument("closed-form exponential solutions exist only for p = 2");
  if (problem.model != StepModel::TwoHom) throw InvalidArgument("step_exact_2hom expects the 2-homogeneous model");
  const Exponential e = exponential_constants(problem.h, problem.L, problem.alpha, problem.beta);
  StepAnalytic out;
  out.regime_ = e.regime;
  out.h_ = problem.h;
  out.L_ = problem.L;
  out.alpha_ = problem.alpha;
  out.k_ = e.k;
  out.c2_ = std::exp(e.log_c2);
  out.c1_ = std::exp(e.log_c2 + 2.0 * e.k * problem.L);
  out.beta2_ = problem.beta;
  return out;
}

StepAnalytic step_exact(const StepProblem& problem) {
  problem.validate();
  if (problem.model == StepModel::TwoHom) return step_exact_2hom(problem);
  const StepRegime regime = classify_step(problem);
  if (regime == StepRegime::ConstantMean || regime == StepRegime::PiecewiseConstantROF) {
    StepAnalytic out;
    out.regime_ = regime;
    out.h_ = problem.h;
    out.L_ = problem.L;
    out.alpha_ = problem.alpha;
    return out;
  }
  StepProblem mapped = problem;
  mapped.model = StepModel::TwoHom;
  mapped.beta = beta_map_inverse_step(problem.h, problem.L, problem.alpha, problem.beta);
  return step_exact_2hom(mapped);
}

double w_norm_2hom(const StepProblem& problem) {
  problem.validate();
  if (problem.p != 2.0) throw InvalidArgument("w_norm_2hom requires p = 2");
  return std::exp(log_w_norm(exponential_constants(problem.h, problem.L, problem.alpha, problem.beta), problem.L));
}

double beta_map(double beta_phom, double w_norm, double p) {
  require_positive(beta_phom, "beta");
  if (!(w_norm > 0.0) || !std::isfinite(w_norm)) throw InvalidArgument("beta map undefined for w = 0");
  if (!(p > 1.0)) throw InvalidArgument("p must lie in (1, inf)");
  return beta_phom * std::pow(w_norm, p - 1.0);
}

double beta_map_inverse_step(double h, double L, double alpha, double beta_1hom) {
  StepProblem probe{h, L, alpha, beta_1hom, 2.0, StepModel::OneHom};
  probe.validate();
  if (rof_threshold_holds(probe, 2.0) || mean_threshold_holds(probe, 2.0)) {
    throw InvalidArgument("beta lies in the w = 0 region; the inverse beta map is undefined");
  }
  double lo = std::log(beta_1hom) - 1.0;
  double hi = std::log(beta_1hom) + 1.0;
  while (mapped_weight(h, L, alpha, std::exp(lo)) > beta_1hom) lo -= 2.0;
  while (mapped_weight(h, L, alpha, std::exp(hi)) < beta_1hom) {
    hi += 2.0;
    if (hi > 700.0) throw InvalidArgument("inverse beta map did not bracket the target");
  }
  for (int it = 0; it < 200 && hi - lo > 1e-14 * std::max(1.0, std::abs(hi)); ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mapped_weight(h, L, alpha, std::exp(mid)) < beta_1hom) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return std::exp(0.5 * (lo + hi));
}

double taylor_beta_boundary(double alpha, double h, double L) {
  require_positive(h, "h");
  require_positive(L, "L");
  const double denom = h * L - 2.0 * alpha;
  if (denom == 0.0) throw InvalidArgument("the boundary has an asymptote at alpha = hL/2");
  return h * L * L * L / (3.0 * denom);
}

double OptimalityCertificate::max_residual() const {
  return std::max({boundary_residual, dual_bound_excess, support_residual, w_residual});
}

OptimalityCertificate verify_optimality_1d(const Grid1D& u, const Grid1D& w, const Grid1D& f,
                                           const SolveParams& params, std::optional<double> eps_support) {
  params.validate();
  const std::size_t n = f.size();
  if (u.size() != n || w.size() != n) throw InvalidArgument("verify: u, w, f must have equal length");
  const double t = f.spacing();
  const bool quadrature = params.norm != NormConvention::Discrete;
  const double weight = quadrature ? t : 1.0;

  std::vector<double> phi(n);
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    acc += t * (u[i] - f[i]);
    phi[i] = acc;
  }

  std::vector<double> d(n);
  double d_max = 0.0;
  double grad_max = 0.0;
  double data_grad_max = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double grad = i + 1 < n ? (u[i + 1] - u[i]) / t : 0.0;
    d[i] = grad - w[i];
    d_max = std::max(d_max, std::abs(d[i]));
    grad_max = std::max(grad_max, std::abs(grad));
    if (i + 1 < n) data_grad_max = std::max(data_grad_max, std::abs(f[i + 1] - f[i]) / t);
  }
  // Floored by the data's gradient scale: where grad u - w vanishes in the
  // continuum, a discrete solution leaves only truncation and stopping error.
  const double eps = eps_support.value_or(std::max(1e-6 * d_max, 1e-3 * data_grad_max));

  OptimalityCertificate cert;
  cert.boundary_residual = std::abs(phi[n - 1]);
  double phi_max = 0.0;
  for (double v : phi) phi_max = std::max(phi_max, std::abs(v));
  cert.dual_bound_excess = std::max(0.0, phi_max - params.alpha);
  for (std::size_t i = 0; i < n; ++i) {
    if (std::abs(d[i]) > eps) {
      const double target = d[i] > 0.0 ? params.alpha : -params.alpha;
      cert.support_residual = std::max(cert.support_residual, std::abs(phi[i] - target));
    }
  }

  const double p = params.p;
  const Image2D w_image = w.to_image();
  const double w_norm = weighted_lp_norm(w_image, p, quadrature);
  const double grad_scale = std::max(grad_max, 1.0) * std::pow(weight * static_cast<double>(n), 1.0 / p);
  cert.w_is_zero = w_norm <= 1e-12 * grad_scale;
  if (cert.w_is_zero) {
    const Image2D phi_image = Image2D::signal(phi, t);
    const double dual = weighted_lp_norm(phi_image, params.q(), quadrature);
    cert.w_residual = std::max(0.0, dual - params.beta);
  } else {
    for (std::size_t i = 0; i < n; ++i) {
      const double mag = std::abs(w[i]);
      double target = 0.0;
      if (mag > 0.0) {
        target = params.mode == Homogeneity::OneHomogeneous
                     ? params.beta * std::pow(mag / w_norm, p - 1.0) * (w[i] > 0.0 ? 1.0 : -1.0)
                     : params.beta * std::pow(mag, p - 1.0) * (w[i] > 0.0 ? 1.0 : -1.0);
      }
      cert.w_residual = std::max(cert.w_residual, std::abs(phi[i] - target));
    }
  }
  return cert;
}

}  // namespace tvlp

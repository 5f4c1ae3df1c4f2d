#include "tvlp/solver.hpp"

#include <chrono>
#include <cmath>
#include <limits>

#include "tvlp/dct.hpp"
#include "tvlp/error.hpp"
#include "tvlp/operators.hpp"
#include "tvlp/prox.hpp"

namespace tvlp {

namespace {

double sum_of_squares(const Image2D& a) {
  double s = 0.0;
  for (double v : a.values()) s += v * v;
  return s;
}

bool is_zero(const VectorField2D& w) {
  for (std::size_t k = 0; k < w.size(); ++k) {
    if (w.comp1()[k] != 0.0 || w.comp2()[k] != 0.0) return false;
  }
  return true;
}

// Pointwise minimiser of alpha |g - w| + (s / p) |w|^p along the direction of g.
double capped_radius(double g_mag, double alpha, double s, double p) {
  return std::min(g_mag, std::pow(alpha / s, 1.0 / (p - 1.0)));
}

VectorField2D scaled_to_radius(const VectorField2D& g, double alpha, double s, double p) {
  VectorField2D w(g.comp1());
  for (std::size_t k = 0; k < g.size(); ++k) {
    const double mag = g.magnitude(k);
    if (mag == 0.0) continue;
    const double c = capped_radius(mag, alpha, s, p) / mag;
    w.comp1()[k] = c * g.comp1()[k];
    w.comp2()[k] = c * g.comp2()[k];
  }
  return w;
}

// s * ||w(s)||_p^{p-1} = (sum weight * min(|g|^p s^q, alpha^q))^{1/q}:
// continuous and nondecreasing in s.
double equivalent_weight(const VectorField2D& g, double alpha, double s, double p, double weight) {
  const double q = conjugate_exponent(p);
  double sum = 0.0;
  for (std::size_t k = 0; k < g.size(); ++k) {
    const double mag = g.magnitude(k);
    if (mag == 0.0) continue;
    const double x = std::log(mag) * p + std::log(s) * q;
    sum += std::exp(std::min(x, q * std::log(alpha)));
  }
  return std::pow(sum * weight, 1.0 / q);
}

bool is_constant(const Image2D& f) {
  for (double v : f.values()) {
    if (v != f[0]) return false;
  }
  return true;
}

}  // namespace

double objective(const Image2D& u, const VectorField2D& w, const Image2D& f, const SolveParams& params,
                 bool quadrature) {
  if (!u.same_shape(f) || !w.same_shape(u)) throw InvalidArgument("objective: shapes disagree");
  const double weight = u.cell_weight(quadrature);
  const double fidelity = 0.5 * sum_of_squares(f - u) * weight;
  const double coupling = params.alpha * field_lp_norm(gradient(u) - w, 1.0, quadrature);
  const double w_norm = field_lp_norm(w, params.p, quadrature);
  const double w_term = params.mode == Homogeneity::OneHomogeneous ? params.beta * w_norm
                                                                    : params.beta / params.p * std::pow(w_norm, params.p);
  return fidelity + coupling + w_term;
}

VectorField2D tvlp_optimal_w(const Image2D& u, const SolveParams& params, bool quadrature) {
  params.validate();
  const VectorField2D g = gradient(u);
  if (params.mode == Homogeneity::PHomogeneous) return scaled_to_radius(g, params.alpha, params.beta, params.p);

  const double weight = u.cell_weight(quadrature);
  // beta at or above the saturation level means w = 0 is optimal.
  const double saturated = equivalent_weight(g, params.alpha, std::numeric_limits<double>::max(), params.p, weight);
  if (!(params.beta < saturated)) return VectorField2D(u);

  double lo = std::log(params.beta) - 1.0;
  double hi = std::log(params.beta) + 1.0;
  while (equivalent_weight(g, params.alpha, std::exp(lo), params.p, weight) > params.beta) lo -= 4.0;
  while (equivalent_weight(g, params.alpha, std::exp(hi), params.p, weight) < params.beta) hi += 4.0;
  for (int it = 0; it < 200 && hi - lo > 1e-15 * std::max(1.0, std::abs(hi)); ++it) {
    const double mid = 0.5 * (lo + hi);
    if (equivalent_weight(g, params.alpha, std::exp(mid), params.p, weight) < params.beta) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return scaled_to_radius(g, params.alpha, std::exp(0.5 * (lo + hi)), params.p);
}

double tvlp_value(const Image2D& u, const SolveParams& params, bool quadrature) {
  const VectorField2D w = tvlp_optimal_w(u, params, quadrature);
  const double coupling = params.alpha * field_lp_norm(gradient(u) - w, 1.0, quadrature);
  const double w_norm = field_lp_norm(w, params.p, quadrature);
  if (params.mode == Homogeneity::OneHomogeneous) return coupling + params.beta * w_norm;
  return coupling + params.beta / params.p * std::pow(w_norm, params.p);
}

namespace {

enum class WModel { None, Solve };

DenoiseResult run_split_bregman(const Image2D& f, const SolveParams& params, WModel w_model) {
  if (!f.all_finite()) throw InvalidArgument("data contains non-finite values");
  const auto start = std::chrono::steady_clock::now();
  const bool quadrature = params.quadrature_for(f);
  const double lambda = params.resolved_lambda(f);
  const double shrink_threshold = params.alpha / lambda;
  const double kappa = params.beta / lambda;

  const ScreenedPoissonSolver poisson(f.rows(), f.cols(), lambda, f.spacing());

  SolveState state{f, gradient(f), VectorField2D(f), VectorField2D(f), 0};
  SolveReport report;
  report.lambda = lambda;

  FixedPointOptions fp;
  fp.max_sweeps = params.inner_fp_iters;
  fp.quadrature = quadrature;

  while (state.outer_iter < params.max_outer) {
    // u: (I - lambda laplacian) u = f - lambda div(z + w - b)
    const Image2D rhs = f - lambda * divergence(state.z + state.w - state.b);
    Image2D u_next = poisson.solve(rhs);
    const VectorField2D grad_u = gradient(u_next);

    // z: isotropic shrinkage of grad u - w + b
    state.z = shrink(grad_u - state.w + state.b, shrink_threshold);

    // w: prox of the L^p term at eta = grad u - z + b
    if (w_model == WModel::Solve) {
      const VectorField2D eta = grad_u - state.z + state.b;
      if (params.mode == Homogeneity::PHomogeneous) {
        state.w = params.p == 2.0 ? phom_prox_p2(eta, kappa) : phom_prox(eta, kappa, params.p);
      } else if (params.w_update == WUpdate::Exact) {
        state.w = lp_prox_exact(eta, kappa, params.p, quadrature).w;
      } else {
        // Warm start; zero is a fixed point of the map, so restart from eta.
        const VectorField2D& start_w = is_zero(state.w) ? eta : state.w;
        state.w = lp_prox_fixed_point(eta, kappa, params.p, start_w, fp).w;
      }
    }

    state.b = state.b + grad_u - state.w - state.z;

    const double change = std::sqrt(sum_of_squares(u_next - state.u));
    const double size = std::sqrt(sum_of_squares(u_next));
    const double residual = size > 0.0 ? change / size : change;
    if (!std::isfinite(residual) || !state.w.all_finite() || !state.b.all_finite()) {
      throw NonFinite("split Bregman iterate became non-finite at iteration " + std::to_string(state.outer_iter + 1));
    }
    state.u = std::move(u_next);
    ++state.outer_iter;

    report.relative_residuals.push_back(residual);
    report.objective_trace.push_back(objective(state.u, state.w, f, params, quadrature));
    // With z = grad f the first u-update reproduces f, so the change after
    // one iteration says nothing about convergence unless f is already optimal
    // (constant data).
    const bool trivial_first_step = state.outer_iter == 1 && !is_constant(f);
    if (residual <= params.tol && !trivial_first_step) {
      report.terminated_by = Termination::Tolerance;
      break;
    }
  }
  report.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return {std::move(state.u), std::move(state.w), std::move(report)};
}

}  // namespace

DenoiseResult denoise(const Image2D& f, const SolveParams& params) {
  params.validate();
  return run_split_bregman(f, params, WModel::Solve);
}

DenoiseResult denoise_rof(const Image2D& f, double alpha, const SolveParams& controls) {
  SolveParams params = controls;
  params.alpha = alpha;
  params.validate();
  if (!controls.lambda) params.lambda = heuristic_lambda(alpha, 2.0, f.spacing());
  return run_split_bregman(f, params, WModel::None);
}

SolveParams to_discrete_params(const SolveParams& quadrature_params, const Image2D& grid) {
  SolveParams out = quadrature_params;
  out.norm = NormConvention::Discrete;
  if (out.mode == Homogeneity::OneHomogeneous) {
    // beta (c sum |w|^p)^{1/p} = c * [beta c^{-1/q} (sum |w|^p)^{1/p}], c = t^d.
    const double c = grid.cell_weight(true);
    out.beta = quadrature_params.beta * std::pow(c, -1.0 / quadrature_params.q());
  }
  return out;
}

}  // namespace tvlp

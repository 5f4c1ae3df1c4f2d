#include "tvlp/decompose.hpp"

#include <chrono>
#include <cmath>

#include "tvlp/dct.hpp"
#include "tvlp/error.hpp"
#include "tvlp/operators.hpp"
#include "tvlp/prox.hpp"

namespace tvlp {

namespace {

double norm2(const Image2D& a) {
  double s = 0.0;
  for (double v : a.values()) s += v * v;
  return std::sqrt(s);
}

bool is_zero(const VectorField2D& w) {
  for (std::size_t k = 0; k < w.size(); ++k) {
    if (w.comp1()[k] != 0.0 || w.comp2()[k] != 0.0) return false;
  }
  return true;
}

bool is_constant(const Image2D& f) {
  for (double v : f.values()) {
    if (v != f[0]) return false;
  }
  return true;
}

}  // namespace

double decomposition_objective(const Image2D& u, const Image2D& v, const Image2D& f, const SolveParams& params,
                               bool quadrature) {
  if (!u.same_shape(f) || !v.same_shape(f)) throw InvalidArgument("decomposition objective: shapes disagree");
  const Image2D r = f - u - v;
  const double fidelity = 0.5 * std::pow(norm2(r), 2) * f.cell_weight(quadrature);
  const double tv = params.alpha * tv_value(u, quadrature);
  const double grad_v = field_lp_norm(gradient(v), params.p, quadrature);
  const double smooth = params.mode == Homogeneity::OneHomogeneous ? params.beta * grad_v
                                                                    : params.beta / params.p * std::pow(grad_v, params.p);
  return fidelity + tv + smooth;
}

Decomposition decompose(const Image2D& f, const SolveParams& params, const std::optional<Image2D>& v0) {
  params.validate();
  if (!f.all_finite()) throw InvalidArgument("data contains non-finite values");
  if (v0 && (!v0->same_shape(f) || !v0->all_finite())) throw InvalidArgument("initial v must match the data");
  const auto start = std::chrono::steady_clock::now();
  const bool quadrature = params.quadrature_for(f);
  const double lambda = params.resolved_lambda(f);
  const double kappa = params.beta / lambda;

  const NeumannSpectrum spectrum = neumann_eigenvalues(f.rows(), f.cols(), lambda, f.spacing());
  const Image2D& mu = spectrum.eigenvalues;

  Image2D v = v0 ? *v0 : Image2D(f.rows(), f.cols(), f.spacing());
  Image2D u = f - v;
  VectorField2D d1 = gradient(u);
  VectorField2D d2 = gradient(v);
  VectorField2D b1(f);
  VectorField2D b2(f);

  FixedPointOptions fp;
  fp.max_sweeps = params.inner_fp_iters;
  fp.quadrature = quadrature;

  SolveReport report;
  report.lambda = lambda;
  int iter = 0;
  while (iter < params.max_outer) {
    // [(I - lambda lap), I; I, (I - lambda lap)] (u, v) = (r1, r2)
    const Image2D r1 = dct2(f - lambda * divergence(d1 - b1));
    const Image2D r2 = dct2(f - lambda * divergence(d2 - b2));
    Image2D u_hat(f.rows(), f.cols(), f.spacing());
    Image2D v_hat(f.rows(), f.cols(), f.spacing());
    u_hat[0] = r1[0];
    for (std::size_t k = 1; k < f.size(); ++k) {
      const double m = mu[k];
      const double det = (m - 1.0) * (m + 1.0);
      u_hat[k] = (m * r1[k] - r2[k]) / det;
      v_hat[k] = (m * r2[k] - r1[k]) / det;
    }
    Image2D u_next = idct2(u_hat);
    Image2D v_next = idct2(v_hat);
    const VectorField2D grad_u = gradient(u_next);
    const VectorField2D grad_v = gradient(v_next);

    d1 = shrink(grad_u + b1, params.alpha / lambda);
    const VectorField2D eta = grad_v + b2;
    if (params.mode == Homogeneity::PHomogeneous) {
      d2 = phom_prox(eta, kappa, params.p);
    } else if (params.w_update == WUpdate::Exact) {
      d2 = lp_prox_exact(eta, kappa, params.p, quadrature).w;
    } else {
      const VectorField2D& start_d = is_zero(d2) ? eta : d2;
      d2 = lp_prox_fixed_point(eta, kappa, params.p, start_d, fp).w;
    }
    b1 = b1 + grad_u - d1;
    b2 = b2 + grad_v - d2;

    const double change = std::hypot(norm2(u_next - u), norm2(v_next - v));
    const double size = std::hypot(norm2(u_next), norm2(v_next));
    const double residual = size > 0.0 ? change / size : change;
    if (!std::isfinite(residual) || !b1.all_finite() || !b2.all_finite()) {
      throw NonFinite("decomposition iterate became non-finite at iteration " + std::to_string(iter + 1));
    }
    u = std::move(u_next);
    v = std::move(v_next);
    ++iter;
    report.relative_residuals.push_back(residual);
    report.objective_trace.push_back(decomposition_objective(u, v, f, params, quadrature));
    // The first step reproduces the starting split.
    const bool trivial_first_step = iter == 1 && !is_constant(f);
    if (residual <= params.tol && !trivial_first_step) {
      report.terminated_by = Termination::Tolerance;
      break;
    }
  }
  report.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return {std::move(u), std::move(v), std::move(report)};
}

UniquenessReport check_decomposition_uniqueness(const Image2D& f, const SolveParams& params, int n_restarts) {
  if (n_restarts < 2) throw InvalidArgument("uniqueness check needs at least two restarts");
  UniquenessReport out;
  const Image2D centred = f + (-mean_value(f));
  for (int r = 0; r < n_restarts; ++r) {
    const Image2D v0 = (static_cast<double>(r) / n_restarts) * centred;
    out.runs.push_back(decompose(f, params, v0));
  }
  const Image2D sum0 = out.runs[0].u_part + out.runs[0].v_part;
  const VectorField2D g0 = gradient(out.runs[0].v_part);
  const double g0_sq = inner(g0, g0);
  for (int r = 1; r < n_restarts; ++r) {
    const Image2D sum = out.runs[r].u_part + out.runs[r].v_part;
    for (std::size_t k = 0; k < f.size(); ++k) {
      out.max_sum_deviation = std::max(out.max_sum_deviation, std::abs(sum[k] - sum0[k]));
    }
    const VectorField2D g = gradient(out.runs[r].v_part);
    const double g_sq = inner(g, g);
    const double mu = g0_sq > 0.0 ? inner(g, g0) / g0_sq : 0.0;
    const VectorField2D fit = g - mu * g0;
    out.mu.push_back(mu);
    out.mu_residual.push_back(g_sq > 0.0 ? std::sqrt(inner(fit, fit) / g_sq) : 0.0);
  }
  return out;
}

}  // namespace tvlp

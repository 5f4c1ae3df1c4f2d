#include "tvlp/prox.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "tvlp/error.hpp"
#include "tvlp/operators.hpp"

namespace tvlp {

namespace {

// Magnitudes below this are treated as exact zeros in |w|^{p-2}.
constexpr double kZeroMagnitude = 1e-14;

void require_same_shape(const VectorField2D& a, const VectorField2D& b) {
  if (!a.same_shape(b)) throw InvalidArgument("field shapes differ");
}

void require_kappa(double kappa) {
  if (!(kappa > 0.0) || !std::isfinite(kappa)) throw InvalidArgument("kappa must be positive");
}

void require_p(double p) {
  if (!(p > 1.0) || !std::isfinite(p)) throw InvalidArgument("p must lie in (1, inf)");
}

// Scales each pixel of eta to the given radius.
VectorField2D radial_field(const VectorField2D& eta, const std::vector<double>& radius) {
  VectorField2D w(eta.comp1());
  for (std::size_t k = 0; k < eta.size(); ++k) {
    const double a = eta.magnitude(k);
    if (a == 0.0 || radius[k] == 0.0) continue;
    const double s = radius[k] / a;
    w.comp1()[k] = s * eta.comp1()[k];
    w.comp2()[k] = s * eta.comp2()[k];
  }
  return w;
}

double dual_norm(const VectorField2D& eta, double q, double weight) {
  double scale = 0.0;
  for (std::size_t k = 0; k < eta.size(); ++k) scale = std::max(scale, eta.magnitude(k));
  if (scale == 0.0) return 0.0;
  double sum = 0.0;
  for (std::size_t k = 0; k < eta.size(); ++k) sum += std::pow(eta.magnitude(k) / scale, q);
  return scale * std::pow(sum * weight, 1.0 / q);
}

}  // namespace

VectorField2D shrink(const VectorField2D& g, double threshold) {
  if (!(threshold >= 0.0)) throw InvalidArgument("shrink threshold must be nonnegative");
  VectorField2D out(g.comp1());
  for (std::size_t k = 0; k < g.size(); ++k) {
    const double mag = g.magnitude(k);
    if (mag <= threshold) continue;
    const double s = (mag - threshold) / mag;
    out.comp1()[k] = s * g.comp1()[k];
    out.comp2()[k] = s * g.comp2()[k];
  }
  return out;
}

double lp_prox_residual(const VectorField2D& w, const VectorField2D& eta, double kappa, double p, bool quadrature) {
  require_same_shape(w, eta);
  const double weight = w.cell_weight(quadrature);
  const double eta_norm = std::sqrt(inner(eta, eta));
  const double norm = field_lp_norm(w, p, quadrature);
  if (norm == 0.0) {
    // Subdifferential case: zero is optimal iff eta lies in the kappa-ball of
    // the dual norm.
    if (eta_norm == 0.0) return 0.0;
    const double dn = dual_norm(eta, conjugate_exponent(p), weight);
    return std::max(0.0, dn - kappa) / dn;
  }
  double sum = 0.0;
  for (std::size_t k = 0; k < w.size(); ++k) {
    const double mag = w.magnitude(k);
    const double c = mag > 0.0 ? (kappa / norm) * std::pow(mag / norm, p - 2.0) : 0.0;
    const double r1 = c * w.comp1()[k] + w.comp1()[k] - eta.comp1()[k];
    const double r2 = c * w.comp2()[k] + w.comp2()[k] - eta.comp2()[k];
    sum += r1 * r1 + r2 * r2;
  }
  return std::sqrt(sum) / std::max(eta_norm, std::numeric_limits<double>::min());
}

ProxResult lp_prox_fixed_point(const VectorField2D& eta, double kappa, double p, const VectorField2D& w0,
                               const FixedPointOptions& options) {
  require_kappa(kappa);
  require_p(p);
  require_same_shape(eta, w0);
  if (options.max_sweeps < 1) throw InvalidArgument("fixed point needs at least one sweep");

  // In log-magnitude the undamped map has slope -(p-2) c / (1 + c) at a
  // pixel, which drops below -1 for p > 3 and the sweeps settle into a
  // 2-cycle. The geometric mean with the previous radius keeps the fixed
  // points and restores contraction.
  const double theta = std::min(1.0, 1.5 / (p - 1.0));

  // Zero is the prox exactly when eta lies in the kappa-ball of the dual
  // norm; the sweeps only approach it.
  if (dual_norm(eta, conjugate_exponent(p), eta.cell_weight(options.quadrature)) <= kappa) {
    return {VectorField2D(eta.comp1()), 0.0, 0};
  }
  // For p = 2 the sweeps only rescale ||w||, toward ||eta|| - kappa, and
  // slowly once that is small against kappa.
  if (p == 2.0) {
    const double eta_norm = field_lp_norm(eta, 2.0, options.quadrature);
    VectorField2D w = eta;
    const double scale = 1.0 - kappa / eta_norm;
    for (std::size_t k = 0; k < w.size(); ++k) {
      w.comp1()[k] *= scale;
      w.comp2()[k] *= scale;
    }
    const double residual = lp_prox_residual(w, eta, kappa, p, options.quadrature);
    return {std::move(w), residual, 1};
  }

  // A pixel at zero stays there for p < 2, so vanished pixels restart from eta.
  VectorField2D w = w0;
  if (p < 2.0) {
    for (std::size_t k = 0; k < w.size(); ++k) {
      if (w.magnitude(k) <= kZeroMagnitude) {
        w.comp1()[k] = eta.comp1()[k];
        w.comp2()[k] = eta.comp2()[k];
      }
    }
  }
  VectorField2D next(eta.comp1());
  int sweeps = 0;
  double residual = 0.0;
  while (sweeps < options.max_sweeps) {
    const double norm = field_lp_norm(w, p, options.quadrature);
    for (std::size_t k = 0; k < w.size(); ++k) {
      const double mag = w.magnitude(k);
      double value1 = 0.0;
      double value2 = 0.0;
      if (norm > 0.0) {
        // kappa |w|^{p-2} / ||w||^{p-1}, written in ratios that stay finite
        // for large p. A vanishing pixel maps to eta for p > 2 and, through
        // the 0/0 = 0 convention applied to |w|^{2-p} ||w||^{p-1}, to zero
        // for p < 2.
        if (mag <= kZeroMagnitude && p < 2.0) {
          next.comp1()[k] = 0.0;
          next.comp2()[k] = 0.0;
          continue;
        }
        const double c = mag > kZeroMagnitude ? (kappa / norm) * std::pow(mag / norm, p - 2.0)
                                              : (p == 2.0 ? kappa / norm : 0.0);
        double scale = 1.0 / (c + 1.0);
        const double a = eta.magnitude(k);
        if (theta < 1.0 && mag > kZeroMagnitude && a > 0.0) {
          scale = std::pow(mag / a, 1.0 - theta) * std::pow(scale, theta);
        }
        value1 = eta.comp1()[k] * scale;
        value2 = eta.comp2()[k] * scale;
      }
      next.comp1()[k] = value1;
      next.comp2()[k] = value2;
    }
    std::swap(w, next);
    ++sweeps;
    if (!w.all_finite()) throw NonFinite("L^p prox fixed point produced a non-finite value");
    if (options.tol > 0.0) {
      residual = lp_prox_residual(w, eta, kappa, p, options.quadrature);
      if (residual <= options.tol) return {std::move(w), residual, sweeps};
    }
  }
  residual = lp_prox_residual(w, eta, kappa, p, options.quadrature);
  return {std::move(w), residual, sweeps};
}

ProxResult lp_prox_fixed_point(const VectorField2D& eta, double kappa, double p, const FixedPointOptions& options) {
  return lp_prox_fixed_point(eta, kappa, p, eta, options);
}

double radial_root(double a, double s, double p) {
  if (a <= 0.0) return 0.0;
  if (s <= 0.0) return a;
  if (p == 2.0) return a / (1.0 + s);
  // f(r) = r + s r^{p-1} - a is increasing on [0, a] with f(0) < 0 <= f(hi).
  double lo = 0.0;
  double hi = std::min(a, std::pow(a / s, 1.0 / (p - 1.0)));
  double r = hi;
  for (int it = 0; it < 200; ++it) {
    const double rp = std::pow(r, p - 2.0);
    const double f = r + s * rp * r - a;
    if (f > 0.0) {
      hi = r;
    } else {
      lo = r;
    }
    const double df = 1.0 + s * (p - 1.0) * rp;
    double next = r - f / df;
    if (!(next > lo && next < hi) || !std::isfinite(next)) next = 0.5 * (lo + hi);
    if (std::abs(next - r) <= 4.0 * std::numeric_limits<double>::epsilon() * hi || hi - lo <= 1e-300) {
      return next;
    }
    r = next;
  }
  return r;
}

ProxResult lp_prox_exact(const VectorField2D& eta, double kappa, double p, bool quadrature) {
  require_kappa(kappa);
  require_p(p);
  const double q = conjugate_exponent(p);
  const double weight = eta.cell_weight(quadrature);
  const std::size_t count = eta.size();
  std::vector<double> mags(count);
  for (std::size_t k = 0; k < count; ++k) mags[k] = eta.magnitude(k);

  const double eta_dual = dual_norm(eta, q, weight);
  if (eta_dual <= kappa) return {VectorField2D(eta.comp1()), 0.0, 0};

  std::vector<double> radius(count);
  auto solve_radii = [&](double s) {
    for (std::size_t k = 0; k < count; ++k) radius[k] = radial_root(mags[k], s, p);
  };
  // G(s) = || |eta| - r(s) ||_q is increasing from 0 to ||eta||_q; find
  // G(s) = kappa, equivalently s ||w||_p^{p-1} = kappa.
  auto gap = [&](double log_s) {
    solve_radii(std::exp(log_s));
    double scale = 0.0;
    for (std::size_t k = 0; k < count; ++k) scale = std::max(scale, mags[k] - radius[k]);
    if (scale == 0.0) return -std::numeric_limits<double>::infinity();
    double sum = 0.0;
    for (std::size_t k = 0; k < count; ++k) sum += std::pow((mags[k] - radius[k]) / scale, q);
    return std::log(scale) + std::log(sum * weight) / q - std::log(kappa);
  };

  double lo = 0.0;
  double hi = 0.0;
  double g_lo = gap(lo);
  double g_hi = g_lo;
  if (g_lo < 0.0) {
    hi = 1.0;
    while ((g_hi = gap(hi)) < 0.0) hi += 2.0;
  } else {
    lo = -1.0;
    while ((g_lo = gap(lo)) > 0.0) lo -= 2.0;
    hi = 0.0;
  }
  // Illinois variant of regula falsi on log s.
  int side = 0;
  double x = lo;
  for (int it = 0; it < 200; ++it) {
    x = std::isfinite(g_lo) ? (lo * g_hi - hi * g_lo) / (g_hi - g_lo) : 0.5 * (lo + hi);
    if (!(x > lo && x < hi)) x = 0.5 * (lo + hi);
    const double gx = gap(x);
    if (gx == 0.0 || hi - lo < 1e-15 * std::max(1.0, std::abs(x))) break;
    if (gx > 0.0) {
      hi = x;
      g_hi = gx;
      if (side == 1) g_lo *= 0.5;
      side = 1;
    } else {
      lo = x;
      g_lo = gx;
      if (side == -1) g_hi *= 0.5;
      side = -1;
    }
  }
  solve_radii(std::exp(x));
  VectorField2D w = radial_field(eta, radius);
  const double residual = lp_prox_residual(w, eta, kappa, p, quadrature);
  return {std::move(w), residual, 0};
}

VectorField2D phom_prox(const VectorField2D& eta, double kappa, double p) {
  require_kappa(kappa);
  require_p(p);
  if (p == 2.0) return phom_prox_p2(eta, kappa);
  std::vector<double> radius(eta.size());
  for (std::size_t k = 0; k < eta.size(); ++k) radius[k] = radial_root(eta.magnitude(k), kappa, p);
  return radial_field(eta, radius);
}

VectorField2D phom_prox_p2(const VectorField2D& eta, double kappa) {
  require_kappa(kappa);
  return (1.0 / (1.0 + kappa)) * eta;
}

void HuberParams::validate() const {
  if (!(alpha > 0.0) || !(beta > 0.0)) throw InvalidArgument("Huber parameters must be positive");
}

double huber_phi(double magnitude, const HuberParams& params) {
  const double x = std::abs(magnitude);
  if (x >= params.threshold()) return params.alpha * x - params.alpha * params.alpha / (2.0 * params.beta);
  return 0.5 * params.beta * x * x;
}

double huber_phi(double x1, double x2, const HuberParams& params) { return huber_phi(std::hypot(x1, x2), params); }

VectorField2D huber_w_star(const VectorField2D& grad_u, const HuberParams& params) {
  params.validate();
  VectorField2D w = grad_u;
  const double threshold = params.threshold();
  for (std::size_t k = 0; k < w.size(); ++k) {
    const double mag = grad_u.magnitude(k);
    if (mag >= threshold && mag > 0.0) {
      w.comp1()[k] = threshold * grad_u.comp1()[k] / mag;
      w.comp2()[k] = threshold * grad_u.comp2()[k] / mag;
    }
  }
  return w;
}

double huber_tv_value(const Image2D& u, const HuberParams& params, bool quadrature) {
  params.validate();
  const VectorField2D g = gradient(u);
  double sum = 0.0;
  for (std::size_t k = 0; k < g.size(); ++k) sum += huber_phi(g.magnitude(k), params);
  return sum * u.cell_weight(quadrature);
}

}  // namespace tvlp

#include "tvlp/operators.hpp"

#include <algorithm>
#include <cmath>

#include "tvlp/error.hpp"

namespace tvlp {

VectorField2D gradient(const Image2D& u) {
  const std::size_t n = u.rows();
  const std::size_t m = u.cols();
  const double inv_t = 1.0 / u.spacing();
  VectorField2D g(u);
  Image2D& g1 = g.comp1();
  Image2D& g2 = g.comp2();
  for (std::size_t i = 0; i + 1 < n; ++i) {
    for (std::size_t j = 0; j < m; ++j) g1(i, j) = (u(i + 1, j) - u(i, j)) * inv_t;
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j + 1 < m; ++j) g2(i, j) = (u(i, j + 1) - u(i, j)) * inv_t;
  }
  return g;
}

Image2D divergence(const VectorField2D& w) {
  const std::size_t n = w.rows();
  const std::size_t m = w.cols();
  const double inv_t = 1.0 / w.spacing();
  const Image2D& w1 = w.comp1();
  const Image2D& w2 = w.comp2();
  Image2D d(n, m, w.spacing());
  // Entries of w that the gradient never populates (last row of comp1, last
  // column of comp2) do not contribute; that is what makes this the adjoint.
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      const double a1 = (i + 1 < n ? w1(i, j) : 0.0) - (i > 0 ? w1(i - 1, j) : 0.0);
      const double a2 = (j + 1 < m ? w2(i, j) : 0.0) - (j > 0 ? w2(i, j - 1) : 0.0);
      d(i, j) = (a1 + a2) * inv_t;
    }
  }
  return d;
}

Image2D laplacian(const Image2D& u) { return divergence(gradient(u)); }

double inner(const Image2D& a, const Image2D& b) {
  if (!a.same_shape(b)) throw InvalidArgument("inner product of differently shaped images");
  double s = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) s += a[k] * b[k];
  return s;
}

double inner(const VectorField2D& a, const VectorField2D& b) {
  return inner(a.comp1(), b.comp1()) + inner(a.comp2(), b.comp2());
}

double field_lp_norm(const VectorField2D& w, double p, bool quadrature) {
  if (!(p >= 1.0) || !std::isfinite(p)) throw InvalidArgument("field norm exponent must be finite and >= 1");
  double scale = 0.0;
  for (std::size_t k = 0; k < w.size(); ++k) scale = std::max(scale, w.magnitude(k));
  if (scale == 0.0) return 0.0;
  double sum = 0.0;
  if (p == 1.0) {
    for (std::size_t k = 0; k < w.size(); ++k) sum += w.magnitude(k);
    return sum * w.cell_weight(quadrature);
  }
  for (std::size_t k = 0; k < w.size(); ++k) sum += std::pow(w.magnitude(k) / scale, p);
  return scale * std::pow(sum * w.cell_weight(quadrature), 1.0 / p);
}

double tv_value(const Image2D& u, bool quadrature) { return field_lp_norm(gradient(u), 1.0, quadrature); }

}  // namespace tvlp

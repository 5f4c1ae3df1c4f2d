#include "tvlp/grid.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>
#include <string>

#include "tvlp/error.hpp"

namespace tvlp {

Image2D::Image2D(std::size_t rows, std::size_t cols, double spacing)
    : rows_(rows), cols_(cols), spacing_(spacing), values_(rows * cols, 0.0) {
  validate();
}

Image2D::Image2D(std::size_t rows, std::size_t cols, std::vector<double> values, double spacing)
    : rows_(rows), cols_(cols), spacing_(spacing), values_(std::move(values)) {
  validate();
  if (!all_finite()) throw InvalidArgument("image contains non-finite values");
}

Image2D Image2D::signal(std::vector<double> values, double spacing) {
  const std::size_t n = values.size();
  return Image2D(n, 1, std::move(values), spacing);
}

Image2D Image2D::constant(std::size_t rows, std::size_t cols, double value, double spacing) {
  return Image2D(rows, cols, std::vector<double>(rows * cols, value), spacing);
}

void Image2D::validate() const {
  if (rows_ < 2 || cols_ < 1) {
    throw InvalidArgument("image needs at least 2 rows and 1 column, got " + std::to_string(rows_) +
                          "x" + std::to_string(cols_));
  }
  if (values_.size() != rows_ * cols_) throw InvalidArgument("value count does not match shape");
  if (!(spacing_ > 0.0) || !std::isfinite(spacing_)) throw InvalidArgument("spacing must be positive");
}

double Image2D::cell_weight(bool quadrature) const noexcept {
  if (!quadrature) return 1.0;
  return dimension() == 1 ? spacing_ : spacing_ * spacing_;
}

bool Image2D::all_finite() const noexcept {
  return std::all_of(values_.begin(), values_.end(), [](double v) { return std::isfinite(v); });
}

namespace {

void require_same_shape(const Image2D& a, const Image2D& b) {
  if (!a.same_shape(b)) throw InvalidArgument("image shapes differ");
}

template <typename Op>
Image2D zip(const Image2D& a, const Image2D& b, Op op) {
  require_same_shape(a, b);
  Image2D out(a.rows(), a.cols(), a.spacing());
  for (std::size_t k = 0; k < a.size(); ++k) out[k] = op(a[k], b[k]);
  return out;
}

}  // namespace

Image2D operator+(const Image2D& a, const Image2D& b) { return zip(a, b, std::plus<>{}); }
Image2D operator-(const Image2D& a, const Image2D& b) { return zip(a, b, std::minus<>{}); }

Image2D operator*(double s, const Image2D& a) {
  Image2D out(a.rows(), a.cols(), a.spacing());
  for (std::size_t k = 0; k < a.size(); ++k) out[k] = s * a[k];
  return out;
}

Image2D operator+(const Image2D& a, double c) {
  Image2D out(a.rows(), a.cols(), a.spacing());
  for (std::size_t k = 0; k < a.size(); ++k) out[k] = a[k] + c;
  return out;
}

VectorField2D::VectorField2D(const Image2D& like)
    : comp1_(like.rows(), like.cols(), like.spacing()), comp2_(like.rows(), like.cols(), like.spacing()) {}

VectorField2D::VectorField2D(std::size_t rows, std::size_t cols, double spacing)
    : comp1_(rows, cols, spacing), comp2_(rows, cols, spacing) {}

VectorField2D::VectorField2D(Image2D comp1, Image2D comp2) : comp1_(std::move(comp1)), comp2_(std::move(comp2)) {
  require_same_shape(comp1_, comp2_);
  if (comp1_.spacing() != comp2_.spacing()) throw InvalidArgument("field components disagree on spacing");
}

double VectorField2D::magnitude(std::size_t k) const noexcept { return std::hypot(comp1_[k], comp2_[k]); }

VectorField2D operator+(const VectorField2D& a, const VectorField2D& b) {
  return {a.comp1() + b.comp1(), a.comp2() + b.comp2()};
}
VectorField2D operator-(const VectorField2D& a, const VectorField2D& b) {
  return {a.comp1() - b.comp1(), a.comp2() - b.comp2()};
}
VectorField2D operator*(double s, const VectorField2D& a) { return {s * a.comp1(), s * a.comp2()}; }

Grid1D::Grid1D(std::vector<double> values, double spacing, double origin)
    : values_(std::move(values)), spacing_(spacing), origin_(origin) {
  if (values_.size() < 2) throw InvalidArgument("1D grid needs at least 2 samples");
  if (!(spacing_ > 0.0) || !std::isfinite(spacing_)) throw InvalidArgument("spacing must be positive");
  if (!std::all_of(values_.begin(), values_.end(), [](double v) { return std::isfinite(v); })) {
    throw InvalidArgument("grid contains non-finite values");
  }
}

Grid1D Grid1D::on_interval(std::vector<double> values, double a, double b) {
  if (!(b > a)) throw InvalidArgument("interval must have b > a");
  const double t = (b - a) / static_cast<double>(values.size());
  return Grid1D(std::move(values), t, a);
}

Grid1D Grid1D::from_image(const Image2D& image, double origin) {
  if (image.cols() != 1) throw InvalidArgument("expected a single-column image");
  return Grid1D(image.vector(), image.spacing(), origin);
}

double SolveParams::q() const { return conjugate_exponent(p); }

void SolveParams::validate() const {
  if (!(alpha > 0.0) || !std::isfinite(alpha)) throw InvalidArgument("alpha must be positive");
  if (!(beta > 0.0) || !std::isfinite(beta)) throw InvalidArgument("beta must be positive");
  if (!(p > 1.0) || !std::isfinite(p)) throw InvalidArgument("p must lie in (1, inf)");
  if (lambda && (!(*lambda > 0.0) || !std::isfinite(*lambda))) throw InvalidArgument("lambda must be positive");
  if (!(tol > 0.0)) throw InvalidArgument("tol must be positive");
  if (max_outer < 1) throw InvalidArgument("max_outer must be positive");
  if (inner_fp_iters < 1) throw InvalidArgument("inner_fp_iters must be positive");
}

bool SolveParams::quadrature_for(const Image2D& image) const noexcept {
  switch (norm) {
    case NormConvention::Quadrature: return true;
    case NormConvention::Discrete: return false;
    case NormConvention::Auto: break;
  }
  return image.dimension() == 1;
}

double SolveParams::resolved_lambda(const Image2D& image) const {
  return lambda ? *lambda : heuristic_lambda(alpha, p, image.spacing());
}

double heuristic_lambda(double alpha, double p, double spacing) {
  return (p < 4.0 ? 10.0 : 1000.0) * alpha * spacing;
}

double conjugate_exponent(double p) {
  if (std::isnan(p) || p <= 1.0) throw InvalidArgument("conjugate exponent requires p > 1");
  if (std::isinf(p)) return 1.0;
  return p / (p - 1.0);
}

double weighted_lp_norm(const Image2D& g, double p, bool quadrature) {
  if (!(p >= 1.0) || !std::isfinite(p)) throw InvalidArgument("norm exponent must be finite and >= 1");
  // Scale by the largest entry so that large p cannot overflow.
  double scale = 0.0;
  for (double v : g.values()) scale = std::max(scale, std::abs(v));
  if (scale == 0.0) return 0.0;
  double sum = 0.0;
  for (double v : g.values()) sum += std::pow(std::abs(v) / scale, p);
  return scale * std::pow(sum * g.cell_weight(quadrature), 1.0 / p);
}

double mean_value(const Image2D& f) {
  if (f.empty()) throw InvalidArgument("mean of empty image");
  return std::accumulate(f.values().begin(), f.values().end(), 0.0) / static_cast<double>(f.size());
}

}  // namespace tvlp

#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

namespace tvlp {

/// Sampled real-valued image on a uniform grid, stored row-major.
///
/// A single column (cols == 1) is a 1D signal; every operator in the library
/// treats it as the degenerate m = 1 image rather than taking a separate
/// code path. The spacing t enters the finite differences and, in
/// quadrature mode, the norms (weight t^d with d the dimension).
class Image2D {
 public:
  Image2D() = default;
  /// Zero image.
  Image2D(std::size_t rows, std::size_t cols, double spacing = 1.0);
  Image2D(std::size_t rows, std::size_t cols, std::vector<double> values, double spacing = 1.0);

  static Image2D signal(std::vector<double> values, double spacing = 1.0);
  static Image2D constant(std::size_t rows, std::size_t cols, double value, double spacing = 1.0);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  std::size_t size() const noexcept { return values_.size(); }
  double spacing() const noexcept { return spacing_; }
  bool empty() const noexcept { return values_.empty(); }
  int dimension() const noexcept { return cols_ == 1 ? 1 : 2; }

  double operator()(std::size_t i, std::size_t j) const { return values_[i * cols_ + j]; }
  double& operator()(std::size_t i, std::size_t j) { return values_[i * cols_ + j]; }
  double operator[](std::size_t k) const { return values_[k]; }
  double& operator[](std::size_t k) { return values_[k]; }

  std::span<const double> values() const noexcept { return values_; }
  std::span<double> values() noexcept { return values_; }
  const std::vector<double>& vector() const noexcept { return values_; }

  bool same_shape(const Image2D& other) const noexcept {
    return rows_ == other.rows_ && cols_ == other.cols_;
  }

  /// t^d in quadrature mode, 1 otherwise.
  double cell_weight(bool quadrature) const noexcept;

  bool all_finite() const noexcept;

 private:
  void validate() const;

  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  double spacing_ = 1.0;
  std::vector<double> values_;
};

Image2D operator+(const Image2D& a, const Image2D& b);
Image2D operator-(const Image2D& a, const Image2D& b);
Image2D operator*(double s, const Image2D& a);
Image2D operator+(const Image2D& a, double c);

/// Two-component field per pixel (gradients, auxiliary w, z, b).
class VectorField2D {
 public:
  VectorField2D() = default;
  /// Zero field shaped like `like`.
  explicit VectorField2D(const Image2D& like);
  VectorField2D(std::size_t rows, std::size_t cols, double spacing = 1.0);
  VectorField2D(Image2D comp1, Image2D comp2);

  std::size_t rows() const noexcept { return comp1_.rows(); }
  std::size_t cols() const noexcept { return comp1_.cols(); }
  std::size_t size() const noexcept { return comp1_.size(); }
  double spacing() const noexcept { return comp1_.spacing(); }
  int dimension() const noexcept { return comp1_.dimension(); }

  const Image2D& comp1() const noexcept { return comp1_; }
  const Image2D& comp2() const noexcept { return comp2_; }
  Image2D& comp1() noexcept { return comp1_; }
  Image2D& comp2() noexcept { return comp2_; }

  /// Euclidean magnitude at flat index k.
  double magnitude(std::size_t k) const noexcept;

  bool same_shape(const Image2D& image) const noexcept { return comp1_.same_shape(image); }
  bool same_shape(const VectorField2D& other) const noexcept { return comp1_.same_shape(other.comp1_); }
  double cell_weight(bool quadrature) const noexcept { return comp1_.cell_weight(quadrature); }
  bool all_finite() const noexcept { return comp1_.all_finite() && comp2_.all_finite(); }

 private:
  Image2D comp1_;
  Image2D comp2_;
};

VectorField2D operator+(const VectorField2D& a, const VectorField2D& b);
VectorField2D operator-(const VectorField2D& a, const VectorField2D& b);
VectorField2D operator*(double s, const VectorField2D& a);

/// 1D signal with a physical origin: sample i sits at the cell centre
/// origin + (i + 1/2) t.
class Grid1D {
 public:
  Grid1D(std::vector<double> values, double spacing, double origin = 0.0);

  /// Uniform cell-centred sampling of (a, b) with n points, spacing (b - a) / n.
  static Grid1D on_interval(std::vector<double> values, double a, double b);

  std::size_t size() const noexcept { return values_.size(); }
  double spacing() const noexcept { return spacing_; }
  double origin() const noexcept { return origin_; }
  double x(std::size_t i) const noexcept { return origin_ + (static_cast<double>(i) + 0.5) * spacing_; }
  double operator[](std::size_t i) const { return values_[i]; }
  std::span<const double> values() const noexcept { return values_; }

  Image2D to_image() const { return Image2D::signal(values_, spacing_); }
  static Grid1D from_image(const Image2D& image, double origin = 0.0);

 private:
  std::vector<double> values_;
  double spacing_;
  double origin_;
};

enum class Homogeneity {
  OneHomogeneous,  // beta * ||w||_p
  PHomogeneous,    // (beta / p) * ||w||_p^p
};

/// Which convention the norms use. Auto resolves to quadrature for 1D
/// signals and plain sums for 2D images.
enum class NormConvention { Auto, Quadrature, Discrete };

/// How the split Bregman w-subproblem is solved.
enum class WUpdate {
  FixedPoint,  // sweeps of the multiplicative fixed-point map
  Exact,       // radial root finding plus a scalar search on the norm
};

struct SolveParams {
  double alpha = 1.0;
  double beta = 1.0;
  double p = 2.0;
  /// Penalty parameter; the heuristic is used when unset.
  std::optional<double> lambda;
  Homogeneity mode = Homogeneity::OneHomogeneous;
  double tol = 1e-6;
  int max_outer = 5000;
  int inner_fp_iters = 5;
  NormConvention norm = NormConvention::Auto;
  WUpdate w_update = WUpdate::FixedPoint;

  double q() const;
  void validate() const;
  bool quadrature_for(const Image2D& image) const noexcept;
  /// Explicit lambda if set, otherwise the heuristic for this grid.
  double resolved_lambda(const Image2D& image) const;
};

/// Default penalty: 10 alpha t for p < 4 and 1000 alpha t for p >= 4. The
/// factor t keeps the ratio of penalty to regularisation weight invariant
/// under refinement of the grid; on unit-spaced images it is the plain
/// 10 alpha / 1000 alpha rule.
double heuristic_lambda(double alpha, double p, double spacing);

/// Hoelder conjugate p/(p-1); infinity maps to 1. Throws for p <= 1.
double conjugate_exponent(double p);

/// (sum |g|^p w)^(1/p) with w = t^d in quadrature mode and 1 otherwise.
double weighted_lp_norm(const Image2D& g, double p, bool quadrature);

double mean_value(const Image2D& f);

}  // namespace tvlp

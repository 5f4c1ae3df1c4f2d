#include "tvlp/phantom.hpp"

#include <cmath>
#include <numbers>

#include "tvlp/error.hpp"

namespace tvlp {

namespace {

class XorShift64Star {
 public:
  explicit XorShift64Star(std::uint64_t seed) {
    // splitmix64 scrambles small seeds and never yields the zero state here.
    std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    state_ = z ^ (z >> 31);
    if (state_ == 0) state_ = 0x9E3779B97F4A7C15ULL;
  }

  std::uint64_t next() {
    state_ ^= state_ >> 12;
    state_ ^= state_ << 25;
    state_ ^= state_ >> 27;
    return state_ * 0x2545F4914F6CDD1DULL;
  }

  // Uniform in (0, 1].
  double uniform_open0() { return (static_cast<double>(next() >> 11) + 1.0) * 0x1.0p-53; }

 private:
  std::uint64_t state_;
};

double ramp_square(double x, double y) {
  if (x >= 0.4 && x <= 0.6 && y >= 0.4 && y <= 0.6) return 0.75;
  if (x >= 0.2 && x <= 0.8 && y >= 0.2 && y <= 0.8) return 0.9 - 0.5 * (y - 0.2) / 0.6;
  return 0.1 + 0.2 * x;
}

double radial_spike(double x, double y) {
  const double r = std::hypot(x - 0.5, y - 0.5);
  if (r <= 0.35) return 0.3 + 0.6 * (1.0 - r / 0.35);
  return 0.1;
}

}  // namespace

const char* to_string(PhantomKind kind) noexcept {
  switch (kind) {
    case PhantomKind::Step1D:
      return "step1d";
    case PhantomKind::AffineStep1D:
      return "affine-step1d";
    case PhantomKind::PiecewiseMix1D:
      return "piecewise-mix1d";
    case PhantomKind::RampSquare2D:
      return "ramp-square2d";
    case PhantomKind::RadialSpike2D:
      return "radial-spike2d";
  }
  return "unknown";
}

PhantomKind phantom_kind_from_string(const std::string& name) {
  for (PhantomKind kind : {PhantomKind::Step1D, PhantomKind::AffineStep1D, PhantomKind::PiecewiseMix1D,
                           PhantomKind::RampSquare2D, PhantomKind::RadialSpike2D}) {
    if (name == to_string(kind)) return kind;
  }
  throw InvalidArgument("unknown phantom kind '" + name + "'");
}

bool PhantomSpec::is_1d() const noexcept {
  return kind == PhantomKind::Step1D || kind == PhantomKind::AffineStep1D || kind == PhantomKind::PiecewiseMix1D;
}

void PhantomSpec::validate() const {
  if (is_1d()) {
    if (n < 2) throw InvalidArgument("1D phantoms need n >= 2");
    if (!(L > 0.0) || !std::isfinite(L)) throw InvalidArgument("L must be positive");
    if (!std::isfinite(h) || !std::isfinite(ramp_slope)) throw InvalidArgument("phantom parameters must be finite");
  } else {
    if (size < 2 || (cols != 0 && cols < 2)) throw InvalidArgument("2D phantoms need at least 2x2 pixels");
    if (!(lo < hi) || !std::isfinite(lo) || !std::isfinite(hi)) throw InvalidArgument("intensity range needs lo < hi");
  }
}

double phantom_value_1d(const PhantomSpec& spec, double x) {
  const double s = x / spec.L;  // in (-1, 1)
  switch (spec.kind) {
    case PhantomKind::Step1D:
      return x > 0.0 ? spec.h : 0.0;
    case PhantomKind::AffineStep1D:
      return spec.ramp_slope * x + (x > 0.0 ? spec.h : 0.0);
    case PhantomKind::PiecewiseMix1D:
      // constant | affine | quadratic | constant, with jumps in between
      if (s <= -0.5) return 0.2 * spec.h;
      if (s <= 0.0) return spec.h * (0.5 + 0.6 * (s + 0.5));
      if (s <= 0.5) return spec.h * (0.1 + 2.4 * s * s);
      return 0.4 * spec.h;
    default:
      throw InvalidArgument("not a 1D phantom");
  }
}

Grid1D generate_signal(const PhantomSpec& spec) {
  spec.validate();
  if (!spec.is_1d()) throw InvalidArgument("generate_signal expects a 1D phantom");
  const double t = 2.0 * spec.L / static_cast<double>(spec.n);
  std::vector<double> values(spec.n);
  for (std::size_t i = 0; i < spec.n; ++i) {
    values[i] = phantom_value_1d(spec, -spec.L + (static_cast<double>(i) + 0.5) * t);
  }
  return Grid1D(std::move(values), t, -spec.L);
}

Image2D generate(const PhantomSpec& spec) {
  spec.validate();
  if (spec.is_1d()) return generate_signal(spec).to_image();
  const std::size_t rows = spec.size;
  const std::size_t cols = spec.cols == 0 ? spec.size : spec.cols;
  Image2D out(rows, cols, 1.0);
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < cols; ++j) {
      const double y = static_cast<double>(i) / static_cast<double>(rows - 1);
      const double x = static_cast<double>(j) / static_cast<double>(cols - 1);
      const double v = spec.kind == PhantomKind::RampSquare2D ? ramp_square(x, y) : radial_spike(x, y);
      out(i, j) = spec.lo + (spec.hi - spec.lo) * v;
    }
  }
  return out;
}

Image2D add_gaussian_noise(const Image2D& u, const NoiseSpec& spec) {
  if (!(spec.variance >= 0.0) || !std::isfinite(spec.variance)) throw InvalidArgument("noise variance must be >= 0");
  Image2D out = u;
  if (spec.variance == 0.0) return out;
  const double sigma = std::sqrt(spec.variance);
  XorShift64Star rng(spec.seed);
  std::size_t k = 0;
  while (k < out.size()) {
    const double radius = std::sqrt(-2.0 * std::log(rng.uniform_open0()));
    const double angle = 2.0 * std::numbers::pi * rng.uniform_open0();
    out[k++] += sigma * radius * std::cos(angle);
    if (k < out.size()) out[k++] += sigma * radius * std::sin(angle);
  }
  return out;
}

}  // namespace tvlp

#pragma once

#include <cstdint>
#include <string>

#include "tvlp/grid.hpp"

namespace tvlp {

enum class PhantomKind { Step1D, AffineStep1D, PiecewiseMix1D, RampSquare2D, RadialSpike2D };

const char* to_string(PhantomKind kind) noexcept;
/// Accepts the names printed by to_string ("step1d", "ramp-square2d", ...).
PhantomKind phantom_kind_from_string(const std::string& name);

struct PhantomSpec {
  PhantomKind kind = PhantomKind::Step1D;
  // 1D: cell-centred samples of (-L, L), spacing 2L / n.
  double h = 100.0;
  double L = 1.0;
  std::size_t n = 2000;
  double ramp_slope = 0.1;
  // 2D: rows x cols pixels with unit spacing; cols = 0 means square.
  std::size_t size = 200;
  std::size_t cols = 0;
  double lo = 0.0;
  double hi = 1.0;

  bool is_1d() const noexcept;
  void validate() const;
};

/// Value of a 1D phantom at x in (-L, L).
double phantom_value_1d(const PhantomSpec& spec, double x);

Image2D generate(const PhantomSpec& spec);

/// 1D phantoms with their physical origin -L.
Grid1D generate_signal(const PhantomSpec& spec);

struct NoiseSpec {
  double variance = 0.01;
  std::uint64_t seed = 42;
};

/// u + sigma N(0, 1), sigma = sqrt(variance). The normals come from an
/// xorshift64* stream seeded through splitmix64 and Box-Muller pairs,
/// consumed in row-major order, so the output is bit-reproducible per seed.
Image2D add_gaussian_noise(const Image2D& u, const NoiseSpec& spec);

}  // namespace tvlp

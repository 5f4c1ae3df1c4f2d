#pragma once

#include <optional>
#include <vector>

#include "tvlp/solver.hpp"

namespace tvlp {

struct BregmanTrace {
  /// Accumulated residual after the last iteration, sum_j (f - u^j).
  Image2D residual_accumulator;
  std::vector<SolveReport> reports;
  /// Per-iterate metrics, filled only when a reference was given.
  std::vector<double> psnr;
  std::vector<double> ssim;
};

struct BregmanResult {
  std::vector<Image2D> iterates;
  BregmanTrace trace;

  /// Index of the iterate with the highest SSIM (PSNR for images too small
  /// for SSIM). Throws when no reference metrics were recorded.
  std::size_t best_by_ssim() const;
  std::size_t best_by_psnr() const;
};

struct BregmanOptions {
  double peak = 1.0;  // PSNR peak and SSIM dynamic range
};

/// Contrast-enhancing outer loop: u^{k+1} = denoise(f + v^k),
/// v^{k+1} = v^k + f - u^{k+1}, v^0 = 0.
BregmanResult bregmanized_denoise(const Image2D& f, const SolveParams& params, int outer_k,
                                  const std::optional<Image2D>& reference = std::nullopt,
                                  const BregmanOptions& options = {});

}  // namespace tvlp

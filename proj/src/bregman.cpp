#include "tvlp/bregman.hpp"

#include <algorithm>

#include "tvlp/error.hpp"
#include "tvlp/metrics.hpp"

namespace tvlp {

namespace {

std::size_t argmax(const std::vector<double>& values) {
  if (values.empty()) throw InvalidArgument("no metrics recorded; pass a reference image");
  return static_cast<std::size_t>(std::max_element(values.begin(), values.end()) - values.begin());
}

}  // namespace

std::size_t BregmanResult::best_by_ssim() const {
  return trace.ssim.empty() ? argmax(trace.psnr) : argmax(trace.ssim);
}

std::size_t BregmanResult::best_by_psnr() const { return argmax(trace.psnr); }

BregmanResult bregmanized_denoise(const Image2D& f, const SolveParams& params, int outer_k,
                                  const std::optional<Image2D>& reference, const BregmanOptions& options) {
  if (outer_k < 1) throw InvalidArgument("Bregman iteration needs at least one outer step");
  if (reference && !reference->same_shape(f)) throw InvalidArgument("reference shape differs from data");
  params.validate();
  const bool with_ssim = reference && f.rows() >= 11 && f.cols() >= 11;

  BregmanResult result;
  Image2D accumulated(f.rows(), f.cols(), f.spacing());
  for (int k = 0; k < outer_k; ++k) {
    DenoiseResult step = denoise(f + accumulated, params);
    for (std::size_t i = 0; i < f.size(); ++i) accumulated[i] += f[i] - step.u[i];
    if (reference) {
      result.trace.psnr.push_back(psnr(step.u, *reference, options.peak));
      if (with_ssim) result.trace.ssim.push_back(ssim(step.u, *reference, options.peak));
    }
    result.trace.reports.push_back(std::move(step.report));
    result.iterates.push_back(std::move(step.u));
  }
  result.trace.residual_accumulator = std::move(accumulated);
  return result;
}

}  // namespace tvlp

#pragma once

#include "tvlp/grid.hpp"

namespace tvlp {

/// 10 log10(peak^2 / MSE) in dB; +infinity when the images are identical.
double psnr(const Image2D& u, const Image2D& reference, double peak = 1.0);

/// Mean SSIM over all positions of an 11x11 Gaussian window (sigma 1.5)
/// that fit inside the image, with C1 = (0.01 R)^2 and C2 = (0.03 R)^2.
/// Throws for images smaller than the window or 1D signals.
double ssim(const Image2D& u, const Image2D& reference, double dynamic_range = 1.0);

}  // namespace tvlp

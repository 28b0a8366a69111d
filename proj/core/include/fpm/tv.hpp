#pragma once

#include "fpm/field.hpp"

namespace fpm {

/// Smoothing added inside the root when eta <= 1.
inline constexpr double kTvSmoothing = 1e-8;

/// Isotropic total variation sum_p (dx_p^2 + dy_p^2 [+ eps])^(eta/2) with
/// forward differences and replicate boundary (differences leaving the grid
/// are 0). When smoothing is active, eps^(eta/2) is subtracted per pixel so a
/// constant image has TV exactly 0.
double tv_value(const RealGrid& img, double eta);

/// Exact gradient of tv_value with respect to every pixel.
RealGrid tv_grad(const RealGrid& img, double eta);

}  // namespace fpm

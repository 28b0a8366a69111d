#pragma once

#include <span>

#include "fpm/recon.hpp"

namespace fpm {

struct AdamHyper {
  double lr = 1e-3;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double eps = 1e-8;
};

/// Bias-corrected Adam update of every real scalar in `params`. Increments
/// `moments.step` first, so the first call uses t = 1. Complex parameters are
/// passed as interleaved (re, im) scalars.
void adam_step(std::span<double> params, std::span<const double> grads, AdamMoments& moments,
               const AdamHyper& hyper);

/// Interleaved real view of a complex grid.
inline std::span<double> real_view(ComplexGrid& g) {
  return {reinterpret_cast<double*>(g.data()), 2 * g.size()};
}
inline std::span<const double> real_view(const ComplexGrid& g) {
  return {reinterpret_cast<const double*>(g.data()), 2 * g.size()};
}

}  // namespace fpm

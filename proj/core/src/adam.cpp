#include "fpm/adam.hpp"

#include <cmath>

namespace fpm {

void adam_step(std::span<double> params, std::span<const double> grads, AdamMoments& moments,
               const AdamHyper& hyper) {
  if (grads.size() != params.size()) throw DimensionMismatch("adam: gradient size differs");
  if (moments.m.size() != params.size()) moments.m.assign(params.size(), 0.0);
  if (moments.v.size() != params.size()) moments.v.assign(params.size(), 0.0);

  ++moments.step;
  const double t = static_cast<double>(moments.step);
  const double bc1 = 1.0 - std::pow(hyper.beta1, t);
  const double bc2 = 1.0 - std::pow(hyper.beta2, t);
  for (std::size_t i = 0; i < params.size(); ++i) {
    const double g = grads[i];
    double& m = moments.m[i];
    double& v = moments.v[i];
    m = hyper.beta1 * m + (1.0 - hyper.beta1) * g;
    v = hyper.beta2 * v + (1.0 - hyper.beta2) * g * g;
    if (m == 0.0) continue;
    params[i] -= hyper.lr * (m / bc1) / (std::sqrt(v / bc2) + hyper.eps);
  }
}

}  // namespace fpm

#include "fpm/tv.hpp"

#include <cmath>

namespace fpm {
namespace {

void check_eta(double eta) {
  if (!(eta > 0.0)) throw InvalidConfig("TV exponent eta must be > 0");
}

double smoothing(double eta) { return eta <= 1.0 ? kTvSmoothing : 0.0; }

}  // namespace

double tv_value(const RealGrid& img, double eta) {
  check_eta(eta);
  const double eps = smoothing(eta);
  const double baseline = eps > 0.0 ? std::pow(eps, 0.5 * eta) : 0.0;
  const std::size_t rows = img.rows();
  const std::size_t cols = img.cols();
  double total = 0.0;
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) {
      const double dx = c + 1 < cols ? img(r, c + 1) - img(r, c) : 0.0;
      const double dy = r + 1 < rows ? img(r + 1, c) - img(r, c) : 0.0;
      const double s = dx * dx + dy * dy + eps;
      if (s > 0.0) total += std::pow(s, 0.5 * eta) - baseline;
    }
  }
  return total;
}

RealGrid tv_grad(const RealGrid& img, double eta) {
  check_eta(eta);
  const double eps = smoothing(eta);
  const std::size_t rows = img.rows();
  const std::size_t cols = img.cols();
  RealGrid grad(rows, cols);
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) {
      const double dx = c + 1 < cols ? img(r, c + 1) - img(r, c) : 0.0;
      const double dy = r + 1 < rows ? img(r + 1, c) - img(r, c) : 0.0;
      const double s = dx * dx + dy * dy + eps;
      if (s == 0.0) continue;
      // d/d(dx) of s^(eta/2) = eta * s^(eta/2 - 1) * dx
      const double w = eta * std::pow(s, 0.5 * eta - 1.0);
      grad(r, c) -= w * (dx + dy);
      if (c + 1 < cols) grad(r, c + 1) += w * dx;
      if (r + 1 < rows) grad(r + 1, c) += w * dy;
    }
  }
  return grad;
}

}  // namespace fpm

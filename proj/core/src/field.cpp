#include "fpm/field.hpp"

#include <cmath>
#include <string>

namespace fpm {
namespace {

// Cyclic roll by (dr, dc): out(r + dr, c + dc) = in(r, c).
template <typename T>
Grid<T> roll(const Grid<T>& g, std::size_t dr, std::size_t dc) {
  Grid<T> out(g.rows(), g.cols());
  for (std::size_t r = 0; r < g.rows(); ++r) {
    const std::size_t rr = (r + dr) % g.rows();
    for (std::size_t c = 0; c < g.cols(); ++c) out(rr, (c + dc) % g.cols()) = g(r, c);
  }
  return out;
}

}  // namespace

ComplexGrid center_shift(const ComplexGrid& g) { return roll(g, g.rows() / 2, g.cols() / 2); }
RealGrid center_shift(const RealGrid& g) { return roll(g, g.rows() / 2, g.cols() / 2); }

ComplexGrid inverse_center_shift(const ComplexGrid& g) {
  return roll(g, g.rows() - g.rows() / 2, g.cols() - g.cols() / 2);
}
RealGrid inverse_center_shift(const RealGrid& g) {
  return roll(g, g.rows() - g.rows() / 2, g.cols() - g.cols() / 2);
}

bool window_fits(std::size_t rows, std::size_t cols, GridIndex center, std::size_t out_rows,
                 std::size_t out_cols) {
  const auto r0 = center.row - static_cast<std::ptrdiff_t>(out_rows / 2);
  const auto c0 = center.col - static_cast<std::ptrdiff_t>(out_cols / 2);
  return r0 >= 0 && c0 >= 0 && r0 + static_cast<std::ptrdiff_t>(out_rows) <= static_cast<std::ptrdiff_t>(rows) &&
         c0 + static_cast<std::ptrdiff_t>(out_cols) <= static_cast<std::ptrdiff_t>(cols);
}

void check_window(std::size_t rows, std::size_t cols, GridIndex center, std::size_t out_rows,
                  std::size_t out_cols) {
  if (out_rows == 0 || out_cols == 0 || !window_fits(rows, cols, center, out_rows, out_cols)) {
    throw WindowOutOfBounds("window " + std::to_string(out_rows) + "x" + std::to_string(out_cols) +
                            " centred at (" + std::to_string(center.row) + "," +
                            std::to_string(center.col) + ") leaves the " + std::to_string(rows) +
                            "x" + std::to_string(cols) + " grid");
  }
}

ComplexGrid crop_window(const ComplexGrid& g, GridIndex center, std::size_t out_rows,
                        std::size_t out_cols) {
  check_window(g.rows(), g.cols(), center, out_rows, out_cols);
  const auto r0 = static_cast<std::size_t>(center.row - static_cast<std::ptrdiff_t>(out_rows / 2));
  const auto c0 = static_cast<std::size_t>(center.col - static_cast<std::ptrdiff_t>(out_cols / 2));
  ComplexGrid out(out_rows, out_cols);
  for (std::size_t r = 0; r < out_rows; ++r)
    for (std::size_t c = 0; c < out_cols; ++c) out(r, c) = g(r0 + r, c0 + c);
  return out;
}

void embed_window_into(ComplexGrid& dst, const ComplexGrid& patch, GridIndex center,
                       EmbedMode mode) {
  check_window(dst.rows(), dst.cols(), center, patch.rows(), patch.cols());
  const auto r0 = static_cast<std::size_t>(center.row - static_cast<std::ptrdiff_t>(patch.rows() / 2));
  const auto c0 = static_cast<std::size_t>(center.col - static_cast<std::ptrdiff_t>(patch.cols() / 2));
  for (std::size_t r = 0; r < patch.rows(); ++r) {
    for (std::size_t c = 0; c < patch.cols(); ++c) {
      if (mode == EmbedMode::replace)
        dst(r0 + r, c0 + c) = patch(r, c);
      else
        dst(r0 + r, c0 + c) += patch(r, c);
    }
  }
}

ComplexGrid embed_window(ComplexGrid dst, const ComplexGrid& patch, GridIndex center,
                         EmbedMode mode) {
  embed_window_into(dst, patch, center, mode);
  return dst;
}

ComplexGrid hadamard(const ComplexGrid& a, const ComplexGrid& b) {
  require_same_shape(a, b, "hadamard: operand shapes differ");
  ComplexGrid out(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] * b[i];
  return out;
}

RealGrid amplitude(const ComplexGrid& g) {
  RealGrid out(g.rows(), g.cols());
  for (std::size_t i = 0; i < g.size(); ++i) out[i] = std::abs(g[i]);
  return out;
}

RealGrid phase_angle(const ComplexGrid& g) {
  RealGrid out(g.rows(), g.cols());
  for (std::size_t i = 0; i < g.size(); ++i) out[i] = std::arg(g[i]);
  return out;
}

complex phase_unit(complex z) {
  const double a = std::abs(z);
  return a == 0.0 ? complex{1.0, 0.0} : z / a;
}

ComplexGrid phase_unit(const ComplexGrid& g) {
  ComplexGrid out(g.rows(), g.cols());
  for (std::size_t i = 0; i < g.size(); ++i) out[i] = phase_unit(g[i]);
  return out;
}

ComplexGrid to_complex(const RealGrid& g) {
  ComplexGrid out(g.rows(), g.cols());
  for (std::size_t i = 0; i < g.size(); ++i) out[i] = g[i];
  return out;
}

ComplexGrid polar_grid(const RealGrid& amp, const RealGrid& phase) {
  require_same_shape(amp, phase, "polar_grid: amplitude and phase shapes differ");
  ComplexGrid out(amp.rows(), amp.cols());
  for (std::size_t i = 0; i < amp.size(); ++i) out[i] = std::polar(amp[i], phase[i]);
  return out;
}

double sum_abs2(const ComplexGrid& g) {
  double s = 0.0;
  for (const auto& v : g) s += std::norm(v);
  return s;
}

double sum_sq(const RealGrid& g) {
  double s = 0.0;
  for (double v : g) s += v * v;
  return s;
}

bool all_finite(const ComplexGrid& g) {
  for (const auto& v : g)
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) return false;
  return true;
}

bool all_finite(const RealGrid& g) {
  for (double v : g)
    if (!std::isfinite(v)) return false;
  return true;
}

}  // namespace fpm

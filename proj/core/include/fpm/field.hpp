#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include "fpm/errors.hpp"

namespace fpm {

using complex = std::complex<double>;

/// Dense row-major 2-D grid. All spectra, pupils, fields and intensity
/// images in the library are stored in one of the two instantiations below.
template <typename T>
class Grid {
 public:
  using value_type = T;

  Grid() = default;
  Grid(std::size_t rows, std::size_t cols, T fill = T{})
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {
    if (rows == 0 || cols == 0) throw DimensionMismatch("grid dimensions must be positive");
  }
  Grid(std::size_t rows, std::size_t cols, std::vector<T> data)
      : rows_(rows), cols_(cols), data_(std::move(data)) {
    if (rows == 0 || cols == 0) throw DimensionMismatch("grid dimensions must be positive");
    if (data_.size() != rows * cols) throw DimensionMismatch("grid data length != rows*cols");
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::size_t size() const { return data_.size(); }
  bool empty() const { return data_.empty(); }

  T& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const T& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
  T& operator[](std::size_t i) { return data_[i]; }
  const T& operator[](std::size_t i) const { return data_[i]; }

  std::span<T> values() { return data_; }
  std::span<const T> values() const { return data_; }
  T* data() { return data_.data(); }
  const T* data() const { return data_.data(); }

  auto begin() { return data_.begin(); }
  auto end() { return data_.end(); }
  auto begin() const { return data_.begin(); }
  auto end() const { return data_.end(); }

  template <typename U>
  bool same_shape(const Grid<U>& other) const {
    return rows_ == other.rows() && cols_ == other.cols();
  }

  friend bool operator==(const Grid&, const Grid&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

using ComplexGrid = Grid<complex>;
using RealGrid = Grid<double>;

/// Location of a window centre in a DC-centred grid.
struct GridIndex {
  std::ptrdiff_t row = 0;
  std::ptrdiff_t col = 0;
  friend bool operator==(const GridIndex&, const GridIndex&) = default;
};

/// Index of the DC bin after center_shift: (floor(rows/2), floor(cols/2)).
template <typename T>
GridIndex dc_index(const Grid<T>& g) {
  return {static_cast<std::ptrdiff_t>(g.rows() / 2), static_cast<std::ptrdiff_t>(g.cols() / 2)};
}

// Spectral transforms. The forward transform is unnormalized; the inverse
// carries 1/(rows*cols).
ComplexGrid dft2(const ComplexGrid& g);
ComplexGrid idft2(const ComplexGrid& g);

ComplexGrid center_shift(const ComplexGrid& g);
ComplexGrid inverse_center_shift(const ComplexGrid& g);
RealGrid center_shift(const RealGrid& g);
RealGrid inverse_center_shift(const RealGrid& g);

/// Window of size S centred at c spans [c - floor(S/2), c - floor(S/2) + S)
/// on each axis. Windows never wrap; leaving the grid throws WindowOutOfBounds.
ComplexGrid crop_window(const ComplexGrid& g, GridIndex center, std::size_t out_rows,
                        std::size_t out_cols);

enum class EmbedMode { replace, add };

void embed_window_into(ComplexGrid& dst, const ComplexGrid& patch, GridIndex center,
                       EmbedMode mode = EmbedMode::replace);
ComplexGrid embed_window(ComplexGrid dst, const ComplexGrid& patch, GridIndex center,
                         EmbedMode mode = EmbedMode::replace);

/// Throws WindowOutOfBounds unless the window lies inside a rows x cols grid.
void check_window(std::size_t rows, std::size_t cols, GridIndex center, std::size_t out_rows,
                  std::size_t out_cols);
bool window_fits(std::size_t rows, std::size_t cols, GridIndex center, std::size_t out_rows,
                 std::size_t out_cols);

ComplexGrid hadamard(const ComplexGrid& a, const ComplexGrid& b);
RealGrid amplitude(const ComplexGrid& g);
/// Wrapped phase angle in (-pi, pi].
RealGrid phase_angle(const ComplexGrid& g);
/// g/|g| per element, with phase_unit(0) := 1.
ComplexGrid phase_unit(const ComplexGrid& g);
complex phase_unit(complex z);

ComplexGrid to_complex(const RealGrid& g);
ComplexGrid polar_grid(const RealGrid& amp, const RealGrid& phase);

double sum_abs2(const ComplexGrid& g);
double sum_sq(const RealGrid& g);

bool all_finite(const ComplexGrid& g);
bool all_finite(const RealGrid& g);

template <typename T>
void require_same_shape(const Grid<T>& a, const Grid<T>& b, const char* what) {
  if (!a.same_shape(b)) throw DimensionMismatch(what);
}

}  // namespace fpm

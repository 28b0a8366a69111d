#pragma once

#include "fpm/field.hpp"

namespace fpm {

struct Metrics {
  double rel_err_amp = 0.0;
  double rel_err_complex = 0.0;  // after global-phase alignment
  double psnr_amp = 0.0;         // +inf for an exact match
};

struct PhaseAlignment {
  ComplexGrid aligned;
  double phi = 0.0;
};

/// phi = arg(sum conj(x) ref) minimizes ||exp(i phi) x - ref||.
/// Throws DegenerateReference if ref is all zero.
PhaseAlignment global_phase_align(const ComplexGrid& x, const ComplexGrid& ref);

/// PSNR is computed on amplitudes divided by max|truth|.
Metrics metrics(const ComplexGrid& recon, const ComplexGrid& truth);

/// Keeps only the spectrum bins where `centered_mask` is nonzero.
ComplexGrid lowpass(const ComplexGrid& field, const RealGrid& centered_mask);

}  // namespace fpm

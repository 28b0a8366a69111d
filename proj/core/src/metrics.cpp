#include "fpm/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace fpm {

PhaseAlignment global_phase_align(const ComplexGrid& x, const ComplexGrid& ref) {
  require_same_shape(x, ref, "global_phase_align: shapes differ");
  if (sum_abs2(ref) == 0.0) throw DegenerateReference("reference field is all zero");
  complex overlap{};
  for (std::size_t i = 0; i < x.size(); ++i) overlap += std::conj(x[i]) * ref[i];
  PhaseAlignment out{x, std::arg(overlap)};
  const complex rot = std::polar(1.0, out.phi);
  for (auto& v : out.aligned) v *= rot;
  return out;
}

Metrics metrics(const ComplexGrid& recon, const ComplexGrid& truth) {
  const PhaseAlignment al = global_phase_align(recon, truth);
  double diff_c = 0.0;
  double diff_a = 0.0;
  double norm_c = 0.0;
  double peak = 0.0;
  for (std::size_t i = 0; i < truth.size(); ++i) {
    diff_c += std::norm(al.aligned[i] - truth[i]);
    const double at = std::abs(truth[i]);
    const double d = std::abs(recon[i]) - at;
    diff_a += d * d;
    norm_c += at * at;
    peak = std::max(peak, at);
  }
  Metrics m;
  m.rel_err_complex = std::sqrt(diff_c / norm_c);
  m.rel_err_amp = std::sqrt(diff_a / norm_c);
  const double mse = diff_a / static_cast<double>(truth.size()) / (peak * peak);
  m.psnr_amp = mse == 0.0 ? std::numeric_limits<double>::infinity() : -10.0 * std::log10(mse);
  return m;
}

ComplexGrid lowpass(const ComplexGrid& field, const RealGrid& centered_mask) {
  if (!field.same_shape(centered_mask)) throw DimensionMismatch("lowpass: mask shape differs");
  ComplexGrid spec = center_shift(dft2(field));
  for (std::size_t i = 0; i < spec.size(); ++i)
    if (centered_mask[i] == 0.0) spec[i] = complex{};
  return idft2(inverse_center_shift(spec));
}

}  // namespace fpm

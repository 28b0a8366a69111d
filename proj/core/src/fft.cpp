#include <fftw3.h>

#include <map>
#include <mutex>
#include <tuple>

#include "fpm/field.hpp"

namespace fpm {
namespace {

// FFTW planning is not thread-safe; execution with the new-array interface
// is. Plans are built once per (shape, direction) with FFTW_ESTIMATE so that
// results never depend on run-time timing measurements.
class PlanCache {
 public:
  ~PlanCache() {
    for (auto& [key, plan] : plans_) fftw_destroy_plan(plan);
  }

  fftw_plan get(std::size_t rows, std::size_t cols, int sign) {
    std::lock_guard lock(mutex_);
    auto key = std::make_tuple(rows, cols, sign);
    if (auto it = plans_.find(key); it != plans_.end()) return it->second;
    auto* scratch = fftw_alloc_complex(rows * cols);
    fftw_plan plan = fftw_plan_dft_2d(static_cast<int>(rows), static_cast<int>(cols), scratch,
                                      scratch, sign, FFTW_ESTIMATE | FFTW_UNALIGNED);
    fftw_free(scratch);
    plans_.emplace(key, plan);
    return plan;
  }

 private:
  std::mutex mutex_;
  std::map<std::tuple<std::size_t, std::size_t, int>, fftw_plan> plans_;
};

PlanCache& plans() {
  static PlanCache cache;
  return cache;
}

ComplexGrid transform(const ComplexGrid& g, int sign) {
  ComplexGrid out = g;
  auto* buf = reinterpret_cast<fftw_complex*>(out.data());
  fftw_execute_dft(plans().get(g.rows(), g.cols(), sign), buf, buf);
  return out;
}

}  // namespace

ComplexGrid dft2(const ComplexGrid& g) { return transform(g, FFTW_FORWARD); }

ComplexGrid idft2(const ComplexGrid& g) {
  ComplexGrid out = transform(g, FFTW_BACKWARD);
  const double norm = 1.0 / static_cast<double>(g.size());
  for (auto& v : out) v *= norm;
  return out;
}

}  // namespace fpm

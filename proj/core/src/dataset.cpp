#include "fpm/dataset.hpp"

#include <cmath>
#include <string>

namespace fpm {

void validate(const Dataset& ds) {
  validate(ds.config);
  if (ds.images.size() != ds.config.illuminations.size())
    throw InvalidConfig("dataset holds " + std::to_string(ds.images.size()) + " images but " +
                        std::to_string(ds.config.illuminations.size()) + " illuminations");
  for (std::size_t i = 0; i < ds.images.size(); ++i) {
    const auto& img = ds.images[i];
    if (img.rows() != ds.config.low_rows || img.cols() != ds.config.low_cols)
      throw DimensionMismatch("image " + std::to_string(i) + " does not match capture dims");
    for (double v : img)
      if (!std::isfinite(v) || v < 0.0)
        throw InvalidConfig("image " + std::to_string(i) + " has a negative or non-finite sample");
  }
  if (ds.saturation && !(*ds.saturation > 0.0)) throw InvalidConfig("saturation must be > 0");
}

}  // namespace fpm

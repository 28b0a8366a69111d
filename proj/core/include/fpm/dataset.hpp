#pragma once

#include <optional>
#include <vector>

#include "fpm/field.hpp"
#include "fpm/optics.hpp"

namespace fpm {

/// Geometry plus one nonnegative intensity capture per illumination, in
/// manifest order.
struct Dataset {
  OpticalConfig config;
  std::vector<RealGrid> images;
  std::optional<double> saturation;

  friend bool operator==(const Dataset&, const Dataset&) = default;
};

/// Throws InvalidConfig / DimensionMismatch when images disagree with the
/// geometry, and InvalidConfig on negative or non-finite intensities.
void validate(const Dataset& ds);

}  // namespace fpm

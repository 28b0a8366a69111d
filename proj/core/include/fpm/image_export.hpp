#pragma once

#include <filesystem>

#include "fpm/field.hpp"

namespace fpm {

enum class Component { amp, phase, real, imag };

/// 16-bit binary PGM (P5, big-endian samples). Values map linearly from
/// [min, max] to [0, 65535]; a constant image maps to 32768.
void export_pgm(const RealGrid& g, const std::filesystem::path& path);

/// Exports one component of a complex field; phase is wrapped to (-pi, pi].
void export_component(const ComplexGrid& g, const std::filesystem::path& path, Component mode);

RealGrid component(const ComplexGrid& g, Component mode);

}  // namespace fpm

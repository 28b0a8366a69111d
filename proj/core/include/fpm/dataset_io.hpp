#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "fpm/dataset.hpp"
#include "fpm/field.hpp"

namespace fpm {

// Binary grid files: 4-byte magic, rows and cols as little-endian uint32,
// then rows*cols little-endian float32 samples (FPD1) or interleaved
// (re, im) float32 pairs (FPC1), row-major.
void write_intensity(const RealGrid& g, const std::filesystem::path& path);
RealGrid read_intensity(const std::filesystem::path& path);
void write_field(const ComplexGrid& g, const std::filesystem::path& path);
ComplexGrid read_field(const std::filesystem::path& path);

inline constexpr int kManifestVersion = 1;
inline constexpr const char* kManifestName = "manifest.json";

/// Parsed manifest. `files` holds one entry per illumination (empty strings
/// when the manifest is used as a bare geometry config).
struct Manifest {
  OpticalConfig config;
  std::optional<double> saturation;
  std::vector<std::string> files;
};

/// Parses manifest JSON text. Unknown fields, missing fields, wrong types and
/// invalid geometry throw ManifestError. With `require_files` false the
/// per-illumination "file" key may be omitted.
Manifest parse_manifest(const std::string& text, bool require_files = true);
std::string format_manifest(const Manifest& m);
Manifest read_manifest(const std::filesystem::path& path, bool require_files = true);

/// Writes manifest.json plus img_NNNN.fpd per capture into `dir` (created if missing).
void write_dataset(const Dataset& ds, const std::filesystem::path& dir);
Dataset read_dataset(const std::filesystem::path& dir);

}  // namespace fpm

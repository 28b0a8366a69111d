#include "fpm/dataset_io.hpp"

#include <array>
#include <bit>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <iterator>
#include <set>

#include <fmt/core.h>
#include <json.hpp>

namespace fpm {
namespace {

using json = nlohmann::json;
namespace fs = std::filesystem;

void put_u32(std::vector<unsigned char>& out, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) out.push_back(static_cast<unsigned char>(v >> (8 * i)));
}

std::uint32_t get_u32(const unsigned char* p) {
  return static_cast<std::uint32_t>(p[0]) | static_cast<std::uint32_t>(p[1]) << 8 |
         static_cast<std::uint32_t>(p[2]) << 16 | static_cast<std::uint32_t>(p[3]) << 24;
}

void put_f32(std::vector<unsigned char>& out, double v) {
  put_u32(out, std::bit_cast<std::uint32_t>(static_cast<float>(v)));
}

double get_f32(const unsigned char* p) { return static_cast<double>(std::bit_cast<float>(get_u32(p))); }

std::vector<unsigned char> header(const char* magic, std::size_t rows, std::size_t cols,
                                  std::size_t payload) {
  std::vector<unsigned char> out(magic, magic + 4);
  out.reserve(12 + payload);
  put_u32(out, static_cast<std::uint32_t>(rows));
  put_u32(out, static_cast<std::uint32_t>(cols));
  return out;
}

void write_bytes(const fs::path& path, const std::vector<unsigned char>& bytes) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw IoError("failed writing " + path.string());
}

std::vector<unsigned char> read_bytes(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

// Validates magic and length; returns (rows, cols).
std::pair<std::size_t, std::size_t> parse_header(const std::vector<unsigned char>& bytes,
                                                 const char* magic, std::size_t floats_per_sample,
                                                 const fs::path& path) {
  if (bytes.size() < 12) throw FormatError(path.string() + ": truncated header");
  if (std::memcmp(bytes.data(), magic, 4) != 0)
    throw FormatError(path.string() + ": bad magic, expected " + magic);
  const std::size_t rows = get_u32(bytes.data() + 4);
  const std::size_t cols = get_u32(bytes.data() + 8);
  if (rows == 0 || cols == 0) throw FormatError(path.string() + ": zero dimension");
  const std::size_t expected = 12 + 4 * floats_per_sample * rows * cols;
  if (bytes.size() < expected) throw FormatError(path.string() + ": truncated payload");
  if (bytes.size() > expected) throw FormatError(path.string() + ": trailing bytes after payload");
  return {rows, cols};
}

double require_number(const json& j, const char* key) {
  if (!j.contains(key)) throw ManifestError(std::string("missing field '") + key + "'");
  const auto& v = j.at(key);
  if (!v.is_number()) throw ManifestError(std::string("field '") + key + "' must be a number");
  return v.get<double>();
}

std::int64_t require_integer(const json& j, const char* key) {
  if (!j.contains(key)) throw ManifestError(std::string("missing field '") + key + "'");
  const auto& v = j.at(key);
  if (!v.is_number_integer()) throw ManifestError(std::string("field '") + key + "' must be an integer");
  return v.get<std::int64_t>();
}

void reject_unknown(const json& j, const std::set<std::string>& allowed, const char* where) {
  for (const auto& [key, value] : j.items())
    if (!allowed.contains(key)) throw ManifestError(fmt::format("unknown field '{}' in {}", key, where));
}

std::string image_name(std::size_t n) { return fmt::format("img_{:04d}.fpd", n); }

}  // namespace

void write_intensity(const RealGrid& g, const fs::path& path) {
  auto bytes = header("FPD1", g.rows(), g.cols(), 4 * g.size());
  for (double v : g) put_f32(bytes, v);
  write_bytes(path, bytes);
}

RealGrid read_intensity(const fs::path& path) {
  const auto bytes = read_bytes(path);
  const auto [rows, cols] = parse_header(bytes, "FPD1", 1, path);
  RealGrid g(rows, cols);
  for (std::size_t i = 0; i < g.size(); ++i) g[i] = get_f32(bytes.data() + 12 + 4 * i);
  return g;
}

void write_field(const ComplexGrid& g, const fs::path& path) {
  auto bytes = header("FPC1", g.rows(), g.cols(), 8 * g.size());
  for (const auto& v : g) {
    put_f32(bytes, v.real());
    put_f32(bytes, v.imag());
  }
  write_bytes(path, bytes);
}

ComplexGrid read_field(const fs::path& path) {
  const auto bytes = read_bytes(path);
  const auto [rows, cols] = parse_header(bytes, "FPC1", 2, path);
  ComplexGrid g(rows, cols);
  for (std::size_t i = 0; i < g.size(); ++i)
    g[i] = {get_f32(bytes.data() + 12 + 8 * i), get_f32(bytes.data() + 16 + 8 * i)};
  return g;
}

Manifest parse_manifest(const std::string& text, bool require_files) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw ManifestError(std::string("manifest is not valid JSON: ") + e.what());
  }
  if (!j.is_object()) throw ManifestError("manifest must be a JSON object");
  reject_unknown(j,
                 {"version", "wavelength_um", "na", "magnification", "camera_pixel_um", "upsample",
                  "low_rows", "low_cols", "saturation", "illuminations"},
                 "manifest");

  if (require_integer(j, "version") != kManifestVersion)
    throw ManifestError(fmt::format("unsupported manifest version (expected {})", kManifestVersion));

  Manifest m;
  auto& cfg = m.config;
  cfg.wavelength_um = require_number(j, "wavelength_um");
  cfg.na = require_number(j, "na");
  cfg.magnification = require_number(j, "magnification");
  cfg.camera_pixel_um = require_number(j, "camera_pixel_um");
  const auto upsample = require_integer(j, "upsample");
  const auto rows = require_integer(j, "low_rows");
  const auto cols = require_integer(j, "low_cols");
  if (upsample < 1 || upsample > 64) throw ManifestError("upsample must lie in [1, 64]");
  if (rows < 1 || cols < 1 || rows > 65535 || cols > 65535)
    throw ManifestError("low_rows/low_cols must lie in [1, 65535]");
  cfg.upsample = static_cast<int>(upsample);
  cfg.low_rows = static_cast<std::size_t>(rows);
  cfg.low_cols = static_cast<std::size_t>(cols);

  if (!j.contains("saturation")) throw ManifestError("missing field 'saturation'");
  if (!j.at("saturation").is_null()) m.saturation = require_number(j, "saturation");

  if (!j.contains("illuminations") || !j.at("illuminations").is_array())
    throw ManifestError("field 'illuminations' must be an array");
  for (const auto& il : j.at("illuminations")) {
    if (!il.is_object()) throw ManifestError("illumination entries must be objects");
    reject_unknown(il, {"sx", "sy", "file"}, "illumination");
    cfg.illuminations.push_back({require_number(il, "sx"), require_number(il, "sy")});
    if (il.contains("file")) {
      if (!il.at("file").is_string()) throw ManifestError("illumination 'file' must be a string");
      m.files.push_back(il.at("file").get<std::string>());
    } else if (require_files) {
      throw ManifestError("illumination is missing field 'file'");
    } else {
      m.files.emplace_back();
    }
  }

  try {
    validate(cfg);
  } catch (const Error& e) {
    throw ManifestError(std::string("invalid geometry: ") + e.what());
  }
  if (m.saturation && !(*m.saturation > 0.0)) throw ManifestError("saturation must be > 0 or null");
  return m;
}

std::string format_manifest(const Manifest& m) {
  const auto& cfg = m.config;
  json ils = json::array();
  for (std::size_t n = 0; n < cfg.illuminations.size(); ++n) {
    json il{{"sx", cfg.illuminations[n].sx}, {"sy", cfg.illuminations[n].sy}};
    if (n < m.files.size() && !m.files[n].empty()) il["file"] = m.files[n];
    ils.push_back(std::move(il));
  }
  json j{{"version", kManifestVersion},
         {"wavelength_um", cfg.wavelength_um},
         {"na", cfg.na},
         {"magnification", cfg.magnification},
         {"camera_pixel_um", cfg.camera_pixel_um},
         {"upsample", cfg.upsample},
         {"low_rows", cfg.low_rows},
         {"low_cols", cfg.low_cols},
         {"saturation", m.saturation ? json(*m.saturation) : json(nullptr)},
         {"illuminations", std::move(ils)}};
  return j.dump(2) + "\n";
}

Manifest read_manifest(const fs::path& path, bool require_files) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  const std::string text{std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
  return parse_manifest(text, require_files);
}

void write_dataset(const Dataset& ds, const fs::path& dir) {
  validate(ds);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw IoError("cannot create " + dir.string() + ": " + ec.message());
  Manifest m{ds.config, ds.saturation, {}};
  for (std::size_t n = 0; n < ds.images.size(); ++n) {
    m.files.push_back(image_name(n));
    write_intensity(ds.images[n], dir / m.files.back());
  }
  std::ofstream out(dir / kManifestName, std::ios::binary);
  if (!out) throw IoError("cannot write " + (dir / kManifestName).string());
  out << format_manifest(m);
}

Dataset read_dataset(const fs::path& dir) {
  if (!fs::is_directory(dir)) throw IoError(dir.string() + " is not a directory");
  Manifest m = read_manifest(dir / kManifestName, true);
  Dataset ds{m.config, {}, m.saturation};
  for (const auto& file : m.files) {
    RealGrid img = read_intensity(dir / file);
    if (img.rows() != ds.config.low_rows || img.cols() != ds.config.low_cols)
      throw FormatError(file + ": dims differ from manifest low_rows x low_cols");
    for (double v : img)
      if (!std::isfinite(v) || v < 0.0) throw FormatError(file + ": negative or non-finite intensity");
    ds.images.push_back(std::move(img));
  }
  return ds;
}

}  // namespace fpm

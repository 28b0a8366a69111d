#include "fpm/image_export.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <string>
#include <vector>

namespace fpm {

RealGrid component(const ComplexGrid& g, Component mode) {
  switch (mode) {
    case Component::amp:
      return amplitude(g);
    case Component::phase:
      return phase_angle(g);
    case Component::real: {
      RealGrid out(g.rows(), g.cols());
      for (std::size_t i = 0; i < g.size(); ++i) out[i] = g[i].real();
      return out;
    }
    case Component::imag: {
      RealGrid out(g.rows(), g.cols());
      for (std::size_t i = 0; i < g.size(); ++i) out[i] = g[i].imag();
      return out;
    }
  }
  throw Error("unknown component");
}

void export_pgm(const RealGrid& g, const std::filesystem::path& path) {
  const auto [lo, hi] = std::minmax_element(g.begin(), g.end());
  const double min = *lo;
  const double range = *hi - *lo;
  std::vector<unsigned char> bytes;
  bytes.reserve(2 * g.size());
  for (double v : g) {
    std::uint16_t px = 32768;
    if (range > 0.0) px = static_cast<std::uint16_t>(std::lround((v - min) / range * 65535.0));
    bytes.push_back(static_cast<unsigned char>(px >> 8));
    bytes.push_back(static_cast<unsigned char>(px & 0xff));
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  out << "P5\n" << g.cols() << ' ' << g.rows() << "\n65535\n";
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw IoError("failed writing " + path.string());
}

void export_component(const ComplexGrid& g, const std::filesystem::path& path, Component mode) {
  export_pgm(component(g, mode), path);
}

}  // namespace fpm

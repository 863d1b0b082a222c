#pragma once

// Basin grids as binary PPM (P6) plus a JSON sidecar.

#include <array>
#include <cstdint>
#include <fstream>
#include <stdexcept>
#include <string>

#include "newtonmaps/dynamics.hpp"
#include "newtonmaps/json_io.hpp"

namespace newtonmaps {

using Rgb = std::array<std::uint8_t, 3>;

/// Colors by fp_table index, cycling; undecided is black, escaped white.
inline constexpr std::array<Rgb, 12> kPalette{{
    {230, 25, 75},   {60, 180, 75},   {255, 225, 25}, {0, 130, 200},  {245, 130, 48}, {145, 30, 180},
    {70, 240, 240},  {240, 50, 230},  {210, 245, 60}, {250, 190, 212}, {0, 128, 128}, {170, 110, 40},
}};

inline Rgb label_color(int label) {
  if (label == kUndecided) return {0, 0, 0};
  if (label == kEscaped) return {255, 255, 255};
  return kPalette[static_cast<std::size_t>(label) % kPalette.size()];
}

inline std::string ppm_bytes(const BasinGrid& g) {
  std::string out = "P6\n" + std::to_string(g.resolution.width) + " " + std::to_string(g.resolution.height) + "\n255\n";
  out.reserve(out.size() + g.labels.size() * 3);
  for (int label : g.labels) {
    const Rgb c = label_color(label);
    out.append(reinterpret_cast<const char*>(c.data()), 3);
  }
  return out;
}

inline io::json sidecar_json(const BasinGrid& g, const std::string& spec = {}) {
  io::json fps = io::json::array();
  for (std::size_t k = 0; k < g.fp_table.size(); ++k) {
    auto j = io::to_json(g.fp_table[k]);
    j["index"] = k;
    const Rgb c = label_color(static_cast<int>(k));
    j["color"] = {c[0], c[1], c[2]};
    j["pixels"] = g.count(static_cast<int>(k));
    fps.push_back(j);
  }
  io::json out{{"schema", io::kSchema},
               {"window",
                {{"center", io::to_json(g.window.center)},
                 {"half_width", g.window.half_width},
                 {"half_height", g.window.half_height}}},
               {"resolution", {g.resolution.width, g.resolution.height}},
               {"fp_table", fps},
               {"undecided_count", g.count(kUndecided)},
               {"escaped_count", g.count(kEscaped)}};
  if (!spec.empty()) out["spec"] = spec;
  return out;
}

inline void write_file(const std::string& path, const std::string& bytes) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open " + path + " for writing");
  f.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!f) throw std::runtime_error("write failed: " + path);
}

}  // namespace newtonmaps

#pragma once

// JSON encodings shared by the CLI and the verification suites. Complex
// numbers are [re, im]; infinity is the string "infinity".

#include <cmath>
#include <string>

#include <json.hpp>

#include "newtonmaps/complex_poly.hpp"
#include "newtonmaps/dynamics.hpp"
#include "newtonmaps/newton_core.hpp"
#include "newtonmaps/rational_map.hpp"

namespace newtonmaps::io {

using nlohmann::json;

inline constexpr const char* kSchema = "1";

inline json to_json(cplx z) { return json::array({z.real(), z.imag()}); }

inline json to_json(const SpherePoint& p) {
  if (p.is_infinity()) return "infinity";
  return to_json(p.value());
}

/// Highest degree first; components below rel * max|c| print as 0.
inline json to_json(const Polynomial& p, double rel = 1e-14) {
  json out = json::array();
  const double cut = rel * p.max_abs_coeff();
  for (cplx c : p.descending()) {
    if (std::abs(c.real()) < cut) c.real(0.0);
    if (std::abs(c.imag()) < cut) c.imag(0.0);
    out.push_back(to_json(c));
  }
  return out;
}

inline json to_json(const RationalMap& r) {
  return {{"num", to_json(r.num())}, {"den", to_json(r.den())}, {"degree", r.degree()}};
}

inline json to_json(const RootList& roots) {
  json out = json::array();
  for (const auto& r : roots) out.push_back({{"value", to_json(r.value)}, {"multiplicity", r.multiplicity}});
  return out;
}

inline json finite_or_null(cplx z) {
  if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return nullptr;
  return to_json(z);
}

inline json to_json(const FixedPointRecord& fp) {
  json j{{"location", to_json(fp.location)},
         {"multiplier", to_json(fp.multiplier)},
         {"class", to_string(fp.klass)},
         {"residue_index", finite_or_null(fp.residue_index)},
         {"multiplicity", fp.multiplicity},
         {"origin", to_string(fp.origin)}};
  if (fp.origin_multiplicity > 0) j["origin_multiplicity"] = fp.origin_multiplicity;
  return j;
}

inline json to_json(const OrbitResult& o) {
  json j{{"fate", to_string(o.fate)}, {"iterations", o.iterations}, {"final", to_json(o.final_point)}};
  if (o.fate == OrbitFate::converged) j["fp_index"] = o.fp_index;
  return j;
}

}  // namespace newtonmaps::io

#pragma once

// Orbits, critical points, basin grids and the evidence reports built on them.
// Everything here is numerical evidence; nothing proves connectivity.

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <limits>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "newtonmaps/complex_poly.hpp"
#include "newtonmaps/newton_core.hpp"
#include "newtonmaps/rational_map.hpp"

namespace newtonmaps {

struct OrbitOptions {
  double tol = 1e-9;
  double escape = 1e12;
  int cap = 1000;
};

enum class OrbitFate { converged, escaped_to_infinity, undecided };

inline const char* to_string(OrbitFate f) {
  switch (f) {
    case OrbitFate::converged: return "converged";
    case OrbitFate::escaped_to_infinity: return "escaped";
    case OrbitFate::undecided: return "undecided";
  }
  return "?";
}

struct OrbitResult {
  OrbitFate fate = OrbitFate::undecided;
  /// Index into the target list when converged.
  int fp_index = -1;
  int iterations = 0;
  SpherePoint final_point = cplx{};
};

/// Attracting (incl. superattracting) fixed points, the usual orbit targets.
inline std::vector<FixedPointRecord> attracting_fixed_points(const RationalMap& n) {
  std::vector<FixedPointRecord> out;
  for (auto& fp : fixed_points(n))
    if (is_attracting(fp.klass)) out.push_back(fp);
  return out;
}

namespace detail {

inline bool infinity_attracting(const RationalMap& n) {
  const int a = n.num().degree(), b = n.den().degree();
  if (a <= b) return false;
  return std::abs(multiplier_at_infinity(n)) < 1.0;
}

}  // namespace detail

/// Iterate until the orbit is within tol of a target, or cap is hit.
/// Large |z| counts as infinity only when infinity is a target (converged) or an
/// attracting fixed point (escaped); otherwise the orbit may come back.
inline OrbitResult iterate_orbit(const RationalMap& n, SpherePoint z, const std::vector<FixedPointRecord>& targets,
                                 const OrbitOptions& opt = {}) {
  int inf_index = -1;
  for (std::size_t k = 0; k < targets.size(); ++k)
    if (targets[k].location.is_infinity()) inf_index = static_cast<int>(k);
  const bool inf_attracts = inf_index < 0 && detail::infinity_attracting(n);

  for (int it = 0; it <= opt.cap; ++it) {
    const bool huge = z.is_infinity() || std::abs(z.value()) > opt.escape;
    if (huge) {
      if (inf_index >= 0) return {OrbitFate::converged, inf_index, it, z};
      if (inf_attracts) return {OrbitFate::escaped_to_infinity, -1, it, z};
    } else {
      const cplx w = z.value();
      for (std::size_t k = 0; k < targets.size(); ++k) {
        const auto& t = targets[k].location;
        if (t.is_finite() && std::abs(w - t.value()) < opt.tol)
          return {OrbitFate::converged, static_cast<int>(k), it, z};
      }
    }
    if (it == opt.cap) break;
    z = n(z);
  }
  return {OrbitFate::undecided, -1, opt.cap, z};
}

struct CriticalPoints {
  RootList finite;
  /// Multiplicity of infinity as a critical point (0 if unramified there).
  int at_infinity = 0;

  int total() const { return total_multiplicity(finite) + at_infinity; }
};

/// Zeros of num' den - num den' plus the ramification at infinity; the total
/// is 2 deg N - 2.
inline CriticalPoints critical_points(const RationalMap& n) {
  const int D = n.degree();
  if (D < 2) throw std::invalid_argument("critical_points: degree must be at least 2");
  const Polynomial w = (n.num().derivative() * n.den() - n.num() * n.den().derivative()).trimmed(1e-13);
  CriticalPoints out;
  if (w.degree() >= 1) out.finite = roots(w);
  out.at_infinity = 2 * D - 2 - std::max(w.degree(), 0);
  return out;
}

/// Radius of a disk around 0 inside the immediate basin of 0 for a polynomial
/// with p(0) = 0 and |p'(0)| < 1.
inline double internal_disk_radius(const Polynomial& p) {
  const int d = p.degree();
  if (d < 2) throw std::invalid_argument("internal_disk_radius: degree must be at least 2");
  if (std::abs(p[0]) > 1e-12) throw std::invalid_argument("internal_disk_radius: p(0) must be 0");
  const double a = std::abs(p[1]);
  if (a >= 1.0) throw std::invalid_argument("internal_disk_radius: |p'(0)| must be below 1");
  const double L = length(p);
  const double q = (1.0 - a) / (L - a);
  return L >= 1.0 ? q : std::pow(q, 1.0 / (d - 1));
}

struct CriticalEntry {
  cplx c;
  int multiplicity = 1;
  SpherePoint value = cplx{};
  double value_abs = 0.0;
  OrbitResult orbit;
  bool inside_disk = false;
  /// First k >= 1 with |N^k(c)| < r, if reached within the cap.
  std::optional<int> steps_to_disk;
};

struct CriticalReport {
  std::optional<double> disk_radius;
  std::vector<CriticalEntry> entries;
};

/// Critical values, orbits and (optionally) internal-disk membership for every
/// finite critical point of N.
inline CriticalReport critical_report(const RationalMap& n, const std::optional<Polynomial>& disk_poly = std::nullopt,
                                      const OrbitOptions& opt = {}) {
  CriticalReport rep;
  if (disk_poly) rep.disk_radius = internal_disk_radius(*disk_poly);
  const auto targets = attracting_fixed_points(n);
  for (const auto& cp : critical_points(n).finite) {
    CriticalEntry e;
    e.c = cp.value;
    e.multiplicity = cp.multiplicity;
    e.value = n(cp.value);
    e.value_abs = e.value.is_finite() ? std::abs(e.value.value()) : std::numeric_limits<double>::infinity();
    e.orbit = iterate_orbit(n, cp.value, targets, opt);
    if (rep.disk_radius) {
      const double r = *rep.disk_radius;
      e.inside_disk = e.value_abs < r;
      SpherePoint z = cp.value;
      for (int k = 1; k <= opt.cap; ++k) {
        z = n(z);
        if (z.is_infinity()) break;
        if (std::abs(z.value()) < r) {
          e.steps_to_disk = k;
          break;
        }
      }
    }
    rep.entries.push_back(e);
  }
  return rep;
}

enum class FamilyKind { N0, N1, N2 };

struct NamedFamily {
  FamilyKind kind;
  int m = 0;  // N0 only
  int n = 0;

  std::string name() const {
    switch (kind) {
      case FamilyKind::N0: return "N0(" + std::to_string(m) + "," + std::to_string(n) + ")";
      case FamilyKind::N1: return "N1(" + std::to_string(n) + ")";
      case FamilyKind::N2: return "N2(" + std::to_string(n) + ")";
    }
    return "?";
  }
};

inline RationalMap named_family(const NamedFamily& f) {
  const int m = f.m, n = f.n;
  switch (f.kind) {
    case FamilyKind::N0:
      if (m < 1 || n < 1) throw std::invalid_argument("N0 needs m, n >= 1");
      return RationalMap::coprime(Polynomial::from_ascending({0.0, -(m + 1.0), m + n + 1.0}),
                                  Polynomial::from_ascending({-static_cast<double>(m), m + n + 0.0}));
    case FamilyKind::N1:
      if (n < 2) throw std::invalid_argument("N1 needs n >= 2");
      return RationalMap::coprime(Polynomial::monomial(n + 1.0, n) + Polynomial::constant(1.0),
                                  Polynomial::monomial(static_cast<double>(n), n - 1));
    case FamilyKind::N2:
      if (n < 2) throw std::invalid_argument("N2 needs n >= 2");
      return RationalMap::coprime(Polynomial::monomial(n + 2.0, n + 1) + Polynomial::monomial(2.0, 1),
                                  Polynomial::monomial(n + 1.0, n) + Polynomial::constant(1.0));
  }
  throw std::logic_error("named_family: bad kind");
}

enum class EvidenceStatus { complete, inconclusive, not_applicable };

inline const char* to_string(EvidenceStatus s) {
  switch (s) {
    case EvidenceStatus::complete: return "evidence-complete";
    case EvidenceStatus::inconclusive: return "inconclusive";
    case EvidenceStatus::not_applicable: return "not-applicable";
  }
  return "?";
}

struct DisconnectionEvidence {
  EvidenceStatus status = EvidenceStatus::not_applicable;
  std::string reason;
  int attracting_count = 0;
  std::optional<FixedPointRecord> attractor;
  bool nonzero_multiplier = false;
  std::vector<std::pair<cplx, OrbitResult>> orbits;
  std::vector<cplx> undecided;
};

/// Every finite critical orbit should land in the basin of the unique attracting
/// fixed point, which must not be superattracting.
inline DisconnectionEvidence disconnection_evidence(const RationalMap& n, const OrbitOptions& opt = {1e-9, 1e12, 10000}) {
  DisconnectionEvidence ev;
  const auto att = attracting_fixed_points(n);
  ev.attracting_count = static_cast<int>(att.size());
  if (att.size() != 1) {
    ev.reason = std::to_string(att.size()) + " attracting fixed points";
    return ev;
  }
  ev.attractor = att.front();
  ev.nonzero_multiplier = att.front().klass != FixedPointClass::superattracting;
  for (const auto& cp : critical_points(n).finite) {
    auto orbit = iterate_orbit(n, cp.value, att, opt);
    if (orbit.fate != OrbitFate::converged) ev.undecided.push_back(cp.value);
    ev.orbits.emplace_back(cp.value, orbit);
  }
  if (!ev.nonzero_multiplier) {
    ev.status = EvidenceStatus::inconclusive;
    ev.reason = "attracting fixed point is superattracting";
  } else if (!ev.undecided.empty()) {
    ev.status = EvidenceStatus::inconclusive;
    ev.reason = std::to_string(ev.undecided.size()) + " critical orbits did not reach the attractor";
  } else {
    ev.status = EvidenceStatus::complete;
  }
  return ev;
}

/// N(mu z)/mu == N(z) for mu = exp(2 pi i / order), coefficient-wise.
inline bool symmetry_check(const RationalMap& n, int order, double tol = 1e-9) {
  if (order < 1) throw std::invalid_argument("symmetry_check: order must be positive");
  const cplx mu = std::polar(1.0, 2.0 * std::numbers::pi / order);
  return maps_equal(conjugate_by_mobius(n, MobiusTransform::affine(mu, 0.0)), n, tol);
}

struct Window {
  cplx center = 0.0;
  double half_width = 2.0;
  double half_height = 2.0;
};

struct Resolution {
  int width = 400;
  int height = 400;
};

inline constexpr int kUndecided = -1;
inline constexpr int kEscaped = -2;

struct BasinGrid {
  Window window;
  Resolution resolution;
  std::vector<int> labels;
  std::vector<FixedPointRecord> fp_table;

  cplx pixel_center(int i, int j) const {
    const double x = window.center.real() - window.half_width + (i + 0.5) * 2.0 * window.half_width / resolution.width;
    const double y =
        window.center.imag() + window.half_height - (j + 0.5) * 2.0 * window.half_height / resolution.height;
    return {x, y};
  }

  int& at(int i, int j) { return labels[static_cast<std::size_t>(j) * resolution.width + i]; }
  int at(int i, int j) const { return labels[static_cast<std::size_t>(j) * resolution.width + i]; }

  /// Pixel containing z, if inside the window.
  std::optional<std::pair<int, int>> pixel_of(cplx z) const {
    const double u = (z.real() - window.center.real() + window.half_width) / (2.0 * window.half_width);
    const double v = (window.center.imag() + window.half_height - z.imag()) / (2.0 * window.half_height);
    if (u < 0 || u >= 1 || v < 0 || v >= 1) return std::nullopt;
    return std::pair{static_cast<int>(u * resolution.width), static_cast<int>(v * resolution.height)};
  }

  long count(int label) const { return std::count(labels.begin(), labels.end(), label); }
};

/// Worker count: NEWTON_THREADS if set and positive, else hardware concurrency.
inline unsigned worker_count() {
  unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("NEWTON_THREADS")) {
    const int v = std::atoi(env);
    if (v > 0) return static_cast<unsigned>(v);
  }
  return hw;
}

/// Label every pixel by the attracting fixed point its orbit reaches. Rows are
/// split across workers; each pixel is independent so output is deterministic.
inline BasinGrid basin_grid(const RationalMap& n, const Window& window, const Resolution& res, int cap = 1000) {
  if (res.width < 1 || res.height < 1) throw std::invalid_argument("basin_grid: empty resolution");
  if (window.half_width <= 0 || window.half_height <= 0) throw std::invalid_argument("basin_grid: empty window");
  BasinGrid g{window, res, std::vector<int>(static_cast<std::size_t>(res.width) * res.height, kUndecided),
              attracting_fixed_points(n)};
  if (g.fp_table.empty()) throw std::domain_error("basin_grid: map has no attracting fixed point");

  const OrbitOptions opt{1e-9, 1e12, cap};
  const unsigned workers = std::min<unsigned>(worker_count(), static_cast<unsigned>(res.height));
  auto run = [&](unsigned w) {
    for (int j = static_cast<int>(w); j < res.height; j += static_cast<int>(workers))
      for (int i = 0; i < res.width; ++i) {
        const auto o = iterate_orbit(n, g.pixel_center(i, j), g.fp_table, opt);
        g.at(i, j) = o.fate == OrbitFate::converged ? o.fp_index
                     : o.fate == OrbitFate::escaped_to_infinity ? kEscaped
                                                                 : kUndecided;
      }
  };
  std::vector<std::jthread> pool;
  for (unsigned w = 1; w < workers; ++w) pool.emplace_back(run, w);
  run(0);
  return g;
}

/// 4-connected component of same-labeled pixels containing the fixed point's
/// pixel: the grid stand-in for the immediate basin. Empty if the point is off-grid.
inline std::vector<bool> immediate_basin_mask(const BasinGrid& g, int fp_index) {
  std::vector<bool> mask(g.labels.size(), false);
  const auto& loc = g.fp_table.at(static_cast<std::size_t>(fp_index)).location;
  if (loc.is_infinity()) return mask;
  const auto px = g.pixel_of(loc.value());
  if (!px || g.at(px->first, px->second) != fp_index) return mask;
  std::vector<std::pair<int, int>> stack{*px};
  const int W = g.resolution.width, H = g.resolution.height;
  mask[static_cast<std::size_t>(px->second) * W + px->first] = true;
  while (!stack.empty()) {
    auto [i, j] = stack.back();
    stack.pop_back();
    const int di[] = {1, -1, 0, 0}, dj[] = {0, 0, 1, -1};
    for (int k = 0; k < 4; ++k) {
      const int a = i + di[k], b = j + dj[k];
      if (a < 0 || b < 0 || a >= W || b >= H) continue;
      const std::size_t idx = static_cast<std::size_t>(b) * W + a;
      if (mask[idx] || g.labels[idx] != fp_index) continue;
      mask[idx] = true;
      stack.emplace_back(a, b);
    }
  }
  return mask;
}

/// Sign changes of f on (a, b) from dense sampling; each is reported as the
/// midpoint of the bracketing sample pair.
inline std::vector<double> sign_changes(const std::function<double(double)>& f, double a, double b,
                                        int samples = 10000) {
  std::vector<double> out;
  double prev_x = a + (b - a) / (samples + 1);
  double prev = f(prev_x);
  for (int k = 2; k <= samples; ++k) {
    const double x = a + k * (b - a) / (samples + 1);
    const double v = f(x);
    if ((prev < 0) != (v < 0) && prev != 0.0) out.push_back(0.5 * (prev_x + x));
    prev = v;
    prev_x = x;
  }
  return out;
}

}  // namespace newtonmaps

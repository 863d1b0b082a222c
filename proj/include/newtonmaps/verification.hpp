#pragma once

// Built-in verification suites. Each returns a deterministic JSON record (no
// timings, seeded RNG) with a top-level "passed" flag.

#include <cmath>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "newtonmaps/classifier.hpp"
#include "newtonmaps/conjugacy.hpp"
#include "newtonmaps/dynamics.hpp"
#include "newtonmaps/json_io.hpp"
#include "newtonmaps/mcmullen.hpp"
#include "newtonmaps/newton_core.hpp"
#include "newtonmaps/parse.hpp"

namespace newtonmaps::verify {

using io::json;

// ---------------------------------------------------------------- tables

inline json table_suite(int d) {
  const auto rep = verify_table(d, 1e-9);
  json rows = json::array();
  for (const auto& r : rep.rows) {
    json j{{"id", r.id}, {"found", r.found}, {"matched", r.matched}};
    if (r.row) {
      j["pattern"] = r.row->pattern.to_string();
      j["newton"] = io::to_json(r.row->newton.num());
    }
    rows.push_back(j);
  }
  return {{"d", d},
          {"rows", rows},
          {"expected_rows", static_cast<int>(golden_rows(d).size())},
          {"found_rows", static_cast<int>(rep.enumeration.rows.size())},
          {"passed", rep.all_matched()}};
}

struct CriticalRow {
  int map;
  cplx c;
  cplx value;
  double value_abs;
};

/// Printed values, 6 significant digits, copied verbatim.
inline std::vector<CriticalRow> critical_rows() {
  return {
      {1, {0.355697, -1.18874}, {0.115994, -0.678307}, 0.688153},
      {1, {0.355697, 1.18874}, {0.115994, 0.678307}, 0.688153},
      {2, {0.692438, -1.01941}, {0.373036, -0.68711}, 0.781841},
      {2, {0.692438, 1.01941}, {0.373036, -0.68711}, 0.781841},
      {2, {-1.09244, -0.955874}, {-0.69979, -0.5884}, 0.914285},
      {2, {-1.09244, 0.955874}, {-0.69979, 0.5884}, 0.914285},
      {3, {0.426365, 0.953382}, {0.253282, 0.566356}, 0.620412},
      {3, {0.51694, -1.13864}, {0.237926, -0.699289}, 0.73866},
      {3, {-1.19327, -0.373795}, {-0.67984, -0.28885}, 0.73866},
      {4, {0.426365, -0.953382}, {0.253282, -0.566356}, 0.620412},
      {4, {0.51694, 1.13864}, {0.237926, 0.699289}, 0.73866},
      {4, {-1.19327, 0.373795}, {-0.67984, 0.28885}, 0.73866},
      {5, {0.311937, 1.65158}, {0.01360, 0.975419}, 0.97551},
      {5, {0.311937, -1.65158}, {0.01360, 0.97542}, 0.97551},
  };
}

inline double component_distance(cplx a, cplx b) {
  return std::max(std::abs(a.real() - b.real()), std::abs(a.imag() - b.imag()));
}

inline json critical_table_suite(double tol = 5e-6, int disk_steps = 50) {
  const double r34 = 2.0 * (2.0 * std::sqrt(6.0) - 3.0) / 5.0;
  const double printed_r[] = {0, 1.0, 1.0, r34, r34, 1.0};
  bool passed = true;
  json maps = json::array();
  std::vector<CriticalReport> reports(6);
  for (int i = 1; i <= 5; ++i) {
    const auto F = named_F(i);
    reports[static_cast<std::size_t>(i)] = critical_report(F, F.num());
    const auto& rep = reports[static_cast<std::size_t>(i)];
    const bool r_ok = std::abs(*rep.disk_radius - printed_r[i]) < 1e-12;
    json crit = json::array();
    for (const auto& e : rep.entries) {
      const bool real = std::abs(e.c.imag()) < 1e-9;
      const bool ok = e.steps_to_disk && *e.steps_to_disk <= disk_steps;
      passed = passed && ok;
      crit.push_back({{"c", io::to_json(e.c)},
                      {"value", io::to_json(e.value)},
                      {"abs_value", e.value_abs},
                      {"real", real},
                      {"steps_to_disk", e.steps_to_disk ? json(*e.steps_to_disk) : json(nullptr)},
                      {"ok", ok}});
    }
    passed = passed && r_ok;
    maps.push_back({{"map", "F" + std::to_string(i)}, {"r", *rep.disk_radius}, {"r_ok", r_ok}, {"critical", crit}});
  }

  json rows = json::array();
  for (const auto& row : critical_rows()) {
    const auto& rep = reports[static_cast<std::size_t>(row.map)];
    const CriticalEntry* best = nullptr;
    for (const auto& e : rep.entries)
      if (!best || std::abs(e.c - row.c) < std::abs(best->c - row.c)) best = &e;
    const double dc = component_distance(best->c, row.c);
    const double dv = best->value.is_finite() ? component_distance(best->value.value(), row.value) : INFINITY;
    const double da = std::abs(best->value_abs - row.value_abs);
    const bool inside = best->value_abs < *rep.disk_radius;
    const bool ok = dc <= tol && dv <= tol && da <= tol && inside;
    passed = passed && ok;
    rows.push_back({{"map", "F" + std::to_string(row.map)},
                    {"printed_c", io::to_json(row.c)},
                    {"computed_c", io::to_json(best->c)},
                    {"c_error", dc},
                    {"printed_value", io::to_json(row.value)},
                    {"computed_value", io::to_json(best->value)},
                    {"value_error", dv},
                    {"abs_error", da},
                    {"inside_disk", inside},
                    {"ok", ok}});
  }
  return {{"tolerance", tol}, {"maps", maps}, {"rows", rows}, {"passed", passed}};
}

// ---------------------------------------------------------------- random corpus

struct CorpusItem {
  RootList zeros;
  RootList poles;
  cplx scale = 1.0;
  RationalMap R;
  int expected_degree = 0;
};

inline cplx random_point(std::mt19937_64& rng, double half) {
  std::uniform_real_distribution<double> u(-half, half);
  const double x = u(rng);
  return {x, u(rng)};
}

/// Random R = c prod (z - a)^k / prod (z - b)^l with separated points and
/// multiplicities <= 3, keeping Newton degree in [2, 8].
inline std::vector<CorpusItem> newton_corpus(std::uint64_t seed, int count = 200) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> nroots(1, 4), npoles(0, 3), mult(1, 3);
  std::uniform_real_distribution<double> mod(0.5, 2.0), arg(0.0, 2.0 * std::numbers::pi);
  std::vector<CorpusItem> out;
  while (static_cast<int>(out.size()) < count) {
    CorpusItem item;
    const int m = nroots(rng), n = npoles(rng);
    std::vector<cplx> pts;
    while (static_cast<int>(pts.size()) < m + n) {
      const cplx p = random_point(rng, 2.0);
      bool far = true;
      for (const auto& q : pts) far = far && std::abs(p - q) > 0.3;
      if (far) pts.push_back(p);
    }
    int d = 0, e = 0;
    for (int k = 0; k < m; ++k) {
      item.zeros.push_back({pts[static_cast<std::size_t>(k)], mult(rng)});
      d += item.zeros.back().multiplicity;
    }
    for (int k = 0; k < n; ++k) {
      item.poles.push_back({pts[static_cast<std::size_t>(m + k)], mult(rng)});
      e += item.poles.back().multiplicity;
    }
    item.expected_degree = d == e + 1 ? m + n - 1 : m + n;
    if (item.expected_degree < 2 || item.expected_degree > 8) continue;
    item.scale = std::polar(mod(rng), arg(rng));
    item.R = RationalMap::coprime(item.scale * Polynomial::from_roots(item.zeros), Polynomial::from_roots(item.poles));
    out.push_back(std::move(item));
  }
  return out;
}

inline int degree_of(const RootList& r) { return total_multiplicity(r); }

// residue indices sum to 1; finite repelling ones to -deg(den R)
inline json residue_suite(const std::vector<CorpusItem>& corpus, double tol = 1e-7) {
  int failures = 0;
  double worst_sum = 0.0, worst_rep = 0.0;
  json failed = json::array();
  for (std::size_t k = 0; k < corpus.size(); ++k) {
    const auto N = newton_map(corpus[k].R);
    bool ok = true;
    std::string why;
    try {
      const cplx s = residue_sum(N);
      cplx rep{};
      for (const auto& fp : fixed_points(N))
        if (fp.location.is_finite() && fp.klass == FixedPointClass::repelling) rep += fp.residue_index;
      const double es = std::abs(s - 1.0);
      const double er = std::abs(rep + static_cast<double>(degree_of(corpus[k].poles)));
      worst_sum = std::max(worst_sum, es);
      worst_rep = std::max(worst_rep, er);
      ok = es <= tol && er <= tol;
    } catch (const std::exception& ex) {
      ok = false;
      why = ex.what();
    }
    if (!ok) {
      ++failures;
      failed.push_back({{"index", k}, {"map", format_map(N)}, {"error", why}});
    }
  }
  return {{"count", corpus.size()},
          {"failures", failures},
          {"worst_sum_error", worst_sum},
          {"worst_repelling_error", worst_rep},
          {"failed", failed},
          {"passed", failures == 0}};
}

// multipliers (k-1)/k, (l+1)/l, (d-e)/(d-e-1); degree m+n or m+n-1
inline json multiplier_suite(const std::vector<CorpusItem>& corpus, double tol = 1e-7) {
  int failures = 0;
  double worst = 0.0;
  json failed = json::array();
  for (std::size_t k = 0; k < corpus.size(); ++k) {
    const auto& it = corpus[k];
    const auto N = newton_map(it.R);
    const int d = degree_of(it.zeros), e = degree_of(it.poles);
    std::vector<std::string> problems;
    if (N.degree() != it.expected_degree)
      problems.push_back("degree " + std::to_string(N.degree()) + " != " + std::to_string(it.expected_degree));
    bool saw_infinity = false;
    for (const auto& fp : fixed_points(N)) {
      cplx expected;
      if (fp.location.is_infinity()) {
        saw_infinity = true;
        if (d == e + 1) {
          problems.push_back("infinity fixed although d = e + 1");
          continue;
        }
        expected = static_cast<double>(d - e) / (d - e - 1);
      } else {
        const cplx z = fp.location.value();
        const Root* hit = nullptr;
        bool is_root = true;
        for (const auto& r : it.zeros)
          if (std::abs(r.value - z) < 1e-6) hit = &r;
        for (const auto& p : it.poles)
          if (std::abs(p.value - z) < 1e-6) {
            hit = &p;
            is_root = false;
          }
        if (!hit) {
          problems.push_back("fixed point not at a root or pole");
          continue;
        }
        const double m = hit->multiplicity;
        expected = is_root ? (m - 1.0) / m : (m + 1.0) / m;
      }
      const double err = std::abs(fp.multiplier - expected);
      worst = std::max(worst, err);
      if (err > tol) problems.push_back("multiplier error " + std::to_string(err));
    }
    if (d != e + 1 && !saw_infinity) problems.push_back("infinity missing from fixed points");
    if (!problems.empty()) {
      ++failures;
      failed.push_back({{"index", k}, {"problems", problems}});
    }
  }
  return {{"count", corpus.size()}, {"failures", failures}, {"worst_error", worst}, {"failed", failed},
          {"passed", failures == 0}};
}

inline RationalMap random_rational(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> deg(2, 6);
  const int dn = deg(rng);
  std::uniform_int_distribution<int> dd(1, dn);
  const int de = dd(rng);
  std::vector<cplx> a, b;
  for (int k = 0; k <= dn; ++k) a.push_back(random_point(rng, 1.0));
  for (int k = 0; k <= de; ++k) b.push_back(random_point(rng, 1.0));
  return RationalMap::reduce(Polynomial::from_ascending(a), Polynomial::from_ascending(b));
}

// round trip over the corpus, rejection over random maps
inline json characterization_suite(const std::vector<CorpusItem>& corpus, std::uint64_t seed, int negatives = 50) {
  int round_trip_failures = 0;
  json failed = json::array();
  for (std::size_t k = 0; k < corpus.size(); ++k) {
    const auto N = newton_map(corpus[k].R);
    const auto rep = characterize(N);
    const bool ok = rep.is_newton && rep.reconstructed_R &&
                    maps_equal_up_to_scalar(*rep.reconstructed_R, corpus[k].R, 1e-6);
    if (!ok) {
      ++round_trip_failures;
      failed.push_back({{"index", k}, {"reason", rep.reason}});
    }
  }
  std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ULL);
  int rejected = 0;
  json near_misses = json::array();
  for (int k = 0; k < negatives; ++k) {
    const auto R = random_rational(rng);
    const auto rep = characterize(R);
    if (!rep.is_newton) {
      ++rejected;
    } else {
      near_misses.push_back({{"index", k}, {"map", format_map(R)}});
    }
  }
  const double rate = static_cast<double>(rejected) / negatives;
  return {{"count", corpus.size()},
          {"round_trip_failures", round_trip_failures},
          {"failed", failed},
          {"negatives", negatives},
          {"rejected", rejected},
          {"rejection_rate", rate},
          {"near_misses", near_misses},
          {"passed", round_trip_failures == 0 && rate >= 0.95}};
}

// T o N_S o T^{-1} = N_R for S = lambda R(a z + b)
inline json scaling_suite(std::uint64_t seed, int cases = 100, int samples = 50, double tol = 1e-8) {
  const auto maps = newton_corpus(seed ^ 0x5bd1e995ULL, cases);
  std::mt19937_64 rng(seed ^ 0x27d4eb2fULL);
  std::uniform_real_distribution<double> mod(0.5, 2.0), arg(0.0, 2.0 * std::numbers::pi);
  int failures = 0, checked = 0, skipped = 0;
  double worst = 0.0;
  for (const auto& item : maps) {
    const AffineScaling t(std::polar(mod(rng), arg(rng)), random_point(rng, 1.0), std::polar(mod(rng), arg(rng)));
    const auto NR = newton_map(item.R);
    const auto NS = newton_map(scale_source(item.R, t));
    for (int s = 0; s < samples; ++s) {
      const cplx z = random_point(rng, 2.0);
      const auto lhs_inner = NS((z - t.b) / t.a);
      const auto rhs = NR(z);
      if (lhs_inner.is_infinity() || rhs.is_infinity() || std::abs(rhs.value()) > 1e6) {
        ++skipped;
        continue;
      }
      const cplx lhs = t.a * lhs_inner.value() + t.b;
      const double err = std::abs(lhs - rhs.value()) / (1.0 + std::abs(rhs.value()));
      worst = std::max(worst, err);
      ++checked;
      if (err > tol) ++failures;
    }
  }
  return {{"cases", cases}, {"checked", checked}, {"skipped", skipped}, {"failures", failures},
          {"worst_relative_error", worst}, {"passed", failures == 0 && checked > 0}};
}

// ---------------------------------------------------------------- McMullen

/// Adjacent pixels with different labels must straddle the imaginary axis.
inline json line_case_check(int res = 400) {
  const auto g = basin_grid(newton_mcmullen(1, 1), {0.0, 2.0, 2.0}, {res, res}, 1000);
  const double px = 4.0 / res;
  int bad = 0, boundary = 0;
  for (int j = 0; j < res; ++j)
    for (int i = 0; i < res; ++i) {
      const int a = g.at(i, j);
      if (a < 0) continue;
      const cplx za = g.pixel_center(i, j);
      if (i + 1 < res && g.at(i + 1, j) >= 0 && g.at(i + 1, j) != a) {
        ++boundary;
        if (std::abs(za.real() + 0.5 * px) > px) ++bad;
      }
      if (j + 1 < res && g.at(i, j + 1) >= 0 && g.at(i, j + 1) != a && std::abs(za.real()) > px) ++bad;
    }
  return {{"resolution", res},
          {"boundary_pairs", boundary},
          {"off_axis_pairs", bad},
          {"undecided", g.count(kUndecided)},
          {"passed", bad == 0 && boundary > 0}};
}

inline json mcmullen_suite(std::uint64_t seed) {
  std::mt19937_64 rng(seed ^ 0x85ebca6bULL);
  std::uniform_real_distribution<double> mod(0.3, 3.0), arg(-std::numbers::pi, std::numbers::pi);
  bool passed = true;
  json cases = json::array();
  for (int m = 1; m <= 5; ++m)
    for (int n = 1; n <= 5; ++n) {
      if (m + n == 2) continue;
      const auto N = newton_mcmullen(m, n);
      // m = 1: d = e + 1, so the degree is m + n
      const int expected_deg = m >= 2 ? m + n + 1 : m + n;
      const bool deg_ok = N.degree() == expected_deg;
      const bool matches_newton = maps_equal(N, newton_map(mcmullen_map({m, n, 1.0})), 1e-8);

      double worst_factor = 0.0;
      for (int s = 0; s < 50; ++s) {
        const cplx z = random_point(rng, 1.5);
        const cplx a = N.derivative_at(z), b = newton_mcmullen_derivative(m, n, z);
        worst_factor = std::max(worst_factor, std::abs(a - b) / std::max(1.0, std::abs(b)));
      }
      const bool factor_ok = worst_factor <= 1e-9;

      bool conj_ok = true;
      for (int s = 0; s < 5; ++s) {
        const McMullenParams p(m, n, std::polar(mod(rng), arg(rng)));
        const auto nn = mcmullen_newton(p);
        conj_ok = conj_ok && maps_equal(conjugate_by_mobius(newton_map(mcmullen_map(p)), nn.transform), nn.newton, 1e-8);
      }

      const int order = symmetry_group_order(m, n);
      const auto ev = basin_evidence_mcmullen(m, n, 1000);
      const bool ok = deg_ok && matches_newton && factor_ok && conj_ok && order == m + n && ev.complete;
      passed = passed && ok;
      cases.push_back({{"m", m},
                       {"n", n},
                       {"degree", N.degree()},
                       {"degree_ok", deg_ok},
                       {"equals_newton_of_f", matches_newton},
                       {"factorization_error", worst_factor},
                       {"conjugacy_ok", conj_ok},
                       {"symmetry_order", order},
                       {"free_critical_points", ev.free_orbits.size()},
                       {"evidence_complete", ev.complete},
                       {"ok", ok}});
    }
  const auto line = line_case_check();
  passed = passed && line["passed"].get<bool>();
  return {{"cases", cases}, {"line_case", line}, {"passed", passed}};
}

// ---------------------------------------------------------------- disconnection

inline json disconnection_suite(int cap = 10000) {
  std::vector<NamedFamily> fams;
  for (int m = 1; m <= 6; ++m)
    for (int n = 1; n <= 6; ++n) fams.push_back({FamilyKind::N0, m, n});
  for (int n = 2; n <= 9; ++n) fams.push_back({FamilyKind::N1, 0, n});
  for (int n = 2; n <= 9; ++n) fams.push_back({FamilyKind::N2, 0, n});
  bool passed = true;
  json rows = json::array();
  for (const auto& f : fams) {
    const auto ev = disconnection_evidence(named_family(f), {1e-9, 1e12, cap});
    const bool ok = ev.status == EvidenceStatus::complete;
    passed = passed && ok;
    json j{{"map", f.name()},
           {"status", to_string(ev.status)},
           {"attracting_fixed_points", ev.attracting_count},
           {"critical_orbits", ev.orbits.size()},
           {"ok", ok}};
    if (ev.attractor) {
      j["attractor"] = io::to_json(ev.attractor->location);
      j["multiplier"] = io::to_json(ev.attractor->multiplier);
    }
    if (!ev.reason.empty()) j["reason"] = ev.reason;
    rows.push_back(j);
  }
  return {{"rows", rows}, {"passed", passed}};
}

// ---------------------------------------------------------------- driver

inline const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"tables", "properties", "mcmullen", "disconnection", "all"};
  return names;
}

inline json run_suite(const std::string& suite, std::uint64_t seed) {
  json out{{"schema", io::kSchema}, {"suite", suite}, {"seed", seed}};
  json results = json::object();
  const bool all = suite == "all";
  if (all || suite == "tables") {
    results["table_d4"] = table_suite(4);
    results["table_d5"] = table_suite(5);
    results["table_critical"] = critical_table_suite();
  }
  if (all || suite == "properties") {
    const auto corpus = newton_corpus(seed);
    results["residue"] = residue_suite(corpus);
    results["multiplier"] = multiplier_suite(corpus);
    results["characterization"] = characterization_suite(corpus, seed);
    results["scaling"] = scaling_suite(seed);
  }
  if (all || suite == "mcmullen") results["mcmullen"] = mcmullen_suite(seed);
  if (all || suite == "disconnection") results["disconnection"] = disconnection_suite();
  if (results.empty()) throw std::invalid_argument("unknown suite: " + suite);
  bool passed = true;
  for (const auto& [k, v] : results.items()) passed = passed && v["passed"].get<bool>();
  out["results"] = results;
  out["passed"] = passed;
  return out;
}

}  // namespace newtonmaps::verify

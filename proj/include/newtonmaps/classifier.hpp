#pragma once

// Newton maps with exactly two attracting fixed points, one exceptional.
// Up to conjugacy these are N_R with R = z^d / p, p monic of degree d with
// p(0) != 0, and N_R is a polynomial exactly when
//
//   g(z) = d prod_i (z - a_i) - z sum_i m_i prod_{j != i} (z - a_j)
//
// is a nonzero constant. The enumerator below solves that condition for every
// multiplicity pattern of p with d <= 5.

#include <algorithm>
#include <cmath>
#include <numbers>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "newtonmaps/complex_poly.hpp"
#include "newtonmaps/newton_core.hpp"
#include "newtonmaps/rational_map.hpp"

namespace newtonmaps {

struct MultiplicityPattern {
  /// Descending multiplicities; parts[0] is pinned at the root 1 unless generic.
  std::vector<int> parts;

  int degree() const {
    int s = 0;
    for (int p : parts) s += p;
    return s;
  }
  int distinct_roots() const { return static_cast<int>(parts.size()); }
  bool is_generic() const { return std::all_of(parts.begin(), parts.end(), [](int p) { return p == 1; }); }

  std::string to_string() const {
    std::string s = "(";
    for (std::size_t i = 0; i < parts.size(); ++i) s += (i ? "," : "") + std::to_string(parts[i]);
    return s + ")";
  }
};

/// Partitions of d ordered by number of parts (descending), then lexicographically.
inline std::vector<MultiplicityPattern> multiplicity_patterns(int d) {
  std::vector<MultiplicityPattern> out;
  std::vector<int> cur;
  auto rec = [&](auto&& self, int remaining, int max_part) -> void {
    if (remaining == 0) {
      out.push_back({cur});
      return;
    }
    for (int p = std::min(remaining, max_part); p >= 1; --p) {
      cur.push_back(p);
      self(self, remaining - p, p);
      cur.pop_back();
    }
  };
  rec(rec, d, d);
  std::sort(out.begin(), out.end(), [](const MultiplicityPattern& x, const MultiplicityPattern& y) {
    if (x.parts.size() != y.parts.size()) return x.parts.size() > y.parts.size();
    return x.parts < y.parts;
  });
  return out;
}

/// g(z) for roots a_i of multiplicity m_i with sum m_i = d.
inline Polynomial g_polynomial(int d, const RootList& roots) {
  if (total_multiplicity(roots) != d) throw std::invalid_argument("g_polynomial: multiplicities must sum to d");
  for (std::size_t i = 0; i < roots.size(); ++i)
    for (std::size_t j = i + 1; j < roots.size(); ++j)
      if (roots[i].value == roots[j].value) throw std::invalid_argument("g_polynomial: repeated root");
  std::vector<cplx> all;
  for (const auto& r : roots) all.push_back(r.value);
  Polynomial sum;
  for (std::size_t i = 0; i < roots.size(); ++i) {
    std::vector<cplx> others;
    for (std::size_t j = 0; j < roots.size(); ++j)
      if (j != i) others.push_back(roots[j].value);
    sum = sum + static_cast<double>(roots[i].multiplicity) * Polynomial::from_roots(std::span<const cplx>(others));
  }
  return static_cast<double>(d) * Polynomial::from_roots(std::span<const cplx>(all)) -
         Polynomial::monomial(1.0, 1) * sum;
}

/// True iff g built from the roots of p is a nonzero constant.
inline bool is_exceptional_family(const Polynomial& p, double tol = 1e-8) {
  if (p.degree() < 1) throw std::invalid_argument("is_exceptional_family: p must be nonconstant");
  if (std::abs(p[0]) == 0.0) throw std::invalid_argument("is_exceptional_family: p(0) must be nonzero");
  const Polynomial g = g_polynomial(p.degree(), roots(p.monic()));
  for (int k = 1; k <= g.degree(); ++k)
    if (std::abs(g[k]) >= tol) return false;
  return std::abs(g[0]) >= tol;
}

/// (z^{d+1} + (d-1) z) / d, the unique map for generic p.
inline RationalMap generic_newton(int d) {
  if (d < 1) throw std::invalid_argument("generic_newton: d must be positive");
  const Polynomial p = Polynomial::monomial(1.0 / d, d + 1) + Polynomial::monomial((d - 1.0) / d, 1);
  return RationalMap::polynomial(p);
}

struct NamedParam {
  std::string name;
  cplx value;
};

struct ClassificationResult {
  int d = 0;
  MultiplicityPattern pattern;
  RootList solved_roots;
  /// Parameters named as in the usual tabulation: a, b, c.
  std::vector<NamedParam> params;
  Polynomial p;
  RationalMap newton;
  std::string table_row_id;
};

struct Enumeration {
  std::vector<ClassificationResult> rows;
  /// One line per rejected candidate solution.
  std::vector<std::string> discarded;
};

namespace detail {

inline std::optional<std::vector<cplx>> solve_linear(std::vector<std::vector<cplx>> a, std::vector<cplx> b) {
  const std::size_t n = b.size();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    for (std::size_t r = col + 1; r < n; ++r)
      if (std::abs(a[r][col]) > std::abs(a[piv][col])) piv = r;
    if (std::abs(a[piv][col]) < 1e-300) return std::nullopt;
    std::swap(a[piv], a[col]);
    std::swap(b[piv], b[col]);
    for (std::size_t r = col + 1; r < n; ++r) {
      const cplx f = a[r][col] / a[col][col];
      for (std::size_t c = col; c < n; ++c) a[r][c] -= f * a[col][c];
      b[r] -= f * b[col];
    }
  }
  std::vector<cplx> x(n);
  for (std::size_t i = n; i-- > 0;) {
    cplx s = b[i];
    for (std::size_t c = i + 1; c < n; ++c) s -= a[i][c] * x[c];
    x[i] = s / a[i][i];
  }
  return x;
}

inline cplx determinant(std::vector<std::vector<cplx>> a) {
  const std::size_t n = a.size();
  cplx det = 1.0;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    for (std::size_t r = col + 1; r < n; ++r)
      if (std::abs(a[r][col]) > std::abs(a[piv][col])) piv = r;
    if (a[piv][col] == cplx{}) return 0.0;
    if (piv != col) {
      std::swap(a[piv], a[col]);
      det = -det;
    }
    det *= a[col][col];
    for (std::size_t r = col + 1; r < n; ++r) {
      const cplx f = a[r][col] / a[col][col];
      for (std::size_t c = col; c < n; ++c) a[r][c] -= f * a[col][c];
    }
  }
  return det;
}

// Pattern in the pinned gauge: root 1 with multiplicity m1, an optional second
// multiple root `a` with multiplicity m2, and a monic cofactor s of degree j
// carrying the simple roots.
struct PinnedPattern {
  int d = 0;
  int m1 = 0;
  int m2 = 0;
  int j = 0;

  int distinct() const { return 1 + (m2 > 0 ? 1 : 0) + j; }

  // g as a function of the cofactor s, for a fixed second root a. Linear in s.
  Polynomial g_of(cplx a, const Polynomial& s) const {
    const Polynomial z = Polynomial::monomial(1.0, 1);
    Polynomial M = Polynomial::linear_factor(1.0);
    Polynomial T = Polynomial::constant(static_cast<double>(m1));
    if (m2 > 0) {
      M = M * Polynomial::linear_factor(a);
      T = static_cast<double>(m1) * Polynomial::linear_factor(a) +
          static_cast<double>(m2) * Polynomial::linear_factor(1.0);
    }
    return static_cast<double>(d) * M * s - z * (T * s + M * s.derivative());
  }

  // Rows: coefficients of z^1 .. z^{k-1} of g; columns: cofactor basis z^0 .. z^j.
  std::vector<std::vector<cplx>> system(cplx a) const {
    const int rows = distinct() - 1;
    std::vector<std::vector<cplx>> m(static_cast<std::size_t>(rows), std::vector<cplx>(static_cast<std::size_t>(j) + 1));
    for (int t = 0; t <= j; ++t) {
      const Polynomial col = g_of(a, Polynomial::monomial(1.0, t));
      for (int r = 0; r < rows; ++r) m[static_cast<std::size_t>(r)][static_cast<std::size_t>(t)] = col[r + 1];
    }
    return m;
  }
};

inline Polynomial cofactor_from(const std::vector<cplx>& x, int j) {
  std::vector<cplx> c(x.begin(), x.end());
  c.resize(static_cast<std::size_t>(j));
  c.push_back(1.0);
  return Polynomial::from_ascending(std::move(c));
}

// Least-squares solve of the overdetermined cofactor system for fixed a.
inline std::optional<std::vector<cplx>> cofactor_coefficients(const PinnedPattern& pp, cplx a) {
  if (pp.j == 0) return std::vector<cplx>{};
  const auto m = pp.system(a);
  const std::size_t j = static_cast<std::size_t>(pp.j);
  std::vector<std::vector<cplx>> normal(j, std::vector<cplx>(j));
  std::vector<cplx> rhs(j);
  for (const auto& row : m) {
    for (std::size_t u = 0; u < j; ++u) {
      for (std::size_t v = 0; v < j; ++v) normal[u][v] += std::conj(row[u]) * row[v];
      rhs[u] -= std::conj(row[u]) * row[j];
    }
  }
  return solve_linear(normal, rhs);
}

}  // namespace detail

/// All solutions of "g is a nonzero constant" for 3 <= d <= 5, one row per
/// solution in the tabulation's gauge.
inline Enumeration enumerate(int d) {
  if (d < 3 || d > 5) throw std::invalid_argument("enumerate: d must be 3, 4 or 5");
  Enumeration out;
  const Polynomial z = Polynomial::monomial(1.0, 1);

  struct Candidate {
    MultiplicityPattern pattern;
    RootList roots;
    std::vector<NamedParam> params;
  };
  std::vector<Candidate> candidates;

  for (const auto& pat : multiplicity_patterns(d)) {
    if (pat.is_generic()) {
      RootList r;
      for (int k = 0; k < d; ++k) r.push_back({std::polar(1.0, 2.0 * std::numbers::pi * k / d), 1});
      candidates.push_back({pat, r, {}});
      continue;
    }
    detail::PinnedPattern pp{d, pat.parts[0], 0, 0};
    for (std::size_t i = 1; i < pat.parts.size(); ++i) {
      if (pat.parts[i] >= 2) {
        if (pp.m2 > 0) throw std::logic_error("enumerate: more than two multiple roots");
        pp.m2 = pat.parts[i];
      } else {
        ++pp.j;
      }
    }

    std::vector<cplx> second_roots;
    if (pp.m2 > 0) {
      // det of the (j+1)x(j+1) system is a polynomial of degree <= j+1 in a;
      // recover its coefficients from samples on the unit circle.
      const int N = pp.j + 2;
      std::vector<cplx> samples(static_cast<std::size_t>(N));
      for (int s = 0; s < N; ++s)
        samples[static_cast<std::size_t>(s)] = detail::determinant(pp.system(std::polar(1.0, 2.0 * std::numbers::pi * s / N)));
      std::vector<cplx> coeff(static_cast<std::size_t>(N));
      for (int k = 0; k < N; ++k) {
        cplx acc{};
        for (int s = 0; s < N; ++s) acc += samples[static_cast<std::size_t>(s)] * std::polar(1.0, -2.0 * std::numbers::pi * s * k / N);
        coeff[static_cast<std::size_t>(k)] = acc / static_cast<double>(N);
      }
      const Polynomial det = Polynomial::from_ascending(coeff).trimmed(1e-12);
      if (det.degree() < 1) {
        out.discarded.push_back(pat.to_string() + ": elimination polynomial is constant");
        continue;
      }
      for (const auto& r : roots(det)) second_roots.push_back(r.value);
      std::sort(second_roots.begin(), second_roots.end(), [](cplx x, cplx y) {
        if (std::abs(x.imag() - y.imag()) > 1e-9) return x.imag() > y.imag();
        return x.real() < y.real();
      });
    } else {
      second_roots.push_back(0.0);  // unused
    }

    for (const cplx a : second_roots) {
      std::ostringstream tag;
      tag << pat.to_string();
      if (pp.m2 > 0) tag << " a=" << a;
      if (pp.m2 > 0 && (std::abs(a) < 1e-8 || std::abs(a - 1.0) < 1e-8)) {
        out.discarded.push_back(tag.str() + ": second multiple root coincides with 0 or 1");
        continue;
      }
      const auto x = detail::cofactor_coefficients(pp, a);
      if (!x) {
        out.discarded.push_back(tag.str() + ": singular cofactor system");
        continue;
      }
      const Polynomial s = detail::cofactor_from(*x, pp.j);
      RootList r{{1.0, pp.m1}};
      if (pp.m2 > 0) r.push_back({a, pp.m2});
      bool repeated = false;
      if (pp.j >= 1) {
        for (const auto& sr : roots(s)) {
          if (sr.multiplicity != 1) repeated = true;
          r.push_back({sr.value, 1});
        }
      }
      if (repeated) {
        out.discarded.push_back(tag.str() + ": cofactor has a repeated root");
        continue;
      }
      std::vector<NamedParam> params;
      if (pp.m2 > 0) {
        params.push_back({"a", a});
        if (pp.j == 1) params.push_back({"b", r.back().value});
      } else if (pp.j == 1) {
        params.push_back({"a", r.back().value});
      } else if (pp.j >= 2) {
        const char* names[] = {"a", "b", "c", "d"};
        for (int t = 0; t < pp.j; ++t) params.push_back({names[t], (*x)[static_cast<std::size_t>(pp.j - 1 - t)]});
      }
      candidates.push_back({pat, r, params});
    }
  }

  for (auto& c : candidates) {
    std::ostringstream tag;
    tag << c.pattern.to_string();
    bool ok = true;
    for (std::size_t i = 0; i < c.roots.size() && ok; ++i) {
      if (std::abs(c.roots[i].value) < 1e-8) {
        out.discarded.push_back(tag.str() + ": zero root");
        ok = false;
      }
      for (std::size_t k = i + 1; k < c.roots.size() && ok; ++k)
        if (std::abs(c.roots[i].value - c.roots[k].value) < 1e-6) {
          out.discarded.push_back(tag.str() + ": coincident roots");
          ok = false;
        }
    }
    if (!ok) continue;
    const Polynomial g = g_polynomial(d, c.roots);
    bool constant = std::abs(g[0]) > 1e-8;
    for (int k = 1; k <= g.degree(); ++k) constant = constant && std::abs(g[k]) < 1e-8;
    if (!constant) {
      out.discarded.push_back(tag.str() + ": g is not a nonzero constant");
      continue;
    }
    ClassificationResult row;
    row.d = d;
    row.pattern = c.pattern;
    row.solved_roots = c.roots;
    row.params = c.params;
    row.p = Polynomial::from_roots(c.roots);
    row.newton = newton_from_factors({{0.0, d}}, c.roots);
    out.rows.push_back(std::move(row));
  }

  // Row ids: number of distinct roots, with (i), (ii), ... when shared.
  const char* roman[] = {"i", "ii", "iii", "iv", "v"};
  for (std::size_t i = 0; i < out.rows.size();) {
    std::size_t k = i;
    while (k < out.rows.size() && out.rows[k].pattern.distinct_roots() == out.rows[i].pattern.distinct_roots()) ++k;
    for (std::size_t t = i; t < k; ++t) {
      std::string id = std::to_string(out.rows[t].pattern.distinct_roots());
      if (k - i > 1) id += std::string("(") + roman[t - i] + ")";
      out.rows[t].table_row_id = id;
    }
    i = k;
  }
  return out;
}

struct GoldenRow {
  std::string id;
  /// Newton polynomial, ascending powers.
  std::vector<cplx> newton;
  std::vector<NamedParam> params;
};

/// Rows of the published tables (d = 4, 5) and the d = 3 list, transcribed.
inline std::vector<GoldenRow> golden_rows(int d) {
  const double s5 = std::sqrt(5.0);
  const cplx I{0.0, 1.0};
  auto scaled = [](std::vector<cplx> v, cplx s) {
    for (auto& c : v) c *= s;
    return v;
  };
  switch (d) {
    case 3:
      return {
          {"3", scaled({0, 2, 0, 0, 1}, 1.0 / 3), {}},
          {"2", scaled({0, 4, 1, 1}, 1.0 / 6), {{"a", -2.0}}},
          {"1", scaled({0, 2, 1}, 1.0 / 3), {}},
      };
    case 4:
      return {
          {"4", scaled({0, 3, 0, 0, 0, 1}, 1.0 / 4), {}},
          {"3", scaled({0, 9, 1, 1, 1}, 1.0 / 12), {{"a", 2.0}, {"b", 3.0}}},
          {"2(i)", scaled({0, 3, 0, 1}, 1.0 / 4), {{"a", -1.0}}},
          {"2(ii)", scaled({0, 9, 2, 1}, 1.0 / 12), {{"a", -3.0}}},
          {"1", scaled({0, 3, 1}, 1.0 / 4), {}},
      };
    case 5:
      return {
          {"5", scaled({0, 4, 0, 0, 0, 0, 1}, 1.0 / 5), {}},
          {"4", scaled({0, 16, 1, 1, 1, 1}, 1.0 / 20), {{"a", 2.0}, {"b", 3.0}, {"c", 4.0}}},
          {"3(i)",
           scaled({0, 8 * s5 - 56.0 * I, -s5 - 2.0 * I, 3 * s5 - 3.0 * I, -9.0 * I}, 1.0 / (10.0 * (s5 - 7.0 * I))),
           {{"a", (-2.0 + I * s5) / 3.0}, {"b", (-2.0 - 2.0 * I * s5) / 3.0}}},
          {"3(ii)",
           scaled({0, 8 * s5 + 56.0 * I, -s5 + 2.0 * I, 3 * s5 + 3.0 * I, 9.0 * I}, 1.0 / (10.0 * (s5 + 7.0 * I))),
           {{"a", (-2.0 - I * s5) / 3.0}, {"b", (-2.0 + 2.0 * I * s5) / 3.0}}},
          {"3(iii)", scaled({0, 24, 3, 2, 1}, 1.0 / 30), {{"a", 3.0}, {"b", 6.0}}},
          {"2(i)", scaled({0, 12, 1, 2}, 1.0 / 15), {{"a", -1.5}}},
          {"2(ii)", scaled({0, 16, 3, 1}, 1.0 / 20), {{"a", -4.0}}},
          {"1", scaled({0, 4, 1}, 1.0 / 5), {}},
      };
    default:
      throw std::invalid_argument("golden_rows: d must be 3, 4 or 5");
  }
}

struct TableRowCheck {
  std::string id;
  bool found = false;
  bool matched = false;
  const ClassificationResult* row = nullptr;
};

struct TableReport {
  int d = 0;
  Enumeration enumeration;
  std::vector<TableRowCheck> rows;
  bool count_matches = false;

  bool all_matched() const {
    return count_matches && std::all_of(rows.begin(), rows.end(), [](const TableRowCheck& r) { return r.matched; });
  }
  int matched_count() const {
    return static_cast<int>(std::count_if(rows.begin(), rows.end(), [](const TableRowCheck& r) { return r.matched; }));
  }
};

/// Compare enumerate(d) against the transcribed rows via maps_equal.
inline TableReport verify_table(int d, double tol = 1e-9) {
  TableReport rep;
  rep.d = d;
  rep.enumeration = enumerate(d);
  const auto golden = golden_rows(d);
  rep.count_matches = rep.enumeration.rows.size() == golden.size();
  for (const auto& g : golden) {
    TableRowCheck chk{g.id};
    for (const auto& r : rep.enumeration.rows) {
      if (r.table_row_id != g.id) continue;
      chk.found = true;
      chk.row = &r;
      chk.matched = maps_equal(r.newton, RationalMap::polynomial(Polynomial::from_ascending(g.newton)), tol);
    }
    rep.rows.push_back(chk);
  }
  return rep;
}

}  // namespace newtonmaps

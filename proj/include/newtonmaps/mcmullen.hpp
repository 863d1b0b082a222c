#pragma once

// McMullen family f(z) = z^m - lambda/z^n = (z^{m+n} - lambda)/z^n and its
// Newton map. lambda is normalized away by z -> lambda^{1/(m+n)} z.

#include <cmath>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <vector>

#include "newtonmaps/dynamics.hpp"
#include "newtonmaps/newton_core.hpp"
#include "newtonmaps/rational_map.hpp"

namespace newtonmaps {

struct McMullenParams {
  int m = 2;
  int n = 3;
  cplx lambda = 1.0;

  McMullenParams() = default;
  McMullenParams(int m_, int n_, cplx lambda_ = 1.0) : m(m_), n(n_), lambda(lambda_) {
    if (m < 1 || n < 1) throw std::invalid_argument("McMullenParams: m and n must be at least 1");
    if (lambda == cplx{}) throw std::invalid_argument("McMullenParams: lambda must be nonzero");
  }
  int k() const { return m + n; }
};

inline RationalMap mcmullen_map(const McMullenParams& p) {
  return RationalMap::coprime(Polynomial::monomial(1.0, p.k()) - Polynomial::constant(p.lambda),
                              Polynomial::monomial(1.0, p.n));
}

/// z((m-1) z^{m+n} + (n+1)) / (m z^{m+n} + n), the Newton map at lambda = 1.
inline RationalMap newton_mcmullen(int m, int n) {
  if (m < 1 || n < 1) throw std::invalid_argument("newton_mcmullen: m and n must be at least 1");
  const int k = m + n;
  return RationalMap::coprime(Polynomial::monomial(m - 1.0, k + 1) + Polynomial::monomial(n + 1.0, 1),
                              Polynomial::monomial(static_cast<double>(m), k) + Polynomial::constant(static_cast<double>(n)));
}

/// Closed form of N_f' at lambda = 1.
inline cplx newton_mcmullen_derivative(int m, int n, cplx z) {
  const cplx zk = std::pow(z, m + n);
  const cplx den = static_cast<double>(m) * zk + static_cast<double>(n);
  return (zk - 1.0) * (m * (m - 1.0) * zk - n * (n + 1.0)) / (den * den);
}

struct NormalizedNewton {
  RationalMap newton;
  /// T(z) = rho z with rho the principal (m+n)-th root of lambda; the
  /// lambda-map is T o newton o T^{-1}.
  MobiusTransform transform = MobiusTransform::identity();
  cplx rho = 1.0;
};

/// Newton map of f_lambda. By default conjugated to lambda = 1; raw keeps the
/// original coordinates (transform is then the identity).
inline NormalizedNewton mcmullen_newton(const McMullenParams& p, bool raw = false) {
  if (raw) return {newton_map(mcmullen_map(p)), MobiusTransform::identity(), 1.0};
  const cplx rho = std::pow(p.lambda, 1.0 / p.k());
  return {newton_mcmullen(p.m, p.n), MobiusTransform::affine(rho, 0.0), rho};
}

struct FreeCritical {
  /// Positive real free critical point; empty when m = n + 1.
  std::optional<double> c;
  std::vector<cplx> all_roots;
};

/// Solutions of z^{m+n} = n(n+1)/(m(m-1)).
inline FreeCritical free_critical(int m, int n) {
  if (m < 2) throw std::invalid_argument("free_critical: m must be at least 2");
  if (n < 1) throw std::invalid_argument("free_critical: n must be at least 1");
  FreeCritical out;
  if (m == n + 1) return out;  // the ratio is 1: they coincide with the roots of unity
  const int k = m + n;
  const double c = std::pow(n * (n + 1.0) / (m * (m - 1.0)), 1.0 / k);
  out.c = c;
  for (int j = 0; j < k; ++j) out.all_roots.push_back(std::polar(c, 2.0 * std::numbers::pi * j / k));
  return out;
}

/// N_f(c) = c (1 + (m - n - 1)/(m n)) at the positive free critical point.
inline cplx nf_at_free_critical(int m, int n) {
  if (m < 2) throw std::invalid_argument("nf_at_free_critical: m must be at least 2");
  const double c = std::pow(n * (n + 1.0) / (m * (m - 1.0)), 1.0 / (m + n));
  return c * (1.0 + (m - n - 1.0) / (static_cast<double>(m) * n));
}

enum class McMullenCase { I, II, III };

inline const char* to_string(McMullenCase c) {
  switch (c) {
    case McMullenCase::I: return "I";
    case McMullenCase::II: return "II";
    case McMullenCase::III: return "III";
  }
  return "?";
}

inline McMullenCase case_of(int m, int n) {
  if (m < 2) throw std::invalid_argument("case_of: m = 1 is conjugate to a polynomial Newton map");
  if (m > n + 1) return McMullenCase::I;
  if (m == n + 1) return McMullenCase::II;
  return McMullenCase::III;
}

/// Largest k <= 2(m+n) for which z -> e^{2 pi i/k} z commutes with N_f.
inline int symmetry_group_order(int m, int n) {
  if (m + n == 2) throw std::domain_error("symmetry_group_order: m = n = 1, the Julia set is a line");
  const auto N = newton_mcmullen(m, n);
  for (int k = 2 * (m + n); k >= 1; --k)
    if (symmetry_check(N, k)) return k;
  return 1;
}

struct McMullenEvidence {
  int m = 0, n = 0;
  std::vector<std::pair<cplx, OrbitResult>> free_orbits;
  /// Samples of (0, c) (c = 1 when there is no free critical point) that reach 1.
  int axis_samples = 0;
  int axis_in_basin_of_one = 0;
  bool complete = false;
};

/// Free critical orbits should reach a root-of-unity fixed point.
inline McMullenEvidence basin_evidence_mcmullen(int m, int n, int cap = 1000) {
  McMullenEvidence ev;
  ev.m = m;
  ev.n = n;
  const auto N = newton_mcmullen(m, n);
  const auto targets = attracting_fixed_points(N);
  const OrbitOptions opt{1e-9, 1e12, cap};
  double c = 1.0;
  if (m >= 2) {
    const auto fc = free_critical(m, n);
    if (fc.c) c = *fc.c;
    for (const auto& z : fc.all_roots) ev.free_orbits.emplace_back(z, iterate_orbit(N, z, targets, opt));
  }
  bool orbits_ok = true;
  for (const auto& [z, o] : ev.free_orbits) {
    if (o.fate != OrbitFate::converged) {
      orbits_ok = false;
      continue;
    }
    const auto& t = targets[static_cast<std::size_t>(o.fp_index)].location;
    if (t.is_infinity() || std::abs(std::pow(t.value(), m + n) - 1.0) > 1e-8)
      orbits_ok = false;
  }
  ev.axis_samples = 100;
  for (int s = 1; s <= ev.axis_samples; ++s) {
    const double x = c * s / (ev.axis_samples + 1.0);
    const auto o = iterate_orbit(N, cplx{x, 0.0}, targets, opt);
    if (o.fate == OrbitFate::converged) {
      const auto& t = targets[static_cast<std::size_t>(o.fp_index)].location;
      if (t.is_finite() && std::abs(t.value() - 1.0) < 1e-8) ++ev.axis_in_basin_of_one;
    }
  }
  ev.complete = orbits_ok && ev.axis_in_basin_of_one == ev.axis_samples;
  return ev;
}

}  // namespace newtonmaps

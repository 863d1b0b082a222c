#pragma once

// Newton maps N_R(z) = z - R(z)/R'(z): construction, fixed points with their
// multipliers and residue indices, the Newton-map characterization by
// multipliers of the form r/s with |r - s| = 1, and exceptional points.

#include <cmath>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "newtonmaps/complex_poly.hpp"
#include "newtonmaps/rational_map.hpp"

namespace newtonmaps {

/// Band around |lambda| = 1 (and around 0) used when classifying multipliers.
inline constexpr double kMultiplierBand = 1e-9;

enum class FixedPointClass { superattracting, attracting, indifferent, repelling };
enum class FixedPointOrigin { root, pole, infinity, plain };

inline const char* to_string(FixedPointClass k) {
  switch (k) {
    case FixedPointClass::superattracting: return "superattracting";
    case FixedPointClass::attracting: return "attracting";
    case FixedPointClass::indifferent: return "indifferent";
    case FixedPointClass::repelling: return "repelling";
  }
  return "?";
}

inline const char* to_string(FixedPointOrigin o) {
  switch (o) {
    case FixedPointOrigin::root: return "root";
    case FixedPointOrigin::pole: return "pole";
    case FixedPointOrigin::infinity: return "infinity";
    case FixedPointOrigin::plain: return "plain";
  }
  return "?";
}

inline FixedPointClass classify_multiplier(cplx lambda) {
  const double m = std::abs(lambda);
  if (m < kMultiplierBand) return FixedPointClass::superattracting;
  if (std::abs(m - 1.0) <= kMultiplierBand) return FixedPointClass::indifferent;
  return m < 1.0 ? FixedPointClass::attracting : FixedPointClass::repelling;
}

inline bool is_attracting(FixedPointClass k) {
  return k == FixedPointClass::attracting || k == FixedPointClass::superattracting;
}

struct FixedPointRecord {
  SpherePoint location;
  cplx multiplier;
  FixedPointClass klass;
  /// 1/(1 - lambda) for a simple fixed point; NaN otherwise.
  cplx residue_index;
  /// Multiplicity as a solution of N(z) = z.
  int multiplicity = 1;
  /// Root or pole of the underlying R inferred from the multiplier, when it is
  /// (k-1)/k or (l+1)/l; origin_multiplicity carries k or l.
  FixedPointOrigin origin = FixedPointOrigin::plain;
  int origin_multiplicity = 0;
};

struct FractionMatch {
  int r = 0;
  int s = 1;
  double error = 0.0;
};

/// Largest root/pole multiplicity the multiplier tests look for. Multiplicity is
/// not bounded by deg N (N of z^k is (1 - 1/k) z for every k).
inline constexpr int kMaxMultiplicity = 1000;

/// r/s with |r - s| = 1 and 1 <= s <= max_s nearest to lambda, accepted if the
/// distance is below tol. Solved directly: lambda = 1 -+ 1/s.
inline std::optional<FractionMatch> match_newton_fraction(cplx lambda, int max_s = kMaxMultiplicity,
                                                          double tol = 1e-6) {
  if (std::abs(1.0 - lambda) < 1.0 / (max_s + 1.0)) return std::nullopt;
  const cplx t = 1.0 / (1.0 - lambda);  // s for a root, -s for a pole
  const double s = std::round(std::abs(t.real()));
  if (s < 1 || s > max_s) return std::nullopt;
  const int si = static_cast<int>(s);
  const int r = t.real() > 0 ? si - 1 : si + 1;
  const double err = std::abs(lambda - static_cast<double>(r) / si);
  if (err < tol) return FractionMatch{r, si, err};
  return std::nullopt;
}

/// Newton map of R = c * prod (z - a_i)^{k_i} / prod (z - b_j)^{l_j}, built from
/// the logarithmic derivative R'/R = A/B with B = prod (z - a_i) prod (z - b_j).
/// The result (zA - B)/A is already reduced.
inline RationalMap newton_from_factors(const RootList& zeros, const RootList& poles) {
  if (zeros.empty() && poles.empty()) throw std::invalid_argument("newton_map: R is constant");
  std::vector<cplx> points;
  std::vector<double> weights;
  for (const auto& r : zeros) {
    points.push_back(r.value);
    weights.push_back(r.multiplicity);
  }
  for (const auto& p : poles) {
    points.push_back(p.value);
    weights.push_back(-p.multiplicity);
  }
  const Polynomial B = Polynomial::from_roots(std::span<const cplx>(points));
  Polynomial A;
  for (std::size_t i = 0; i < points.size(); ++i) {
    std::vector<cplx> others;
    for (std::size_t j = 0; j < points.size(); ++j)
      if (j != i) others.push_back(points[j]);
    A = A + weights[i] * Polynomial::from_roots(std::span<const cplx>(others));
  }
  A = A.trimmed(1e-13);
  const Polynomial z = Polynomial::monomial(1.0, 1);
  return RationalMap::coprime((z * A - B).trimmed(1e-13), A);
}

/// N_R(z) = z - R(z)/R'(z), reduced.
inline RationalMap newton_map(const RationalMap& r) {
  if (r.is_constant()) throw std::invalid_argument("newton_map: R is constant");
  const auto rp = roots_and_poles(r);
  return newton_from_factors(rp.roots, rp.poles);
}

/// m + n - 1 if d = e + 1, else m + n, where m and n count distinct finite
/// roots and poles and d, e are the numerator and denominator degrees.
inline int expected_degree(const RationalMap& r) {
  const auto rp = roots_and_poles(r);
  const int m = static_cast<int>(rp.roots.size());
  const int n = static_cast<int>(rp.poles.size());
  const int d = std::max(r.num().degree(), 0);
  const int e = r.den().degree();
  return d == e + 1 ? m + n - 1 : m + n;
}

/// Multiplier of infinity computed in the chart w = 1/z; infinity must be fixed.
inline cplx multiplier_at_infinity(const RationalMap& n) {
  const int a = n.num().degree();
  const int b = n.den().degree();
  if (a <= b) throw std::logic_error("multiplier_at_infinity: infinity is not fixed");
  if (a - b >= 2) return 0.0;
  return n.den().leading() / n.num().leading();
}

/// All fixed points of N on the sphere: roots of z*den - num together with
/// infinity, which carries the multiplicity missing from that polynomial.
inline std::vector<FixedPointRecord> fixed_points(const RationalMap& n) {
  const int D = n.degree();
  if (D < 1) throw std::invalid_argument("fixed_points: map must be nonconstant");
  const Polynomial z = Polynomial::monomial(1.0, 1);
  const Polynomial F = (z * n.den() - n.num()).trimmed(1e-13);
  if (F.is_zero()) throw std::invalid_argument("fixed_points: identity map");

  auto make = [&](const SpherePoint& loc, cplx lambda, int mult) {
    FixedPointRecord rec{loc, lambda, classify_multiplier(lambda), cplx{std::nan(""), std::nan("")}, mult};
    if (mult == 1 && std::abs(1.0 - lambda) > kMultiplierBand) rec.residue_index = 1.0 / (1.0 - lambda);
    if (loc.is_infinity()) {
      rec.origin = FixedPointOrigin::infinity;
    } else if (auto f = match_newton_fraction(lambda)) {
      rec.origin = f->r < f->s ? FixedPointOrigin::root : FixedPointOrigin::pole;
      rec.origin_multiplicity = f->s;
    }
    return rec;
  };

  std::vector<FixedPointRecord> out;
  if (F.degree() >= 1)
    for (const auto& r : roots(F)) out.push_back(make(r.value, n.derivative_at(r.value), r.multiplicity));
  const int at_infinity = D + 1 - std::max(F.degree(), 0);
  if (at_infinity >= 1) out.push_back(make(SpherePoint::infinity(), multiplier_at_infinity(n), at_infinity));
  return out;
}

/// Sum of residue indices 1/(1 - lambda) over all fixed points.
inline cplx residue_sum(const RationalMap& n) {
  if (n.degree() < 2) throw std::invalid_argument("residue_sum: degree must be at least 2");
  cplx sum{};
  for (const auto& fp : fixed_points(n)) {
    if (fp.multiplicity != 1 || std::abs(1.0 - fp.multiplier) <= kMultiplierBand)
      throw std::domain_error("residue_sum: non-simple fixed point");
    sum += fp.residue_index;
  }
  return sum;
}

struct FixedPointWitness {
  SpherePoint location;
  cplx multiplier;
  std::optional<FractionMatch> fraction;
  std::string failure;
};

struct CharacterizationReport {
  bool is_newton = false;
  std::string reason;
  std::vector<FixedPointWitness> witnesses;
  /// R rebuilt from the finite fixed points (roots where r < s, poles where r > s).
  std::optional<RationalMap> reconstructed_R;
  /// newton_map(reconstructed_R) equals the input map.
  bool reconstruction_verified = false;
};

/// A rational map of degree >= 2 is a Newton map iff all its fixed points are
/// simple and all but one multiplier has the form r/s with |r - s| = 1.
inline CharacterizationReport characterize(const RationalMap& n) {
  const int D = n.degree();
  if (D < 2) throw std::invalid_argument("characterize: degree must be at least 2");
  CharacterizationReport rep;
  const auto fps = fixed_points(n);
  int unmatched = 0;
  bool simple = true;
  bool finite_unmatched = false;
  for (const auto& fp : fps) {
    FixedPointWitness w{fp.location, fp.multiplier, std::nullopt, {}};
    if (fp.multiplicity != 1) {
      simple = false;
      w.failure = "fixed point of multiplicity " + std::to_string(fp.multiplicity);
    } else {
      w.fraction = match_newton_fraction(fp.multiplier);
      if (!w.fraction) {
        ++unmatched;
        if (fp.location.is_finite()) finite_unmatched = true;
        w.failure = "multiplier is not r/s with |r-s|=1";
      }
    }
    rep.witnesses.push_back(std::move(w));
  }
  if (!simple) {
    rep.reason = "non-simple fixed point";
    return rep;
  }
  if (unmatched > 1) {
    rep.reason = std::to_string(unmatched) + " multipliers fail the r/s test";
    return rep;
  }
  rep.is_newton = true;
  if (finite_unmatched) return rep;

  RootList zeros, poles;
  for (const auto& w : rep.witnesses) {
    if (w.location.is_infinity()) continue;
    if (w.fraction->r < w.fraction->s)
      zeros.push_back({w.location.value(), w.fraction->s});
    else
      poles.push_back({w.location.value(), w.fraction->s});
  }
  if (zeros.empty() && poles.empty()) return rep;
  rep.reconstructed_R = RationalMap::coprime(Polynomial::from_roots(zeros), Polynomial::from_roots(poles));
  rep.reconstruction_verified = maps_equal(newton_from_factors(zeros, poles), n, 1e-8);
  return rep;
}

/// Fixed points w whose only preimage is w itself with full multiplicity.
inline std::vector<SpherePoint> exceptional_points(const RationalMap& n, double tol = 1e-8) {
  const int D = n.degree();
  if (D < 2) throw std::invalid_argument("exceptional_points: degree must be at least 2");
  std::vector<SpherePoint> out;
  for (const auto& fp : fixed_points(n)) {
    if (fp.location.is_infinity()) {
      if (n.is_polynomial()) out.push_back(fp.location);
      continue;
    }
    const cplx w = fp.location.value();
    const Polynomial G = (n.num() - w * n.den()).trimmed(1e-13);
    if (G.degree() != D) continue;
    const Polynomial H = G.leading() * Polynomial::linear_factor(w).pow(D);
    const double scale = std::max(G.max_abs_coeff(), H.max_abs_coeff());
    bool full = true;
    for (int k = 0; k <= D; ++k)
      if (std::abs(G[k] - H[k]) > tol * scale) full = false;
    if (full) out.push_back(fp.location);
  }
  return out;
}

struct AttractingCount {
  int attracting = 0;
  int repelling = 0;
};

inline AttractingCount count_attracting(const RationalMap& n) {
  AttractingCount c;
  for (const auto& fp : fixed_points(n)) {
    if (is_attracting(fp.klass)) ++c.attracting;
    if (fp.klass == FixedPointClass::repelling) ++c.repelling;
  }
  return c;
}

}  // namespace newtonmaps

#pragma once

// Scaling transforms of the source function and Möbius normal forms of
// Newton maps. Every conjugation returns the transform it used so callers can
// carry points back to the original coordinates.

#include <stdexcept>
#include <vector>

#include "newtonmaps/newton_core.hpp"
#include "newtonmaps/rational_map.hpp"

namespace newtonmaps {

/// S(z) = lambda * R(a z + b).
struct AffineScaling {
  cplx a = 1.0;
  cplx b = 0.0;
  cplx lambda = 1.0;

  AffineScaling() = default;
  AffineScaling(cplx a_, cplx b_, cplx lambda_) : a(a_), b(b_), lambda(lambda_) {
    if (a == cplx{} || lambda == cplx{}) throw std::invalid_argument("AffineScaling: a and lambda must be nonzero");
  }

  /// T(z) = a z + b as a Möbius transform.
  MobiusTransform transform() const { return MobiusTransform::affine(a, b); }
};

inline RationalMap scale_source(const RationalMap& r, const AffineScaling& t) {
  return RationalMap::coprime(t.lambda * r.num().compose_affine(t.a, t.b), r.den().compose_affine(t.a, t.b));
}

struct ConjugatedMap {
  RationalMap map;
  /// phi with map = phi o N o phi^{-1}.
  MobiusTransform phi;
};

/// Conjugate N so that z1 goes to 0 and z2 to infinity:
/// phi(z) = (z - z1)/(z - z2), with the infinite cases handled separately.
inline ConjugatedMap normalize_two_fixed(const RationalMap& n, const SpherePoint& z1, const SpherePoint& z2) {
  if (z1 == z2) throw std::invalid_argument("normalize_two_fixed: z1 and z2 coincide");
  MobiusTransform phi = MobiusTransform::identity();
  if (z2.is_infinity())
    phi = MobiusTransform::affine(1.0, -z1.value());
  else if (z1.is_infinity())
    phi = MobiusTransform(0.0, 1.0, 1.0, -z2.value());
  else
    phi = MobiusTransform(1.0, -z1.value(), 1.0, -z2.value());
  return {conjugate_by_mobius(n, phi.inverse()), phi};
}

/// Conjugate a Newton map with exactly one repelling fixed point z0 so that
/// z0 sits at infinity (psi(z) = 1/(z - z0)), making it N_p for a polynomial p.
inline ConjugatedMap to_polynomial_newton(const RationalMap& n) {
  std::vector<SpherePoint> repelling;
  for (const auto& fp : fixed_points(n))
    if (fp.klass == FixedPointClass::repelling) repelling.push_back(fp.location);
  if (repelling.size() != 1)
    throw std::invalid_argument("to_polynomial_newton: expected exactly one repelling fixed point, found " +
                                std::to_string(repelling.size()));
  if (repelling.front().is_infinity()) return {n, MobiusTransform::identity()};
  const MobiusTransform psi(0.0, 1.0, 1.0, -repelling.front().value());
  return {conjugate_by_mobius(n, psi.inverse()), psi};
}

/// { T^{-1} o phi o T : phi in symmetries }.
inline std::vector<MobiusTransform> transport_symmetry(const std::vector<MobiusTransform>& symmetries,
                                                       const MobiusTransform& t) {
  std::vector<MobiusTransform> out;
  out.reserve(symmetries.size());
  for (const auto& phi : symmetries) out.push_back(t.inverse().compose(phi).compose(t));
  return out;
}

}  // namespace newtonmaps

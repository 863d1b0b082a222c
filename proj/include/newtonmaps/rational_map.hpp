#pragma once

#include <cmath>
#include <complex>
#include <optional>
#include <stdexcept>
#include <utility>

#include "newtonmaps/complex_poly.hpp"

namespace newtonmaps {

/// A point of the Riemann sphere: a finite complex number or infinity.
class SpherePoint {
 public:
  SpherePoint(cplx z) : z_(z) {}  // NOLINT: implicit from a finite value

  static SpherePoint infinity() { return SpherePoint(); }

  bool is_infinity() const { return !z_.has_value(); }
  bool is_finite() const { return z_.has_value(); }

  cplx value() const {
    if (!z_) throw std::logic_error("SpherePoint: infinity has no finite value");
    return *z_;
  }

  /// Explicit promotion: a finite point with |z| above threshold becomes infinity.
  SpherePoint promoted(double threshold) const {
    if (z_ && std::abs(*z_) > threshold) return infinity();
    return *this;
  }

  friend bool operator==(const SpherePoint&, const SpherePoint&) = default;

 private:
  SpherePoint() = default;
  std::optional<cplx> z_;
};

/// Chordal-ish distance used for matching points: |a - b| for finite points,
/// 0 for two infinities and +inf otherwise.
inline double sphere_distance(const SpherePoint& a, const SpherePoint& b) {
  if (a.is_infinity() && b.is_infinity()) return 0.0;
  if (a.is_infinity() || b.is_infinity()) return std::numeric_limits<double>::infinity();
  return std::abs(a.value() - b.value());
}

/// Quotient num/den of coprime polynomials; the denominator is monic.
class RationalMap {
 public:
  RationalMap() : num_(), den_(Polynomial::constant(1.0)) {}

  /// Divide out the numeric GCD and normalize the denominator to be monic.
  static RationalMap reduce(const Polynomial& num, const Polynomial& den, double gcd_tol = 1e-6) {
    if (den.is_zero()) throw std::invalid_argument("RationalMap: zero denominator");
    if (num.is_zero()) return RationalMap();
    const Polynomial g = gcd_numeric(num, den, gcd_tol);
    if (g.degree() < 1) return coprime(num, den);
    return coprime(divmod(num, g).first, divmod(den, g).first);
  }

  /// Caller guarantees num and den share no root; only the gauge is fixed.
  static RationalMap coprime(const Polynomial& num, const Polynomial& den) {
    if (den.is_zero()) throw std::invalid_argument("RationalMap: zero denominator");
    RationalMap r;
    const cplx lead = den.leading();
    r.num_ = num * (1.0 / lead);
    if (den.degree() == 0) {
      r.den_ = Polynomial::constant(1.0);
    } else {
      // exactly monic; 1/lead * lead can be off by an ulp
      auto c = (den * (1.0 / lead)).ascending();
      c.back() = 1.0;
      r.den_ = Polynomial::from_ascending(std::move(c));
    }
    return r;
  }

  static RationalMap polynomial(const Polynomial& p) { return coprime(p, Polynomial::constant(1.0)); }

  const Polynomial& num() const { return num_; }
  const Polynomial& den() const { return den_; }

  int degree() const { return std::max(std::max(num_.degree(), 0), den_.degree()); }
  bool is_polynomial() const { return den_.degree() == 0; }
  bool is_constant() const { return degree() == 0; }

  /// Value at a finite point; a root of the denominator maps to infinity.
  SpherePoint operator()(cplx z) const {
    const cplx d = den_(z);
    const cplx n = num_(z);
    if (d == cplx{}) {
      if (n == cplx{}) throw std::domain_error("RationalMap: 0/0 at evaluation point (map not reduced)");
      return SpherePoint::infinity();
    }
    return n / d;
  }

  SpherePoint operator()(const SpherePoint& z) const {
    if (z.is_finite()) return (*this)(z.value());
    return value_at_infinity();
  }

  SpherePoint value_at_infinity() const {
    const int a = num_.degree();
    const int b = den_.degree();
    if (a > b) return SpherePoint::infinity();
    if (a < b) return cplx{};
    return num_.leading() / den_.leading();
  }

  /// Quotient rule, reduced.
  RationalMap derivative() const {
    const Polynomial top = num_.derivative() * den_ - num_ * den_.derivative();
    if (top.is_zero()) return RationalMap();
    return reduce(top, den_ * den_);
  }

  /// Derivative value at a finite non-pole point, without forming the map.
  cplx derivative_at(cplx z) const {
    auto [n, dn] = num_.eval_with_derivative(z);
    auto [d, dd] = den_.eval_with_derivative(z);
    return (dn * d - n * dd) / (d * d);
  }

 private:
  Polynomial num_;
  Polynomial den_;
};

struct RootsAndPoles {
  RootList roots;
  RootList poles;
  /// Order of the root (num degree < den degree) or pole (num degree > den degree) at infinity; 0 if neither.
  int root_at_infinity = 0;
  int pole_at_infinity = 0;
};

inline RootsAndPoles roots_and_poles(const RationalMap& r) {
  if (r.is_constant()) throw std::invalid_argument("roots_and_poles: constant map");
  RootsAndPoles out;
  if (r.num().degree() >= 1) out.roots = roots(r.num());
  if (r.den().degree() >= 1) out.poles = roots(r.den());
  const int diff = r.num().degree() - r.den().degree();
  if (diff > 0) out.pole_at_infinity = diff;
  if (diff < 0) out.root_at_infinity = -diff;
  return out;
}

/// z -> (a z + b) / (c z + d) with ad - bc != 0.
class MobiusTransform {
 public:
  MobiusTransform(cplx a, cplx b, cplx c, cplx d) : a_(a), b_(b), c_(c), d_(d) {
    if (a * d - b * c == cplx{}) throw std::invalid_argument("MobiusTransform: ad - bc = 0");
  }

  static MobiusTransform identity() { return {1.0, 0.0, 0.0, 1.0}; }
  static MobiusTransform affine(cplx a, cplx b) { return {a, b, 0.0, 1.0}; }
  static MobiusTransform inversion() { return {0.0, 1.0, 1.0, 0.0}; }

  cplx a() const { return a_; }
  cplx b() const { return b_; }
  cplx c() const { return c_; }
  cplx d() const { return d_; }

  SpherePoint operator()(const SpherePoint& z) const {
    if (z.is_infinity()) {
      if (c_ == cplx{}) return SpherePoint::infinity();
      return a_ / c_;
    }
    const cplx den = c_ * z.value() + d_;
    if (den == cplx{}) return SpherePoint::infinity();
    return (a_ * z.value() + b_) / den;
  }

  MobiusTransform inverse() const { return {d_, -b_, -c_, a_}; }

  /// (this o other)(z) = this(other(z)).
  MobiusTransform compose(const MobiusTransform& o) const {
    return {a_ * o.a_ + b_ * o.c_, a_ * o.b_ + b_ * o.d_, c_ * o.a_ + d_ * o.c_, c_ * o.b_ + d_ * o.d_};
  }

  /// Same projective transform up to scale, within tol.
  bool approx_equal(const MobiusTransform& o, double tol) const {
    const cplx u[4] = {a_, b_, c_, d_};
    const cplx v[4] = {o.a_, o.b_, o.c_, o.d_};
    std::size_t piv = 0;
    for (std::size_t k = 1; k < 4; ++k)
      if (std::abs(u[k]) > std::abs(u[piv])) piv = k;
    if (v[piv] == cplx{}) return false;
    const cplx s = u[piv] / v[piv];
    double scale = 0.0;
    for (const auto& x : u) scale = std::max(scale, std::abs(x));
    for (std::size_t k = 0; k < 4; ++k)
      if (std::abs(u[k] - s * v[k]) > tol * scale) return false;
    return true;
  }

 private:
  cplx a_, b_, c_, d_;
};

namespace detail {

// sum_k p_k (a z + b)^k (c z + d)^(D - k)
inline Polynomial homogenized(const Polynomial& p, int D, const Polynomial& top, const Polynomial& bottom) {
  Polynomial result;
  Polynomial top_pow = Polynomial::constant(1.0);
  for (int k = 0; k <= p.degree(); ++k) {
    if (p[k] != cplx{}) result = result + p[k] * top_pow * bottom.pow(D - k);
    top_pow = top_pow * top;
  }
  return result;
}

}  // namespace detail

/// phi^{-1} o R o phi, composed at the polynomial level.
inline RationalMap conjugate_by_mobius(const RationalMap& r, const MobiusTransform& phi) {
  const int D = r.degree();
  const Polynomial top = Polynomial::from_ascending({phi.b(), phi.a()});
  const Polynomial bottom = Polynomial::from_ascending({phi.d(), phi.c()});
  const Polynomial P = detail::homogenized(r.num(), D, top, bottom);
  const Polynomial Q = detail::homogenized(r.den(), D, top, bottom);
  const Polynomial num = (phi.d() * P - phi.b() * Q).trimmed(1e-14);
  const Polynomial den = (phi.a() * Q - phi.c() * P).trimmed(1e-14);
  return RationalMap::coprime(num, den);
}

/// Equality of maps: num1*den2 - num2*den1 vanishes coefficient-wise within
/// tol times the largest coefficient magnitude of the (normalized) inputs.
inline bool maps_equal(const RationalMap& r1, const RationalMap& r2, double tol) {
  const Polynomial cross = r1.num() * r2.den() - r2.num() * r1.den();
  const double scale = std::max({r1.num().max_abs_coeff(), r1.den().max_abs_coeff(), r2.num().max_abs_coeff(),
                                 r2.den().max_abs_coeff()});
  for (const auto& c : cross.ascending())
    if (std::abs(c) > tol * scale) return false;
  return true;
}

/// Equality of maps up to a nonzero scalar factor (both numerators made monic).
inline bool maps_equal_up_to_scalar(const RationalMap& r1, const RationalMap& r2, double tol) {
  if (r1.num().is_zero() || r2.num().is_zero()) return r1.num().is_zero() && r2.num().is_zero();
  const auto n1 = RationalMap::coprime(r1.num().monic(), r1.den());
  const auto n2 = RationalMap::coprime(r2.num().monic(), r2.den());
  return maps_equal(n1, n2, tol);
}

}  // namespace newtonmaps

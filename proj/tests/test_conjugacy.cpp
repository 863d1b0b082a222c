#include <gtest/gtest.h>

#include <random>

#include "newtonmaps/conjugacy.hpp"
#include "newtonmaps/mcmullen.hpp"
#include "oracles.hpp"

using namespace newtonmaps;

namespace {

RationalMap rat(std::initializer_list<cplx> num, std::initializer_list<cplx> den) {
  return RationalMap::coprime(Polynomial(num), Polynomial(den));
}

}  // namespace

TEST(ScaleSource, PoleAtZ0BecomesMonomial) {
  const cplx c{2.0, -1.0}, z0{0.5, 0.25};
  const int k = 3;
  const auto R = RationalMap::coprime(Polynomial::constant(c), Polynomial::linear_factor(z0).pow(k));
  const auto S = scale_source(R, AffineScaling(1.0, z0, 1.0 / c));
  EXPECT_TRUE(maps_equal(S, RationalMap::coprime(Polynomial::constant(1.0), Polynomial::monomial(1.0, k)), 1e-12));
  // the Newton map of 1/z^k is (1 + 1/k) z
  const auto N = newton_from_factors({}, {{0.0, k}});
  EXPECT_TRUE(maps_equal(N, RationalMap::polynomial(Polynomial({1.0 + 1.0 / k, 0})), 1e-12));
}

TEST(ScaleSource, McMullenLambdaToOne) {
  const int m = 2, n = 3;
  const cplx lambda{0.7, 1.3};
  const cplx rho = std::pow(lambda, 1.0 / (m + n));
  const auto S = scale_source(mcmullen_map({m, n, lambda}), AffineScaling(rho, 0.0, std::pow(rho, n) / lambda));
  EXPECT_TRUE(maps_equal(S, mcmullen_map({m, n, 1.0}), 1e-12));
}

TEST(ScaleSource, IdentityAndValidation) {
  const auto R = rat({1, 2, 3}, {1, -1});
  EXPECT_TRUE(maps_equal(scale_source(R, AffineScaling()), R, 1e-15));
  EXPECT_THROW(AffineScaling(0.0, 1.0, 1.0), std::invalid_argument);
  EXPECT_THROW(AffineScaling(1.0, 1.0, 0.0), std::invalid_argument);
}

// T o N_S o T^{-1} = N_R, checked pointwise against the direct z - R/R'
TEST(ScaleSource, NewtonConjugacyPointwise) {
  std::mt19937_64 rng(77);
  for (int t = 0; t < 20; ++t) {
    const RootList zs{{oracle::random_point(rng, 1.0), 2}, {oracle::random_point(rng, 1.0) + 3.0, 1}};
    const RootList ps{{oracle::random_point(rng, 1.0) - 3.0, 1}};
    const auto R = RationalMap::coprime(Polynomial::from_roots(zs), Polynomial::from_roots(ps));
    const AffineScaling T(oracle::random_point(rng, 1.0) + 1.5, oracle::random_point(rng, 1.0), {0.3, 2.0});
    const auto NS = newton_map(scale_source(R, T));
    const std::vector<cplx> num(R.num().ascending()), den(R.den().ascending());
    for (int s = 0; s < 10; ++s) {
      const cplx z = oracle::random_point(rng, 2.0);
      const cplx lhs = T.a * NS((z - T.b) / T.a).value() + T.b;
      const cplx ref = oracle::newton_pointwise(num, den, z);
      EXPECT_LT(std::abs(lhs - ref), 1e-8 * (1 + std::abs(ref)));
    }
  }
}

TEST(NormalizeTwoFixed, AttractingPairToZeroInfinity) {
  const auto N = rat({1, 0, 1}, {2, 0});
  const auto res = normalize_two_fixed(N, cplx(1), cplx(-1));
  EXPECT_EQ(res.map.degree(), 2);
  const auto fps = fixed_points(res.map);
  for (const auto& fp : fps) {
    if (fp.location.is_infinity() || std::abs(fp.location.value()) < 1e-9) {
      EXPECT_LT(std::abs(fp.multiplier), 1e-9);
    }
  }
  // here it is z^2
  EXPECT_TRUE(maps_equal(res.map, rat({1, 0, 0}, {1}), 1e-12));
  EXPECT_TRUE(res.phi(cplx(1)) == SpherePoint(cplx{}));
  EXPECT_TRUE(res.phi(cplx(-1)).is_infinity());
}

TEST(NormalizeTwoFixed, AlreadyNormalized) {
  const auto N = rat({1, 0, 0, 2, 0}, {3});
  EXPECT_TRUE(maps_equal(normalize_two_fixed(N, cplx(0), SpherePoint::infinity()).map, N, 1e-14));
  EXPECT_THROW(normalize_two_fixed(N, cplx(0), cplx(0)), std::invalid_argument);
}

// exceptional attracting point to infinity gives a polynomial
TEST(NormalizeTwoFixed, ExceptionalPointGivesPolynomial) {
  // F_1 moved by a Mobius map, then brought back
  const auto F1 = RationalMap::polynomial(Polynomial({1. / 12, 1. / 12, 1. / 12, 9. / 12, 0}));
  const MobiusTransform psi(1.0, 2.0, 1.0, -1.0);
  const auto moved = conjugate_by_mobius(F1, psi);  // psi^{-1} o F1 o psi
  const auto p0 = psi.inverse()(cplx(0)), pinf = psi.inverse()(SpherePoint::infinity());
  const auto back = normalize_two_fixed(moved, p0, pinf);
  // equal to F1 up to a scaling z -> c z, which keeps degree and multipliers
  EXPECT_TRUE(back.map.is_polynomial());
  EXPECT_EQ(back.map.degree(), 4);
  EXPECT_LT(std::abs(back.map(cplx(0)).value()), 1e-9);
  EXPECT_LT(std::abs(back.map.derivative_at(0.0) - 0.75), 1e-9);
}

TEST(ToPolynomialNewton, PolynomialNewtonUnchanged) {
  const auto N = newton_map(rat({1, 0, 0, -1}, {1}));
  const auto res = to_polynomial_newton(N);
  EXPECT_TRUE(maps_equal(res.map, N, 1e-14));
}

TEST(ToPolynomialNewton, PolesOverZk) {
  // R = (z^2 + z + 1)/z : single repelling fixed point at 0
  const auto N = newton_map(rat({1, 1, 1}, {1, 0}));
  const auto res = to_polynomial_newton(N);
  EXPECT_TRUE(res.phi(cplx(0)).is_infinity());
  EXPECT_TRUE(characterize(res.map).is_newton);
  const auto fps = fixed_points(res.map);
  for (const auto& fp : fps)
    if (fp.location.is_finite()) EXPECT_NE(fp.klass, FixedPointClass::repelling);
}

TEST(ToPolynomialNewton, LineCaseIsNewtonOfZSquaredMinusOne) {
  const auto res = to_polynomial_newton(newton_mcmullen(1, 1));
  EXPECT_TRUE(maps_equal(res.map, rat({1, 0, 1}, {2, 0}), 1e-12));
  EXPECT_THROW(to_polynomial_newton(rat({1, 0, 2, 0}, {3, 0, 1})), std::invalid_argument);
}

TEST(TransportSymmetry, Rotations) {
  std::vector<MobiusTransform> rot;
  for (int k = 0; k < 5; ++k) rot.push_back(MobiusTransform::affine(std::polar(1.0, 2 * std::numbers::pi * k / 5), 0.0));
  const auto T = MobiusTransform::affine(std::pow(cplx(0.4, 1.1), 0.2), 0.0);
  const auto out = transport_symmetry(rot, T);
  for (std::size_t k = 0; k < rot.size(); ++k) EXPECT_TRUE(out[k].approx_equal(rot[k], 1e-12));
  const auto id = transport_symmetry({MobiusTransform::identity()}, T);
  EXPECT_TRUE(id[0].approx_equal(MobiusTransform::identity(), 1e-14));
}

TEST(TransportSymmetry, TranslationMovesRotationCenter) {
  const cplx mu = std::polar(1.0, 2 * std::numbers::pi / 3);
  const auto out = transport_symmetry({MobiusTransform::affine(mu, 0.0)}, MobiusTransform::affine(1.0, 1.0));
  // z -> mu (z + 1) - 1 fixes -1
  EXPECT_TRUE(out[0].approx_equal(MobiusTransform::affine(mu, mu - 1.0), 1e-12));
}

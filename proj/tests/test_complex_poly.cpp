#include <gtest/gtest.h>

#include <random>

#include "newtonmaps/complex_poly.hpp"
#include "oracles.hpp"

using namespace newtonmaps;

namespace {

const cplx I{0.0, 1.0};

bool has_root(const RootList& rl, cplx z, int mult, double tol = 1e-8) {
  for (const auto& r : rl)
    if (std::abs(r.value - z) < tol && r.multiplicity == mult) return true;
  return false;
}

}  // namespace

TEST(Polynomial, EvalExamples) {
  EXPECT_LT(std::abs(Polynomial({1, 0, 1})(I)), 1e-15);
  EXPECT_LT(std::abs(Polynomial({1, 0, 0, 0, -1})(1.0)), 1e-15);
  EXPECT_EQ(Polynomial({1, 1, 1, 9})(1.0), cplx(12.0));
}

TEST(Polynomial, ZeroIsCanonical) {
  Polynomial z;
  EXPECT_TRUE(z.is_zero());
  EXPECT_EQ(z.degree(), -1);
  EXPECT_EQ(Polynomial({0, 0}), z);
  EXPECT_EQ(Polynomial({1, 2}) - Polynomial({1, 2}), z);
}

TEST(Polynomial, Derivative) {
  EXPECT_EQ(Polynomial({1, 0, 0, -1}).derivative(), Polynomial({3, 0, 0}));
  EXPECT_TRUE(Polynomial::constant(5.0).derivative().is_zero());
  EXPECT_EQ(Polynomial({1, 0, 0, 0, 0, -1}).derivative(), Polynomial::monomial(5.0, 4));
}

TEST(Polynomial, Arithmetic) {
  EXPECT_EQ(Polynomial({1, -1}) * Polynomial({1, 1}), Polynomial({1, 0, -1}));
  // (z-1)^2 (z+2) = z^3 - 3z + 2
  EXPECT_EQ(Polynomial({1, -1}).pow(2) * Polynomial({1, 2}), Polynomial({1, 0, -3, 2}));
  const Polynomial p{2, 3, 4};
  EXPECT_EQ(p + Polynomial(), p);
}

TEST(Polynomial, DegreeOfProduct) {
  std::mt19937_64 rng(7);
  for (int t = 0; t < 20; ++t) {
    std::vector<cplx> a(4), b(3);
    for (auto& x : a) x = oracle::random_point(rng, 1.0);
    for (auto& x : b) x = oracle::random_point(rng, 1.0);
    const auto p = Polynomial::from_ascending(a), q = Polynomial::from_ascending(b);
    EXPECT_EQ((p * q).degree(), p.degree() + q.degree());
  }
}

TEST(Roots, RootsOfUnity) {
  const auto r = roots(Polynomial({1, 0, 0, 0, -1}));
  ASSERT_EQ(r.size(), 4u);
  for (cplx z : {cplx(1), I, cplx(-1), -I}) EXPECT_TRUE(has_root(r, z, 1));
}

TEST(Roots, DoubleRootWithQuadratic) {
  const auto p = Polynomial({1, -1}).pow(2) * Polynomial({1, 2, 3});
  const auto r = roots(p);
  ASSERT_EQ(r.size(), 3u);
  EXPECT_TRUE(has_root(r, 1.0, 2));
  EXPECT_TRUE(has_root(r, cplx(-1, std::sqrt(2.0)), 1));
  EXPECT_TRUE(has_root(r, cplx(-1, -std::sqrt(2.0)), 1));
}

TEST(Roots, FifthRootsOfSix) {
  const auto r = roots(Polynomial({1, 0, 0, 0, 0, -6}));
  ASSERT_EQ(r.size(), 5u);
  for (const auto& x : r) EXPECT_NEAR(std::abs(x.value), std::pow(6.0, 0.2), 1e-12);
  EXPECT_NEAR(std::pow(6.0, 0.2), 1.43097, 5e-6);
}

TEST(Roots, ConstantThrows) { EXPECT_THROW(roots(Polynomial::constant(3.0)), std::invalid_argument); }

TEST(Roots, ResidualWithinTolerance) {
  const Polynomial p{1, 2, 3, 4, 5, 6};
  for (const auto& r : roots(p, 1e-12)) EXPECT_LE(std::abs(p(r.value)), 1e-12 * p.max_abs_coeff() * 10);
}

TEST(Roots, AgreesWithDurandKerner) {
  std::mt19937_64 rng(11);
  for (int t = 0; t < 20; ++t) {
    std::vector<cplx> c(7);
    for (auto& x : c) x = oracle::random_point(rng, 1.0);
    const auto ref = oracle::durand_kerner(c);
    const auto got = roots(Polynomial::from_ascending(c));
    ASSERT_EQ(total_multiplicity(got), 6);
    for (const auto& r : got) EXPECT_LT(oracle::nearest(ref, r.value), 1e-8);
  }
}

// random p with multiplicities: rebuilding from roots reproduces p
TEST(Roots, ReconstructionProperty) {
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<int> cnt(1, 4), mult(1, 3);
  int tested = 0;
  while (tested < 50) {
    RootList rl;
    const int k = cnt(rng);
    for (int i = 0; i < k; ++i) {
      const cplx z = oracle::random_point(rng, 2.0);
      bool far = true;
      for (const auto& r : rl) far = far && std::abs(r.value - z) > 0.3;
      if (far) rl.push_back({z, mult(rng)});
    }
    if (total_multiplicity(rl) > 8) continue;
    ++tested;
    const cplx lead = oracle::random_point(rng, 2.0) + 0.5;
    const Polynomial p = lead * Polynomial::from_roots(rl);
    const auto got = roots(p);
    EXPECT_EQ(got.size(), rl.size());
    const Polynomial back = p.leading() * Polynomial::from_roots(got);
    for (int j = 0; j <= p.degree(); ++j) EXPECT_LE(std::abs(back[j] - p[j]), 1e-6 * p.max_abs_coeff());
  }
}

TEST(Polynomial, DerivativeMatchesFiniteDifference) {
  std::mt19937_64 rng(5);
  for (int t = 0; t < 50; ++t) {
    std::vector<cplx> c(6);
    for (auto& x : c) x = oracle::random_point(rng, 2.0);
    const auto p = Polynomial::from_ascending(c);
    const cplx z = oracle::random_point(rng, 1.5);
    const double h = 1e-6 * (1.0 + std::abs(z));
    const cplx fd = (p(z + h) - p(z - h)) / (2.0 * h);
    const cplx d = p.derivative()(z);
    EXPECT_LE(std::abs(d - fd), 1e-5 * std::max(1.0, std::abs(d)));
  }
}

TEST(Gcd, Examples) {
  EXPECT_EQ(gcd_numeric(Polynomial({1, 0, -1}), Polynomial({1, -1})).degree(), 1);
  EXPECT_NEAR(std::abs(gcd_numeric(Polynomial({1, 0, -1}), Polynomial({1, -1}))[0] + 1.0), 0.0, 1e-10);
  EXPECT_EQ(gcd_numeric(Polynomial({1, 0, 1}), Polynomial({1, 0, 2})).degree(), 0);
  const auto g = gcd_numeric(Polynomial({1, -1}).pow(2) * Polynomial({1, -3}), Polynomial({1, -1}) * Polynomial({1, 4}));
  ASSERT_EQ(g.degree(), 1);
  EXPECT_NEAR(std::abs(g[0] + 1.0), 0.0, 1e-9);
  EXPECT_THROW(gcd_numeric(Polynomial(), Polynomial()), std::invalid_argument);
}

TEST(Gcd, RecoversCommonFactor) {
  std::mt19937_64 rng(9);
  for (int t = 0; t < 20; ++t) {
    std::vector<cplx> gr(1 + t % 3);
    for (auto& x : gr) x = oracle::random_point(rng, 1.5);
    std::vector<cplx> pr{oracle::random_point(rng, 1.5) + 4.0, oracle::random_point(rng, 1.5) - 4.0};
    std::vector<cplx> qr{oracle::random_point(rng, 1.5) + cplx(0, 4), oracle::random_point(rng, 1.5) - cplx(0, 4)};
    const auto G = Polynomial::from_roots(std::span<const cplx>(gr));
    const auto g = gcd_numeric(Polynomial::from_roots(std::span<const cplx>(pr)) * G,
                               Polynomial::from_roots(std::span<const cplx>(qr)) * G);
    ASSERT_EQ(g.degree(), G.degree());
    for (const auto& r : roots(g)) EXPECT_LT(oracle::nearest(gr, r.value), 1e-6);
  }
}

TEST(Length, Examples) {
  EXPECT_NEAR(length(Polynomial::from_ascending({0, 9. / 12, 1. / 12, 1. / 12, 1. / 12})), 1.0, 1e-15);
  EXPECT_NEAR(length(Polynomial::from_ascending({0, 16. / 20, 1. / 20, 1. / 20, 1. / 20, 1. / 20})), 1.0, 1e-15);
  EXPECT_EQ(length(Polynomial({1, 2, 0})), 3.0);
}

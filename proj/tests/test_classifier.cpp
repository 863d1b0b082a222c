#include <gtest/gtest.h>

#include "newtonmaps/classifier.hpp"
#include "newtonmaps/conjugacy.hpp"

using namespace newtonmaps;

namespace {

const cplx I{0.0, 1.0};

bool g_is(const Polynomial& g, std::vector<cplx> ascending, double tol = 1e-12) {
  const auto ref = Polynomial::from_ascending(std::move(ascending));
  const int top = std::max(g.degree(), ref.degree());
  for (int k = 0; k <= top; ++k)
    if (std::abs(g[k] - ref[k]) > tol) return false;
  return true;
}

}  // namespace

TEST(GPolynomial, Examples) {
  const cplx a{0.3, -1.7};
  EXPECT_TRUE(g_is(g_polynomial(3, {{1.0, 2}, {a, 1}}), {3.0 * a, -(a + 2.0)}));
  EXPECT_TRUE(g_is(g_polynomial(4, {{1.0, 2}, {a, 2}}), {4.0 * a, -2.0 * (a + 1.0)}));
  // the defining sum gives 4(z - 1) - 4z = -4; only nonzero-ness matters
  EXPECT_TRUE(g_is(g_polynomial(4, {{1.0, 4}}), {-4.0}));
  EXPECT_THROW(g_polynomial(4, {{1.0, 2}, {1.0, 2}}), std::invalid_argument);
  EXPECT_THROW(g_polynomial(4, {{1.0, 3}}), std::invalid_argument);
}

TEST(ExceptionalFamily, Examples) {
  EXPECT_TRUE(is_exceptional_family(Polynomial({1, 0, 0, 0, -1})));
  EXPECT_TRUE(is_exceptional_family(Polynomial({1, -1}).pow(2) * Polynomial({1, 2})));
  // g = -7z + 15
  EXPECT_FALSE(is_exceptional_family(Polynomial({1, -1}).pow(2) * Polynomial({1, -5})));
  EXPECT_TRUE(g_is(g_polynomial(3, {{1.0, 2}, {5.0, 1}}), {15.0, -7.0}));
}

TEST(GenericNewton, Examples) {
  EXPECT_TRUE(maps_equal(generic_newton(3), RationalMap::polynomial(Polynomial({1. / 3, 0, 0, 2. / 3, 0})), 1e-15));
  EXPECT_TRUE(maps_equal(generic_newton(4), RationalMap::polynomial(Polynomial({1. / 4, 0, 0, 0, 3. / 4, 0})), 1e-15));
  EXPECT_TRUE(maps_equal(generic_newton(5), RationalMap::polynomial(Polynomial({1. / 5, 0, 0, 0, 0, 4. / 5, 0})), 1e-15));
}

TEST(Patterns, OrderAndCount) {
  const auto p = multiplicity_patterns(5);
  ASSERT_EQ(p.size(), 7u);
  EXPECT_EQ(p.front().to_string(), "(1,1,1,1,1)");
  EXPECT_EQ(p[1].to_string(), "(2,1,1,1)");
  EXPECT_EQ(p[2].to_string(), "(2,2,1)");
  EXPECT_EQ(p[3].to_string(), "(3,1,1)");
  EXPECT_EQ(p.back().to_string(), "(5)");
}

TEST(Enumerate, Counts) {
  EXPECT_EQ(enumerate(3).rows.size(), 3u);
  EXPECT_EQ(enumerate(4).rows.size(), 5u);
  EXPECT_EQ(enumerate(5).rows.size(), 8u);
  EXPECT_THROW(enumerate(2), std::invalid_argument);
  EXPECT_THROW(enumerate(6), std::invalid_argument);
}

TEST(Enumerate, DegreeFourParameters) {
  const auto e = enumerate(4);
  const auto& row = e.rows[1];
  EXPECT_EQ(row.table_row_id, "3");
  ASSERT_EQ(row.params.size(), 2u);
  EXPECT_LT(std::abs(row.params[0].value - 2.0), 1e-10);
  EXPECT_LT(std::abs(row.params[1].value - 3.0), 1e-10);
  EXPECT_TRUE(maps_equal(row.newton, RationalMap::polynomial(Polynomial({1. / 12, 1. / 12, 1. / 12, 9. / 12, 0})), 1e-9));
}

TEST(Enumerate, DegreeFiveComplexRows) {
  const auto e = enumerate(5);
  const cplx a = (-2.0 + I * std::sqrt(5.0)) / 3.0, b = (-2.0 - 2.0 * I * std::sqrt(5.0)) / 3.0;
  const auto& r1 = e.rows[2];
  const auto& r2 = e.rows[3];
  EXPECT_EQ(r1.table_row_id, "3(i)");
  EXPECT_EQ(r2.table_row_id, "3(ii)");
  EXPECT_LT(std::abs(r1.params[0].value - a), 1e-10);
  EXPECT_LT(std::abs(r1.params[1].value - b), 1e-10);
  EXPECT_LT(std::abs(r2.params[0].value - std::conj(a)), 1e-10);
  EXPECT_LT(std::abs(r2.params[1].value - std::conj(b)), 1e-10);
}

TEST(Enumerate, ThreeTwoPattern) {
  const auto e = enumerate(5);
  const auto& r = e.rows[5];
  EXPECT_EQ(r.pattern.to_string(), "(3,2)");
  EXPECT_LT(std::abs(r.params[0].value + 1.5), 1e-10);
  EXPECT_TRUE(maps_equal(r.newton, RationalMap::polynomial(Polynomial({2. / 15, 1. / 15, 12. / 15, 0})), 1e-9));
}

TEST(VerifyTable, AllRowsMatch) {
  for (int d : {3, 4, 5}) {
    const auto rep = verify_table(d);
    EXPECT_TRUE(rep.all_matched()) << "d = " << d;
    EXPECT_EQ(rep.matched_count(), static_cast<int>(golden_rows(d).size()));
  }
}

// every row: polynomial map, 0 attracting with multiplier (d-1)/d, infinity
// superattracting and exceptional, exactly two attracting fixed points
TEST(Enumerate, RowInvariants) {
  for (int d : {3, 4, 5}) {
    for (const auto& row : enumerate(d).rows) {
      const auto& N = row.newton;
      EXPECT_TRUE(N.is_polynomial());
      EXPECT_LT(std::abs(N(cplx(0)).value()), 1e-12);
      const auto ex = exceptional_points(N);
      ASSERT_EQ(ex.size(), 1u) << row.table_row_id;
      EXPECT_TRUE(ex[0].is_infinity());
      int attracting = 0;
      for (const auto& fp : fixed_points(N)) {
        if (!is_attracting(fp.klass)) continue;
        ++attracting;
        if (fp.location.is_infinity()) {
          EXPECT_EQ(fp.klass, FixedPointClass::superattracting);
        } else {
          EXPECT_LT(std::abs(fp.location.value()), 1e-9);
          EXPECT_LT(std::abs(fp.multiplier - (d - 1.0) / d), 1e-9);
        }
      }
      EXPECT_EQ(attracting, 2);
      EXPECT_TRUE(is_exceptional_family(row.p));
      const auto ch = characterize(N);
      EXPECT_TRUE(ch.is_newton);
      ASSERT_TRUE(ch.reconstructed_R);
      EXPECT_TRUE(maps_equal_up_to_scalar(*ch.reconstructed_R, RationalMap::coprime(Polynomial::monomial(1.0, d), row.p), 1e-6))
          << row.table_row_id;
    }
  }
}

// newton_map(z (z^{d-1} - 1)^m) has exceptional point 0
TEST(Exceptional, PolynomialNewtonCrossCheck) {
  for (int d : {3, 4})
    for (int m : {1, 2}) {
      const auto q = Polynomial::monomial(1.0, 1) * (Polynomial::monomial(1.0, d - 1) - Polynomial::constant(1.0)).pow(m);
      const auto N = newton_map(RationalMap::polynomial(q));
      bool has_zero = false;
      for (const auto& p : exceptional_points(N)) has_zero = has_zero || (p.is_finite() && std::abs(p.value()) < 1e-9);
      EXPECT_TRUE(has_zero) << "d=" << d << " m=" << m;
    }
}

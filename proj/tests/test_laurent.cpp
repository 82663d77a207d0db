#include <gtest/gtest.h>

#include <random>

#include "u21/laurent.hpp"

using namespace u21;

namespace {

std::vector<FE> random_coeffs(const FieldTower& T, int n, std::mt19937& rng) {
  std::uniform_int_distribution<std::size_t> pick(0, T.kE().size() - 1);
  std::vector<FE> c(n);
  for (auto& x : c) x = T.kE()[pick(rng)];
  return c;
}

}  // namespace

TEST(Series, ProductMatchesConvolution) {
  FieldTower T(3, 1);
  const auto& F = T.lambda();
  std::mt19937 rng(7);
  for (int trial = 0; trial < 50; ++trial) {
    auto a = random_coeffs(T, 4, rng), b = random_coeffs(T, 5, rng);
    Series sa = Series::from_coeffs(T, -1, a), sb = Series::from_coeffs(T, 2, b);
    Series p = sa * sb;
    for (int d = 1; d <= 8; ++d) {
      FE want = F.zero();
      for (int i = 0; i < 4; ++i) {
        const int j = d - (i - 1) - 2;
        if (j >= 0 && j < 5) want = F.add(want, F.mul(a[i], b[j]));
      }
      EXPECT_EQ(p.coeff(d), want) << "degree " << d;
    }
  }
}

TEST(Series, InverseOfUnitToPrecision) {
  FieldTower T(3, 1);
  PrecisionScope scope(12);
  Series x = Series::from_coeffs(T, 0, {T.kE_generator(), T.lambda().one(), T.lambda().one()});
  Series y = x.inv();
  EXPECT_TRUE((x * y).agrees_with(Series::from_int(T, 1), 12));
  EXPECT_LE(y.precision(), 12);
  EXPECT_THROW(y.coeff(y.precision()), InsufficientPrecision);
}

TEST(Series, GeometricSeriesInverse) {
  FieldTower T(5, 1);
  PrecisionScope scope(10);
  // (1 - t)^{-1} = 1 + t + t^2 + ...
  Series x = Series::from_int(T, 1) - Series::monomial(T, T.lambda().one(), 1);
  Series y = x.inv();
  for (int d = 0; d < 10; ++d) EXPECT_EQ(y.coeff(d), T.lambda().one());
}

TEST(Series, ConjugationIsFrobeniusOnCoefficients) {
  FieldTower T(3, 1);
  const FE g = T.kE_generator();
  Series s = Series::from_coeffs(T, -2, {g, T.lambda().zero(), T.lambda().mul(g, g)});
  Series c = s.conj();
  EXPECT_EQ(c.coeff(-2), T.lambda().pow(g, 3));
  EXPECT_EQ(c.coeff(0), T.lambda().pow(g, 6));
  EXPECT_EQ(c.conj(), s);
}

TEST(Series, ValuationAndIdeals) {
  FieldTower T(3, 1);
  Series s = Series::monomial(T, T.lambda().one(), 3);
  EXPECT_EQ(s.valuation(), 3);
  EXPECT_TRUE(s.in_ideal(3));
  EXPECT_FALSE(s.in_ideal(4));
  EXPECT_EQ(s.shifted(-5).valuation(), -2);
}

#include <gtest/gtest.h>

#include <set>

#include "u21/fields.hpp"

using namespace u21;

TEST(FiniteField, AxiomsExhaustiveF9) {
  FiniteField F(3, 2);
  ASSERT_EQ(F.order(), 9);
  for (int i = 0; i < 9; ++i)
    for (int j = 0; j < 9; ++j) {
      FE a = F.element(i), b = F.element(j);
      EXPECT_EQ(F.add(a, b), F.add(b, a));
      EXPECT_EQ(F.mul(a, b), F.mul(b, a));
      EXPECT_EQ(F.sub(F.add(a, b), b), a);
      if (b != F.zero()) EXPECT_EQ(F.mul(F.div(a, b), b), a);
    }
}

TEST(FiniteField, CharacteristicAndFermat) {
  FiniteField F(5, 2);
  for (int i = 0; i < F.order(); ++i) {
    FE a = F.element(i);
    FE s = F.zero();
    for (int k = 0; k < 5; ++k) s = F.add(s, a);
    EXPECT_EQ(s, F.zero());
    EXPECT_EQ(F.pow(a, F.order()), a);
  }
}

TEST(FiniteField, PrimitiveElementHasFullOrder) {
  FiniteField F(3, 4);
  std::set<FE> seen;
  FE x = F.one();
  for (int i = 0; i < F.order() - 1; ++i) {
    seen.insert(x);
    x = F.mul(x, F.primitive());
  }
  EXPECT_EQ(x, F.one());
  EXPECT_EQ(static_cast<int>(seen.size()), F.order() - 1);
}

TEST(FieldTower, ResidueFieldsAtQ3) {
  FieldTower T(3, 1);
  EXPECT_EQ(T.q(), 3);
  EXPECT_EQ(T.kE().size(), 9u);
  EXPECT_EQ(T.kF().size(), 3u);
  // (q^2 - 1) | (p^m - 1) with m minimal: 8 | 3^2 - 1.
  EXPECT_EQ(T.m(), 2);
  int norm_one = 0, trace_zero = 0;
  for (FE a : T.kE()) {
    EXPECT_EQ(T.conj(T.conj(a)), a);
    norm_one += T.norm(a) == T.lambda().one();
    trace_zero += a != T.lambda().zero() && T.trace(a) == T.lambda().zero();
  }
  EXPECT_EQ(norm_one, 4);
  EXPECT_EQ(trace_zero, 2);
  EXPECT_EQ(static_cast<int>(T.trace_zero().size()), trace_zero);
}

TEST(FieldTower, GeneratorOrders) {
  FieldTower T(5, 1);
  const auto& F = T.lambda();
  auto order = [&](FE g) {
    int n = 1;
    for (FE x = g; x != F.one(); x = F.mul(x, g)) ++n;
    return n;
  };
  EXPECT_EQ(order(T.kE_generator()), 24);
  EXPECT_EQ(order(T.norm_one_generator()), 6);
}

TEST(Characters, DetCharactersAreDetermined) {
  FieldTower T(3, 1);
  for (int k = 0; k < 4; ++k) EXPECT_TRUE(is_det_character(T, det_character(T, k)));
}

#include <gtest/gtest.h>

#include "u21/unitary_group.hpp"
#include "u21/weights.hpp"

using namespace u21;

namespace {

long long ipow(long long b, int e) {
  long long r = 1;
  while (e-- > 0) r *= b;
  return r;
}

}  // namespace

TEST(Iwahori, ConstantsByScan) {
  FieldTower T(3, 1);
  auto c0 = iwahori_constants(T, KTag::K0);
  auto c1 = iwahori_constants(T, KTag::K1);
  EXPECT_EQ(c0.n_K, 0);
  EXPECT_EQ(c0.m_K, 1);
  EXPECT_EQ(c0.t_K, 3);
  EXPECT_EQ(c1.n_K, -1);
  EXPECT_EQ(c1.m_K, 2);
  EXPECT_EQ(c1.t_K, 1);
}

TEST(Iwahori, LayerOrders) {
  FieldTower T(3, 1);
  EXPECT_EQ(layer_reps(T, Side::N, 0).size(), 27u);
  EXPECT_EQ(layer_reps(T, Side::Nprime, 1).size(), 3u);
  EXPECT_EQ(layer_reps(T, Side::N, -1).size(), 3u);
  EXPECT_EQ(layer_reps(T, Side::Nprime, 2).size(), 27u);
}

TEST(Iwahori, LGroupsHaveExpectedOrder) {
  FieldTower T(3, 1);
  EXPECT_EQ(enumerate_L(T, true).size(), 27u);
  EXPECT_EQ(enumerate_L(T, false).size(), 3u);
  for (const auto& a : enumerate_L(T, true))
    for (const auto& b : enumerate_L(T, true)) EXPECT_TRUE(l_valid(T, l_mul(T, a, b)));
}

TEST(Gamma, OrdersMatchFiniteGroupFormulas) {
  // |U(3, q)| and |U(1,1)(q)| · |U(1)(q)|.
  auto u3 = [](long long q) { return ipow(q, 3) * (q + 1) * (q * q - 1) * (ipow(q, 3) + 1); };
  auto u11 = [](long long q) { return q * (q + 1) * (q * q - 1) * (q + 1); };
  FieldTower T3(3, 1), T5(5, 1);
  EXPECT_EQ(static_cast<long long>(make_gamma(T3, KTag::K0)->order()), u3(3));
  EXPECT_EQ(static_cast<long long>(make_gamma(T3, KTag::K1)->order()), u11(3));
  EXPECT_EQ(static_cast<long long>(make_gamma(T5, KTag::K1)->order()), u11(5));
}

TEST(Group, AlphaBetaRelations) {
  FieldTower T(3, 1);
  const GElem a = alpha_pow(T, 1), b = beta(T);
  EXPECT_TRUE((alpha_pow(T, 2) * alpha_pow(T, -2)).agrees_with(GElem::identity(T), 16));
  // β α β⁻¹ = α⁻¹.
  EXPECT_TRUE((b * a * b.inverse()).agrees_with(alpha_pow(T, -1), 16));
  EXPECT_TRUE(in_K(b, KTag::K0));
  EXPECT_FALSE(in_K(a, KTag::K0));
}

TEST(Group, CosetFormIsCanonical) {
  FieldTower T(3, 1);
  for (KTag k : {KTag::K0, KTag::K1}) {
    const GammaPtr Gp = make_gamma(T, k);
    const auto& G = *Gp;
    for (int n = -2; n <= 2; ++n)
      for (std::size_t i = 0; i < G.order(); i += 97) {
        const auto us = layer_reps(T, Side::N, 1);
        const GElem g = alpha_pow(T, n) * us[i % us.size()];
        const CosetForm a = coset_form(g, k);
        const CosetForm b = coset_form(g * lift_to_K(T, G.elements()[i]), k);
        EXPECT_EQ(a.key, b.key);
        EXPECT_TRUE(same_coset(a.rep(), g, k));
      }
  }
}

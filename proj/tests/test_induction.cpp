#include <gtest/gtest.h>

#include "u21/induction.hpp"

using namespace u21;

namespace {

struct Q3 {
  FieldTower T{3, 1};
  GammaPtr G0 = make_gamma(T, KTag::K0);
  GammaPtr G1 = make_gamma(T, KTag::K1);
};

const Q3& q3() {
  static const Q3 s;
  return s;
}

long long ipow(long long b, int e) {
  long long r = 1;
  while (e-- > 0) r *= b;
  return r;
}

// Σ over L^× of χ(h(t)), summed directly.
FE character_sum(const FieldTower& T, const Character& chi, bool big) {
  const auto& F = T.lambda();
  FE s = F.zero();
  for (const auto& a : enumerate_L(T, big))
    if (a.t != F.zero()) s = F.add(s, evaluate_h(T, chi, a.t));
  return s;
}

}  // namespace

TEST(Induction, NumberOfCosetsInSupportOfFn) {
  const auto& s = q3();
  // |N_{n_K}/N_{n_K - 2n}| = q^{-4n} for n ≤ 0; |N'_{m_K}/N'_{m_K+2n-1}| = q^{4n - t_K} for n > 0.
  EXPECT_EQ(static_cast<long long>(f_reps(s.T, KTag::K0, -1).size()), ipow(3, 4));
  EXPECT_EQ(static_cast<long long>(f_reps(s.T, KTag::K1, -1).size()), ipow(3, 4));
  EXPECT_EQ(static_cast<long long>(f_reps(s.T, KTag::K0, 1).size()), ipow(3, 1));
  EXPECT_EQ(static_cast<long long>(f_reps(s.T, KTag::K1, 1).size()), ipow(3, 3));
  EXPECT_EQ(static_cast<long long>(f_reps(s.T, KTag::K0, 2).size()), ipow(3, 5));
}

TEST(Induction, BasisFunctionsAreInvariant) {
  const auto& s = q3();
  for (const auto& G : {s.G0, s.G1})
    for (int n : {-1, 0, 1}) {
      const InducedFn f = f_basis(make_steinberg(G), n);
      EXPECT_TRUE(is_I1_invariant(f));
      EXPECT_EQ(f.depth(), std::abs(n));
    }
}

TEST(Induction, NormalizationAbsorbsK) {
  const auto& s = q3();
  const Weight st = make_steinberg(s.G1);
  const auto& g = s.G1->elements()[5];
  InducedFn a(st), b(st);
  const Vec v = v0(st);
  a.add(alpha_pow(s.T, 1) * lift_to_K(s.T, g), v);
  b.add(alpha_pow(s.T, 1), st.act(g, v));
  EXPECT_EQ(a, b);
  EXPECT_TRUE((a - b).is_zero());
}

TEST(Induction, TrivialWeightConstants) {
  const auto& s = q3();
  for (const auto& G : {s.G0, s.G1}) {
    const Weight one = make_trivial(G);
    const auto& F = one.field();
    const HeckeConstants hc = constants(one, 2);
    // |L^×| = q^3 - 1 or q - 1, which is −1 mod p.
    EXPECT_EQ(hc.c_minus, F.neg(F.one()));
    EXPECT_EQ(hc.c, F.neg(F.one()));
    EXPECT_EQ(hc.lambda, F.one());
    EXPECT_EQ(hc.d.at(0), F.zero());
    EXPECT_EQ(hc.d.at(1), F.neg(F.one()));
  }
}

TEST(Induction, SteinbergConstants) {
  const auto& s = q3();
  for (const auto& G : {s.G0, s.G1}) {
    const Weight st = make_steinberg(G);
    const auto& F = st.field();
    const HeckeConstants hc = constants(st, 1);
    EXPECT_EQ(hc.lambda, F.zero());
    EXPECT_EQ(hc.c, F.zero());
    EXPECT_EQ(hc.d.at(0), F.neg(evaluate_h(s.T, chi_of(st), s.T.trace_zero_unit())));
  }
}

TEST(Induction, CMinusVanishesForRegularK1) {
  const auto& s = q3();
  int n = 0;
  for (const auto& chi : characters_of_torus(torus_quotient(s.T, KTag::K1))) {
    if (!is_regular(s.T, chi, KTag::K1)) continue;
    const Weight sub = make_ps_part(s.G1, chi, PsPart::Sub);
    // m_K-side layer of K1 has order q^3.
    EXPECT_EQ(character_sum(s.T, chi_of(sub), true), sub.field().zero());
    EXPECT_EQ(c_minus_closed(sub), sub.field().zero());
    ++n;
  }
  EXPECT_GT(n, 0);
}

TEST(Induction, ExplicitHeckeOnTrivial) {
  const auto& s = q3();
  const Weight one = make_trivial(s.G0);
  const InducedFn f0 = f_basis(one, 0);
  const InducedFn t = op_T(f0);
  EXPECT_EQ(t, f_basis(one, -1) + f_basis(one, 1));
  EXPECT_EQ(op_T_sigma(f0), t + f0);
}

TEST(Induction, SpinOfF1) {
  const auto& s = q3();
  const Weight st = make_steinberg(s.G1);
  SpunModule m = spin_K(f_basis(st, 1));
  EXPECT_EQ(m.weight.dim(), 4);
  const Weight ps = make_principal_series(s.G1, char_s(s.T, chi_of(st), KTag::K1));
  auto iso = find_isomorphism(m.weight, ps);
  ASSERT_TRUE(iso.has_value());
  EXPECT_EQ(iso->rank(), 4);
}

TEST(Induction, DetTwistHeckeEigenvalueIsMinusOne) {
  const auto& s = q3();
  for (int k = 1; k <= 3; ++k) {
    const Weight w = make_det_twist(s.G0, k);
    EXPECT_EQ(constants(w, 1).c, w.field().neg(w.field().one())) << "det^" << k;
  }
}

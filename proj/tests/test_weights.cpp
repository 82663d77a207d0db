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

}  // namespace

TEST(Weights, Dimensions) {
  const auto& s = q3();
  EXPECT_EQ(make_trivial(s.G0).dim(), 1);
  EXPECT_EQ(make_steinberg(s.G0).dim(), 27);
  EXPECT_EQ(make_steinberg(s.G1).dim(), 3);
  const Character one{};
  EXPECT_EQ(make_principal_series(s.G0, one).dim(), 28);
  EXPECT_EQ(make_principal_series(s.G1, one).dim(), 4);
}

TEST(Weights, UnipotentInvariantsAreLines) {
  const auto& s = q3();
  for (const auto& G : {s.G0, s.G1}) {
    EXPECT_EQ(u_invariants(make_steinberg(G)).dim(), 1);
    EXPECT_EQ(u_invariants(make_det_twist(G, 1)).dim(), 1);
    const Vec v = v0(make_steinberg(G));
    for (const auto& u : G->unipotent()) EXPECT_EQ(make_steinberg(G).act(u, v), v);
  }
}

TEST(Weights, SteinbergIsAbsolutelyIrreducible) {
  const auto& s = q3();
  const Weight st = make_steinberg(s.G1);
  EXPECT_EQ(hom_space(st, st).size(), 1u);
  EXPECT_TRUE(is_steinberg_twist(st));
  EXPECT_FALSE(is_steinberg_twist(make_trivial(s.G1)));
}

TEST(Weights, TrivialPrincipalSeriesSplits) {
  const auto& s = q3();
  const Weight ps = make_principal_series(s.G0, Character{});
  SocleReport r = socle_series(ps);
  EXPECT_FALSE(r.chain);
  EXPECT_EQ(hom_space(make_trivial(s.G0), ps).size(), 1u);
  EXPECT_EQ(hom_space(make_steinberg(s.G0), ps).size(), 1u);
}

TEST(Weights, RegularCharactersAreThoseMovedByS) {
  const auto& s = q3();
  int regular = 0;
  for (const auto& chi : characters_of_torus(torus_quotient(s.T, KTag::K1))) {
    const bool moved = char_s(s.T, chi, KTag::K1) != chi;
    EXPECT_EQ(is_regular(s.T, chi, KTag::K1), moved);
    regular += moved;
    if (is_det_character(s.T, chi)) EXPECT_FALSE(moved);
  }
  EXPECT_GT(regular, 0);
}

TEST(Weights, RegularPrincipalSeriesHasTwoLayers) {
  const auto& s = q3();
  for (const auto& chi : characters_of_torus(torus_quotient(s.T, KTag::K1))) {
    if (!is_regular(s.T, chi, KTag::K1)) continue;
    const Weight sub = make_ps_part(s.G1, chi, PsPart::Sub);
    const Weight quot = make_ps_part(s.G1, chi, PsPart::Quotient);
    EXPECT_EQ(sub.dim() + quot.dim(), 4);
    EXPECT_EQ(chi_of(weight_s(sub)), char_s(s.T, chi_of(sub), KTag::K1));
    const Weight ps = make_principal_series(s.G1, chi);
    SocleReport r = socle_series(ps);
    ASSERT_TRUE(r.chain);
    EXPECT_EQ(r.length(), 2);
    EXPECT_EQ(r.layers[0].quotient, fingerprint(sub));
    EXPECT_EQ(r.layers[1].quotient, fingerprint(quot));
  }
}

TEST(Weights, ActionIsHomomorphic) {
  const auto& s = q3();
  const Weight st = make_steinberg(s.G1);
  const auto& E = s.G1->elements();
  for (std::size_t i = 0; i < E.size(); i += 7)
    for (std::size_t j = 0; j < E.size(); j += 11) EXPECT_TRUE(is_homomorphic_on(st, E[i], E[j]));
}

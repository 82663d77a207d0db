#include "harness_internal.hpp"

namespace u21::detail {

namespace {

const NamedWeight& by_name(Ctx& ctx, KTag k, const std::string& name) {
  for (const auto& nw : ctx.catalog(k))
    if (nw.name == name) return nw;
  throw std::out_of_range("no catalog weight " + name);
}

// The torus of I_K acts on f_k through χ_σ for k ≤ 0 and χ_σ^s for k > 0.
void eigencharacter_check(Ctx& ctx, KTag k, const NamedWeight& nw) {
  const std::string K = to_string(k);
  ctx.check("section3.eigencharacter." + K + "." + nw.name, "I_K acts on f_k by χ (k ≤ 0) or χ^s (k > 0)", 0,
            K + ", σ = " + nw.name + ", k in -2..2, torus generator lifts", "t f_k = χ'(t) f_k", [&] {
              const Weight& s = nw.w;
              const auto& T = ctx.tower();
              const auto& F = s.field();
              const Character chi = chi_of(s), chis = char_s(T, chi, k);
              int bad = 0;
              for (int n = -2; n <= 2; ++n)
                for (const auto& t : {s.gamma().torus_a(), s.gamma().torus_b()}) {
                  const FE want = evaluate_on_gamma(T, n <= 0 ? chi : chis, t);
                  auto got = basis_coefficients(point_act(lift_to_K(T, t), f_point(s, n)), n - 1, n + 1);
                  bad += got != expect_coeffs(F, {{n, want}});
                }
              return Outcome{bad == 0, std::to_string(10 - bad) + "/10 eigen-relations"};
            });
}

void ind_trivial_check(Ctx& ctx, KTag k) {
  const std::string K = to_string(k);
  ctx.check("section3.ind_trivial." + K, "in ind 1: f + S_K f = 0 for f = f_−n, and ⟨K f_−1⟩ ≅ st", 0,
            K + ", n = 1..3", "S_K f_−n = −f_−n, full-rank intertwiner to st", [&] {
              const Weight& s = by_name(ctx, k, "trivial").w;
              const auto& F = s.field();
              bool ok = true;
              for (int n = 1; n <= 3; ++n) {
                auto c = basis_coefficients(point_SK(f_point(s, -n)), -n - 1, n + 1);
                ok = ok && c == expect_coeffs(F, {{-n, F.neg(F.one())}});
              }
              SpunModule m = spin_K(f_basis(s, -1));
              auto iso = find_isomorphism(m.weight, by_name(ctx, k, "st").w);
              return Outcome{ok && iso.has_value(),
                             "dim ⟨K f_-1⟩ = " + std::to_string(m.basis.size()) + (iso ? ", ≅ st" : ", not ≅ st")};
            });
}

void ind_steinberg_check(Ctx& ctx, KTag k) {
  const std::string K = to_string(k);
  ctx.check("section3.ind_st." + K, "in ind st: f_1 + f_−1 is K-invariant", 0, K + ", Γ generator lifts",
            "g (f_1 + f_−1) = f_1 + f_−1", [&] {
              const Weight& s = by_name(ctx, k, "st").w;
              const auto& T = ctx.tower();
              InducedFn f = f_basis(s, 1) + f_basis(s, -1);
              int bad = 0;
              for (const auto& g : s.gamma().generators()) bad += !(g_act(lift_to_K(T, g), f) == f);
              return Outcome{bad == 0, std::to_string(s.gamma().generators().size() - bad) + "/" +
                                           std::to_string(s.gamma().generators().size()) + " generators fix it"};
            });
}

}  // namespace

void suite_section3(Ctx& ctx) {
  for (KTag k : ctx.tags()) {
    for (const auto& nw : ctx.catalog(k)) eigencharacter_check(ctx, k, nw);
    ind_trivial_check(ctx, k);
    ind_steinberg_check(ctx, k);
  }
}

}  // namespace u21::detail

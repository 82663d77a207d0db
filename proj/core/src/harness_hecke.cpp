#include "harness_internal.hpp"

namespace u21::detail {

namespace {

std::string weight_inputs(KTag k, const NamedWeight& nw) { return std::string(to_string(k)) + ", σ = " + nw.name; }

// T f_n = c f_n + f_{n+δ(n)} via the kernel route, plus T f0 = f_-1 + λ f1.
void t_formula_check(Ctx& ctx, KTag k, const NamedWeight& nw) {
  const std::string id = "hecke.T_fn." + std::string(to_string(k)) + "." + nw.name;
  ctx.check(id, "T f0 = f_-1 + λ f1, T f_n = c f_n + f_{n+δ(n)}", 4, weight_inputs(k, nw) + ", n in ±1,±2,±3",
            "exact coefficient identities with one c for all n", [&] {
              const Weight& s = nw.w;
              const auto& F = s.field();
              const HeckeConstants hc = constants(s, 1);
              const HeckeKernel ker = hecke_kernel(s);
              std::string obs = "λ=" + fe_str(F, hc.lambda) + " c=" + fe_str(F, hc.c) + " c_-=" + fe_str(F, hc.c_minus);
              bool ok = true;
              auto got = basis_coefficients(point_T(ker, f_point(s, 0)), -3, 3);
              ok = ok && got == expect_coeffs(F, {{-1, F.one()}, {1, hc.lambda}});
              for (int n : {1, -1, 2, -2, 3, -3}) {
                const int next = n + (n > 0 ? 1 : -1);
                auto cn = basis_coefficients(point_T(ker, f_point(s, n)), std::min(n, next) - 2, std::max(n, next) + 2);
                bool good = cn == expect_coeffs(F, {{n, hc.c}, {next, F.one()}});
                if (!good) obs += " T f" + std::to_string(n) + "=" + coeffs_str(F, cn);
                ok = ok && good;
              }
              return Outcome{ok, obs};
            });
}

void c_closed_check(Ctx& ctx, KTag k, const NamedWeight& nw) {
  const std::string id = "hecke.c_closed." + std::string(to_string(k)) + "." + nw.name;
  ctx.check(id, "c = 0 for dim σ > 1, c = Σ_{L^×_{q^{4-t_K}}} χ_σ(h(t)) for characters", 4, weight_inputs(k, nw),
            "c equals its closed form", [&] {
              const Weight& s = nw.w;
              const auto& F = s.field();
              const HeckeConstants hc = constants(s, 1);
              return Outcome{hc.c == hc.c_closed, "c=" + fe_str(F, hc.c) + " closed=" + fe_str(F, hc.c_closed)};
            });
}

// The same identities as exact equalities of explicit normalized functions.
void t_explicit_check(Ctx& ctx, KTag k, const NamedWeight& nw) {
  const std::string id = "hecke.T_explicit." + std::string(to_string(k)) + "." + nw.name;
  ctx.check(id, "explicit T on f0, f1, f_-1 from the formula for T[Id, v]", 4, weight_inputs(k, nw),
            "T f0 = f_-1 + λ f1, T f1 = c f1 + f2, T f_-1 = c f_-1 + f_-2; supp T f0 ⊂ K α⁻¹ K", [&] {
              const Weight& s = nw.w;
              const HeckeConstants hc = constants(s, 1);
              InducedFn f0 = f_basis(s, 0), f1 = f_basis(s, 1), fm1 = f_basis(s, -1);
              InducedFn t0 = op_T(f0);
              bool support = true;
              for (const auto& [key, gen] : t0.generators()) support = support && std::abs(key.n) == 1;
              InducedFn want0 = fm1;
              want0.add(f1, hc.lambda);
              InducedFn want1 = f_basis(s, 2, 5, false);
              want1.add(f1, hc.c);
              InducedFn wantm1 = f_basis(s, -2, 5, false);
              wantm1.add(fm1, hc.c);
              const bool e0 = t0 == want0, e1 = op_T(f1) == want1, em1 = op_T(fm1) == wantm1;
              std::string obs = std::string("T f0 ") + (e0 ? "=" : "≠") + ", T f1 " + (e1 ? "=" : "≠") + ", T f_-1 " +
                                (em1 ? "=" : "≠") + ", support " + (support ? "ok" : "bad") + " (" +
                                std::to_string(t0.size()) + " generators)";
              return Outcome{support && e0 && e1 && em1, obs};
            });
}

}  // namespace

void suite_hecke(Ctx& ctx) {
  for (KTag k : ctx.tags()) {
    for (const auto& nw : ctx.catalog(k)) {
      t_formula_check(ctx, k, nw);
      c_closed_check(ctx, k, nw);
    }
    for (const auto& nw : ctx.basic_catalog(k)) t_explicit_check(ctx, k, nw);
  }
}

}  // namespace u21::detail

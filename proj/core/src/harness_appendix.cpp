#include "harness_internal.hpp"

namespace u21::detail {

namespace {

std::string weight_inputs(KTag k, const NamedWeight& nw) { return std::string(to_string(k)) + ", σ = " + nw.name; }

// S_K f_n = f_−n, S_− f_n = c_− f_n (n ≥ 1); S_− f_−n = f_{n+1}, S_K f_−n = d_n f_−n (n ≥ 0).
void s_formula_check(Ctx& ctx, KTag k, const NamedWeight& nw) {
  const int nmax = ctx.cfg().n_max;
  const std::string id = "appendix.S_fn." + std::string(to_string(k)) + "." + nw.name;
  ctx.check(id, "S_K and S_− on f_n and f_−n", 5, weight_inputs(k, nw) + ", n up to " + std::to_string(nmax),
            "S_K f_n = f_−n, S_− f_n = c_− f_n, S_− f_−n = f_{n+1}, S_K f_−n = d_n f_−n", [&] {
              const Weight& s = nw.w;
              const auto& F = s.field();
              const FE cm = c_minus_closed(s), dn = d_closed(s), d0 = d0_closed(s);
              std::string obs = "c_-=" + fe_str(F, cm) + " d0=" + fe_str(F, d0) + " d_n=" + fe_str(F, dn);
              bool ok = true;
              auto expect = [&](const PointFn& got, int lo, int hi, std::map<int, FE> want, const std::string& tag) {
                auto c = basis_coefficients(got, lo, hi);
                if (c != want) {
                  ok = false;
                  obs += " " + tag + "=" + coeffs_str(F, c);
                }
              };
              for (int n = 1; n <= nmax; ++n) {
                const PointFn fn = f_point(s, n);
                expect(point_SK(fn), -n - 2, n + 2, expect_coeffs(F, {{-n, F.one()}}), "S_K f" + std::to_string(n));
                expect(point_Sminus(fn), -n - 2, n + 2, expect_coeffs(F, {{n, cm}}), "S_- f" + std::to_string(n));
              }
              for (int n = 0; n < nmax; ++n) {
                const PointFn fn = f_point(s, -n);
                expect(point_Sminus(fn), -n - 2, n + 3, expect_coeffs(F, {{n + 1, F.one()}}),
                       "S_- f-" + std::to_string(n));
                expect(point_SK(fn), -n - 2, n + 2, expect_coeffs(F, {{-n, n == 0 ? d0 : dn}}),
                       "S_K f-" + std::to_string(n));
              }
              return Outcome{ok, obs};
            });
}

// The same on explicit functions for the smallest cases.
void s_explicit_check(Ctx& ctx, KTag k, const NamedWeight& nw) {
  const std::string id = "appendix.S_explicit." + std::string(to_string(k)) + "." + nw.name;
  ctx.check(id, "explicit S_K, S_− on f0 and f1", 5, weight_inputs(k, nw),
            "S_K f1 = f_−1, S_− f1 = c_− f1, S_− f0 = f1, S_K f0 = d0 f0", [&] {
              const Weight& s = nw.w;
              InducedFn f0 = f_basis(s, 0), f1 = f_basis(s, 1), fm1 = f_basis(s, -1);
              const bool a = op_SK(f1) == fm1;
              const bool b = op_Sminus(f1) == scaled(f1, c_minus_closed(s));
              const bool c = op_Sminus(f0) == f1;
              const bool d = op_SK(f0) == scaled(f0, d0_closed(s));
              auto mark = [](bool x) { return x ? "=" : "≠"; };
              std::string obs = std::string("S_K f1 ") + mark(a) + ", S_- f1 " + mark(b) + ", S_- f0 " + mark(c) +
                                ", S_K f0 " + mark(d);
              return Outcome{a && b && c && d, obs};
            });
}

void closed_form_checks(Ctx& ctx, KTag k) {
  const std::string K = to_string(k);
  ctx.check("appendix.closed_forms." + K, "closed forms of c_−, d_n, d0 on basic weights", 5, K,
            "c_−(1) = d_n(1) = −1, d0(st) = −χ(h(𝔱)), d0 = 0 off Steinberg twists, d0 closed = direct", [&] {
              bool ok = true;
              std::string obs;
              for (const auto& nw : ctx.basic_catalog(k)) {
                const Weight& s = nw.w;
                const auto& F = s.field();
                const FE d0 = d0_closed(s), dd = d0_direct(s);
                ok = ok && d0 == dd;
                if (nw.name == "trivial") ok = ok && c_minus_closed(s) == F.neg(F.one()) && d_closed(s) == F.neg(F.one());
                if (!is_steinberg_twist(s)) ok = ok && d0 == F.zero();
                if (nw.name == "st") ok = ok && d0 != F.zero();
                obs += nw.name + ":d0=" + fe_str(F, d0) + " ";
              }
              return Outcome{ok, obs};
            });
  if (k != KTag::K1 || ctx.tower().f() != 1) return;
  ctx.check("appendix.c_minus_regular.K1", "c_− vanishes for regular K1 weights", 5, "K1, regular catalog weights",
            "c_− = 0", [&] {
              bool ok = true;
              int n = 0;
              for (const auto& nw : ctx.catalog(k)) {
                if (nw.name.rfind("ps_", 0) != 0) continue;
                ok = ok && c_minus_closed(nw.w) == nw.w.field().zero();
                ++n;
              }
              return Outcome{ok && n > 0, std::to_string(n) + " weights"};
            });
}

std::vector<NamedWeight> invariance_weights(Ctx& ctx, KTag k) {
  std::vector<NamedWeight> out;
  for (const auto& nw : ctx.catalog(k))
    if (nw.name == "trivial" || nw.name == "st") out.push_back(nw);
  for (const auto& nw : ctx.catalog(k))
    if (nw.name.rfind("ps_", 0) == 0) {
      out.push_back(nw);
      break;
    }
  return out;
}

// S_K f_n and S_− f_n are I_{1,K}-invariant, and S_K(h f) = h^s S_K f on H1.
void invariance_checks(Ctx& ctx, KTag k) {
  const std::string K = to_string(k);
  const unsigned seed = ctx.cfg().seed;
  for (const auto& nw : invariance_weights(ctx, k)) {
    ctx.check("appendix.S_invariance." + K + "." + nw.name, "S_K f_n and S_− f_n are I_{1,K}-invariant", 6,
              weight_inputs(k, nw) + ", n in -2..2, sampled", "invariant at every sampled point", [&] {
                int bad = 0;
                for (int n = -2; n <= 2; ++n) {
                  const PointFn fn = f_point(nw.w, n);
                  const int mm = std::abs(n) + 2;
                  bad += !point_I1_invariant(point_SK(fn), mm, 12, seed);
                  bad += !point_I1_invariant(point_Sminus(fn), mm, 12, seed);
                }
                return Outcome{bad == 0, std::to_string(10 - bad) + "/10 invariant"};
              });
  }
  ctx.check("appendix.H1_law." + K, "S_K(h f) = h^s S_K f for torus generators h", 6,
            K + ", σ as above, f = f_n for n in -1..2, h the lifted torus generators and H1 generators",
            "equal values at sampled points", [&] {
              const auto& T = ctx.tower();
              const auto& c = cached_iwahori_constants(T, k);
              const GElem bK = beta_K(T, k), bKi = bK.inverse();
              auto rng = ctx.rng("appendix.H1_law." + K);
              auto gens = i1_generators(T, k, 0);
              int bad = 0, tried = 0;
              for (const auto& nw : invariance_weights(ctx, k)) {
                const Weight& s = nw.w;
                std::vector<GElem> hs{gens[0], gens[1], lift_to_K(T, s.gamma().torus_a()),
                                      lift_to_K(T, s.gamma().torus_b())};
                for (int n = -1; n <= 2; ++n) {
                  const PointFn pf = f_point(s, n);
                  for (const auto& h : hs) {
                    const PointFn lhs = point_SK(point_act(h, pf)), rhs = point_act(bK * h * bKi, point_SK(pf));
                    const int m = std::abs(n);
                    for (int j = -1; j <= 1; ++j) {
                      const GElem x = random_unipotent(T, Side::N, c.n_K, 3, rng) * alpha_pow(T, m + j);
                      bad += !(lhs(x) == rhs(x));
                      ++tried;
                    }
                  }
                }
              }
              return Outcome{bad == 0, std::to_string(tried - bad) + "/" + std::to_string(tried) + " points agree"};
            });
}

}  // namespace

void suite_appendix(Ctx& ctx) {
  for (KTag k : ctx.tags()) {
    for (const auto& nw : ctx.catalog(k)) s_formula_check(ctx, k, nw);
    for (const auto& nw : ctx.basic_catalog(k)) s_explicit_check(ctx, k, nw);
    closed_form_checks(ctx, k);
    invariance_checks(ctx, k);
  }
}

}  // namespace u21::detail

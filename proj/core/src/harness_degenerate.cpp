#include "harness_internal.hpp"

namespace u21::detail {

namespace {

Weight find_weight(Ctx& ctx, KTag k, const std::string& name) {
  for (const auto& nw : ctx.basic_catalog(k))
    if (nw.name == name) return nw.w;
  throw std::out_of_range("no catalog weight " + name);
}

}  // namespace

void suite_degenerate(Ctx& ctx) {
  for (KTag k : ctx.tags()) {
    const std::string K = to_string(k);
    ctx.check("degenerate.Sminus_kills." + K, "S_−(f0 + f1) = 0 in ind 1", 7, K + ", σ = trivial",
              "zero function", [&] {
                const Weight s = find_weight(ctx, k, "trivial");
                InducedFn g = op_Sminus(f_basis(s, 0) + f_basis(s, 1));
                return Outcome{g.is_zero(), std::to_string(g.size()) + " generators"};
              });

    ctx.check("degenerate.T_image_st." + K, "f_−1 + f_2 = T(f0 + f1) in ind st", 7, K + ", σ = st",
              "equal normalized functions", [&] {
                const Weight s = find_weight(ctx, k, "st");
                InducedFn lhs = f_basis(s, -1) + f_basis(s, 2, 5, false);
                InducedFn rhs = op_T(f_basis(s, 0) + f_basis(s, 1));
                return Outcome{lhs == rhs, std::to_string(rhs.size()) + " generators, " +
                                               (lhs == rhs ? "equal" : "different")};
              });

    ctx.check("degenerate.congruence." + K, "−f_−1 ≡ f0 + f1 mod (T+1) in ind 1", 7,
              K + ", σ = trivial, preimage f0", "(T+1) f0 = f_−1 + f0 + f1, explicit and kernel routes", [&] {
                const Weight s = find_weight(ctx, k, "trivial");
                const auto& F = s.field();
                InducedFn f0 = f_basis(s, 0);
                InducedFn want = f_basis(s, -1) + f0 + f_basis(s, 1);
                const bool ex = op_T(f0) + f0 == want;
                const PointFn pf0 = f_point(s, 0);
                const PointFn tp = point_sum({{F.one(), point_T(hecke_kernel(s), pf0)}, {F.one(), pf0}});
                const auto got = basis_coefficients(tp, -3, 3);
                const bool kr = got == expect_coeffs(F, {{-1, F.one()}, {0, F.one()}, {1, F.one()}});
                return Outcome{ex && kr, std::string("explicit ") + (ex ? "ok" : "bad") + ", kernel " +
                                             coeffs_str(F, got)};
              });
  }
}

}  // namespace u21::detail

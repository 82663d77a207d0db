#include <algorithm>

#include "harness_internal.hpp"

namespace u21::detail {

namespace {

const GammaElem& random_gamma(const GammaGroup& G, std::mt19937& rng) {
  std::uniform_int_distribution<std::size_t> pick(0, G.order() - 1);
  return G.elements()[pick(rng)];
}

// A random element of G: K-part, unipotent part and a power of α.
GElem random_g(const FieldTower& T, const GammaGroup& G, KTag k, std::mt19937& rng) {
  const auto& c = cached_iwahori_constants(T, k);
  std::uniform_int_distribution<int> e(-1, 1);
  return lift_to_K(T, random_gamma(G, rng)) * random_unipotent(T, Side::N, c.n_K, 2, rng) * alpha_pow(T, e(rng));
}

void field_checks(Ctx& ctx) {
  ctx.check("properties.field_axioms", "Λ is a field and conjugation an involutive automorphism", 10,
            "all triples when |Λ| ≤ 81, else 20000 random", "no violations", [&] {
              const auto& T = ctx.tower();
              const auto& F = T.lambda();
              auto rng = ctx.rng("properties.field_axioms");
              std::uniform_int_distribution<int> pick(0, F.order() - 1);
              const bool all = F.order() <= 81;
              long long n = 0, bad = 0;
              auto test = [&](FE a, FE b, FE c) {
                ++n;
                bool ok = F.add(F.add(a, b), c) == F.add(a, F.add(b, c)) && F.mul(F.mul(a, b), c) == F.mul(a, F.mul(b, c)) &&
                          F.mul(a, F.add(b, c)) == F.add(F.mul(a, b), F.mul(a, c)) && F.mul(a, b) == F.mul(b, a) &&
                          F.add(a, F.neg(a)) == F.zero() && T.conj(F.mul(a, b)) == F.mul(T.conj(a), T.conj(b)) &&
                          T.conj(F.add(a, b)) == F.add(T.conj(a), T.conj(b)) && T.conj(T.conj(a)) == a;
                if (a != F.zero()) ok = ok && F.mul(a, F.inv(a)) == F.one();
                bad += !ok;
              };
              if (all) {
                for (int a = 0; a < F.order(); ++a)
                  for (int b = 0; b < F.order(); ++b)
                    for (int c = 0; c < F.order(); ++c) test(F.element(a), F.element(b), F.element(c));
              } else {
                for (int i = 0; i < 20000; ++i) test(F.element(pick(rng)), F.element(pick(rng)), F.element(pick(rng)));
              }
              return Outcome{bad == 0, std::to_string(n - bad) + "/" + std::to_string(n) + " triples"};
            });

  ctx.check("properties.series_ring", "E is a commutative ring with inverses of units and conjugation", 10,
            "500 random triples", "exact ring laws, a·a⁻¹ = 1 to precision N-4", [&] {
              const auto& T = ctx.tower();
              const int N = ctx.cfg().precision;
              auto rng = ctx.rng("properties.series_ring");
              const Series one = Series::from_int(T, 1);
              int bad = 0;
              for (int i = 0; i < 500; ++i) {
                Series a = random_series(T, -1, 2, rng), b = random_series(T, -1, 2, rng), c = random_series(T, 0, 3, rng);
                bool ok = (a * b) * c == a * (b * c) && a * b == b * a && a * (b + c) == a * b + a * c &&
                          (a * b).conj() == a.conj() * b.conj() && a.conj().conj() == a;
                if (!a.is_zero()) ok = ok && (a * a.inv()).agrees_with(one, N - 4);
                bad += !ok;
              }
              return Outcome{bad == 0, std::to_string(500 - bad) + "/500"};
            });
}

void weight_checks(Ctx& ctx, KTag k) {
  const std::string K = to_string(k);
  ctx.check("properties.weight_homomorphism." + K, "ρ(gh) = ρ(g)ρ(h) on every catalog weight", 10,
            K + ", 100 random pairs per weight", "no violations", [&] {
              auto rng = ctx.rng("properties.weight_homomorphism." + K);
              int n = 0, bad = 0;
              for (const auto& nw : ctx.catalog(k))
                for (int i = 0; i < 100; ++i) {
                  const auto& G = nw.w.gamma();
                  bad += !is_homomorphic_on(nw.w, random_gamma(G, rng), random_gamma(G, rng));
                  ++n;
                }
              return Outcome{bad == 0, std::to_string(n - bad) + "/" + std::to_string(n)};
            });
}

void induced_checks(Ctx& ctx, KTag k) {
  const std::string K = to_string(k);
  const auto& T = ctx.tower();
  ctx.check("properties.action." + K, "(g1 g2)·f = g1·(g2·f)", 10, K + ", σ in trivial, st; f = f1; 10 pairs each",
            "equal normalized functions", [&] {
              auto rng = ctx.rng("properties.action." + K);
              int n = 0, bad = 0;
              for (const auto& nw : ctx.basic_catalog(k)) {
                if (nw.name != "trivial" && nw.name != "st") continue;
                const InducedFn f = f_basis(nw.w, 1);
                for (int i = 0; i < 10; ++i) {
                  const GElem g1 = random_g(T, nw.w.gamma(), k, rng), g2 = random_g(T, nw.w.gamma(), k, rng);
                  bad += !(g_act(g1 * g2, f) == g_act(g1, g_act(g2, f)));
                  ++n;
                }
              }
              return Outcome{bad == 0, std::to_string(n - bad) + "/" + std::to_string(n)};
            });

  ctx.check("properties.normalization." + K, "normal form is idempotent and independent of presentation", 10,
            K + ", σ = st, f = f1 + f_-1, 10 shuffled re-presentations",
            "from_generators([g k, σ(k)⁻¹ v]) in any order = f", [&] {
              const Weight s = ctx.basic_catalog(k)[1].w;
              auto rng = ctx.rng("properties.normalization." + K);
              const InducedFn f = f_basis(s, 1) + f_basis(s, -1);
              std::vector<Generator> gens;
              for (const auto& [key, gen] : f.generators()) gens.push_back(gen);
              bool ok = from_generators(s, gens) == f;
              int bad = 0;
              for (int i = 0; i < 10; ++i) {
                std::vector<Generator> re;
                for (const auto& gen : gens) {
                  const GammaElem& gk = random_gamma(s.gamma(), rng);
                  re.push_back({gen.g * lift_to_K(T, gk), s.action(s.gamma().inv(gk)) * gen.v});
                }
                std::shuffle(re.begin(), re.end(), rng);
                bad += !(from_generators(s, re) == f);
              }
              return Outcome{ok && bad == 0, std::string(ok ? "idempotent" : "not idempotent") + ", " +
                                                 std::to_string(10 - bad) + "/10 re-presentations agree"};
            });

  ctx.check("properties.T_equivariance." + K, "T(g·f) = g·T(f), and T_σ = T or T + 1", 10,
            K + ", basic weights, f = f0, 3 random g each", "equal normalized functions", [&] {
              auto rng = ctx.rng("properties.T_equivariance." + K);
              int n = 0, bad = 0;
              for (const auto& nw : ctx.basic_catalog(k)) {
                const InducedFn f0 = f_basis(nw.w, 0);
                const InducedFn tf = op_T(f0);
                const InducedFn want = uses_T_plus_one(nw.w) ? tf + f0 : tf;
                bad += !(op_T_sigma(f0) == want);
                ++n;
                for (int i = 0; i < 3; ++i) {
                  const GElem g = random_g(T, nw.w.gamma(), k, rng);
                  bad += !(op_T(g_act(g, f0)) == g_act(g, tf));
                  ++n;
                }
              }
              return Outcome{bad == 0, std::to_string(n - bad) + "/" + std::to_string(n)};
            });
}

void precision_checks(Ctx& ctx, KTag k) {
  const std::string K = to_string(k);
  const int N = ctx.cfg().precision;
  ctx.check("properties.precision_soundness." + K, "certified results agree between N and 2N", 10,
            K + ", 50 coset keys, T f_n coefficients for n in ±1, ±2 on trivial and st", "identical", [&] {
              const auto& T = ctx.tower();
              const GammaGroup& G = *ctx.gamma(k);
              auto at = [&](int prec, auto&& fn) {
                PrecisionScope scope(prec);
                return fn();
              };
              int n = 0, bad = 0;
              for (int i = 0; i < 50; ++i) {
                auto key = [&] {
                  auto rng = ctx.rng("properties.precision_soundness." + K + "." + std::to_string(i));
                  return coset_form(random_g(T, G, k, rng) * random_g(T, G, k, rng), k).key;
                };
                bad += at(N, key) != at(2 * N, key);
                ++n;
              }
              for (const auto& nw : ctx.basic_catalog(k)) {
                if (nw.name != "trivial" && nw.name != "st") continue;
                for (int m : {1, -1, 2, -2}) {
                  auto coeffs = [&] {
                    return basis_coefficients(point_T(hecke_kernel(nw.w), f_point(nw.w, m)), -4, 4);
                  };
                  bad += at(N, coeffs) != at(2 * N, coeffs);
                  ++n;
                }
              }
              return Outcome{bad == 0, std::to_string(n - bad) + "/" + std::to_string(n) + " agree"};
            });
}

}  // namespace

void suite_properties(Ctx& ctx) {
  field_checks(ctx);
  for (KTag k : ctx.tags()) {
    weight_checks(ctx, k);
    induced_checks(ctx, k);
    precision_checks(ctx, k);
  }
}

}  // namespace u21::detail

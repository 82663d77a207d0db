#include <sstream>

#include "harness_internal.hpp"

namespace u21::detail {

namespace {

// y with x x̄ + y + ȳ = 0: −x x̄/2 plus a trace-zero part 𝔱·s, s ∈ F.
Series matching_y(const FieldTower& T, const Series& x, std::mt19937& rng) {
  const auto& F = T.lambda();
  const auto& kF = T.kF();
  std::uniform_int_distribution<std::size_t> pick(0, kF.size() - 1);
  std::vector<FE> c;
  for (int d = -1; d <= 1; ++d) c.push_back(F.mul(T.trace_zero_unit(), kF[pick(rng)]));
  Series s = Series::from_coeffs(T, -1, c);
  return (x * x.conj()).scaled(F.neg(F.inv(F.from_int(2)))) + s;
}

// Pairwise test that the elements lie in distinct cosets of the level-`m`
// subgroup on the given side.
bool distinct_cosets(const std::vector<GElem>& us, Side side, KTag k, int m) {
  const Subgroup tag = side == Side::N ? Subgroup::N_k : Subgroup::Nprime_k;
  for (std::size_t a = 0; a < us.size(); ++a) {
    const GElem ia = us[a].inverse();
    for (std::size_t b = a + 1; b < us.size(); ++b)
      if (member(ia * us[b], tag, k, m)) return false;
  }
  return true;
}

void useful_identity_check(Ctx& ctx) {
  const int N = ctx.cfg().precision;
  ctx.check("notation.useful_identity", "β n(x,y) = n(ȳ⁻¹x, y⁻¹) h(ȳ⁻¹) n'(−ȳ⁻¹x̄, y⁻¹)", 1,
            "200 random (x, y), y ≠ 0", "agreement to precision N-4", [&] {
              const auto& T = ctx.tower();
              auto rng = ctx.rng("notation.useful_identity");
              int bad = 0, done = 0;
              while (done < 200) {
                Series x = random_series(T, -1, 1, rng);
                Series y = matching_y(T, x, rng);
                if (y.is_zero()) continue;
                ++done;
                GElem lhs = beta(T) * make_n(x, y);
                UsefulIdentity u = useful_identity(x, y);
                GElem rhs = u.n_part * u.h_part * u.nprime_part;
                if (rhs.precision() < N - 4) throw InsufficientPrecision("useful identity below N-4");
                if (!lhs.agrees_with(rhs, N - 4)) ++bad;
              }
              return Outcome{bad == 0, std::to_string(200 - bad) + "/200 agree"};
            });
}

void constants_checks(Ctx& ctx, KTag k) {
  const std::string K = to_string(k);
  const IwahoriConstants want = k == KTag::K0 ? IwahoriConstants{0, 1, 3} : IwahoriConstants{-1, 2, 1};
  auto fmt = [](const IwahoriConstants& c) {
    return "(" + std::to_string(c.n_K) + "," + std::to_string(c.m_K) + "," + std::to_string(c.t_K) + ")";
  };
  ctx.check("notation.iwahori_constants." + K, "(n_K, m_K, t_K) by membership scan", 2, K, fmt(want), [&] {
    IwahoriConstants c = iwahori_constants(ctx.tower(), k);
    return Outcome{c.n_K == want.n_K && c.m_K == want.m_K && c.t_K == want.t_K, fmt(c)};
  });
  const int q = ctx.tower().q();
  long long qt = 1, qr = 1;
  for (int i = 0; i < want.t_K; ++i) qt *= q;
  for (int i = 0; i < 4 - want.t_K; ++i) qr *= q;
  ctx.check("notation.layer_orders." + K, "|N_{n_K}/N_{n_K+1}| = q^{t_K}, |N'_{m_K}/N'_{m_K+1}| = q^{4-t_K}", 2, K,
            std::to_string(qt) + ", " + std::to_string(qr), [&] {
              const auto& T = ctx.tower();
              const auto& c = cached_iwahori_constants(T, k);
              auto n = layer_reps(T, Side::N, c.n_K);
              auto np = layer_reps(T, Side::Nprime, c.m_K);
              bool ok = static_cast<long long>(n.size()) == qt && static_cast<long long>(np.size()) == qr &&
                        distinct_cosets(n, Side::N, k, c.n_K + 1) && distinct_cosets(np, Side::Nprime, k, c.m_K + 1);
              for (const auto& u : n) ok = ok && member(u, Subgroup::I1_K, k);
              for (const auto& u : np) ok = ok && member(u, Subgroup::I1_K, k);
              return Outcome{ok, std::to_string(n.size()) + ", " + std::to_string(np.size())};
            });
}

void exchange_checks(Ctx& ctx, KTag k) {
  const std::string K = to_string(k);
  const int N = ctx.cfg().precision;
  ctx.check("notation.exchange." + K, "u'u = u1 h u'1 and u u' = u'1 h u1", 3, K + ", 200 random pairs",
            "exact reassembly with factors in N_{n_K}, H1, N'_{m_K}", [&] {
              const auto& T = ctx.tower();
              const auto& c = cached_iwahori_constants(T, k);
              auto rng = ctx.rng("notation.exchange." + K);
              int bad = 0;
              for (int i = 0; i < 200; ++i) {
                GElem u = random_unipotent(T, Side::N, c.n_K, 4, rng);
                GElem up = random_unipotent(T, Side::Nprime, c.m_K, 4, rng);
                Exchange e = exchange(up, u, k);
                Exchange e2 = exchange2(u, up, k);
                bool ok = (e.first * e.torus * e.second).agrees_with(up * u, N - 4) &&
                          (e2.first * e2.torus * e2.second).agrees_with(u * up, N - 4) &&
                          member(e.first, Subgroup::N_k, k, c.n_K) && member(e.torus, Subgroup::H1, k) &&
                          member(e.second, Subgroup::Nprime_k, k, c.m_K) &&
                          member(e2.first, Subgroup::Nprime_k, k, c.m_K) && member(e2.torus, Subgroup::H1, k) &&
                          member(e2.second, Subgroup::N_k, k, c.n_K);
                bad += !ok;
              }
              return Outcome{bad == 0, std::to_string(200 - bad) + "/200 reassemble"};
            });

  ctx.check("notation.exchange_bijection." + K, "u ↦ u1 and u' ↦ u'1 permute N_{n_K+l}/N_{n_K+m} (resp. N')", 3,
            K + ", (l,m) in {(0,1),(0,2),(1,3)} and {(1,2),(1,3),(2,4)}, 2 random partners each",
            "images lie in the level-l group and are pairwise distinct modulo level m", [&] {
              const auto& T = ctx.tower();
              const auto& c = cached_iwahori_constants(T, k);
              auto rng = ctx.rng("notation.exchange_bijection." + K);
              int tested = 0, bad = 0;
              for (auto [l, m] : {std::pair{0, 1}, {0, 2}, {1, 3}})
                for (int trial = 0; trial < 2; ++trial) {
                  GElem up = random_unipotent(T, Side::Nprime, c.m_K, 4, rng);
                  std::vector<GElem> imgs;
                  bool ok = true;
                  for (const auto& u : coset_reps(T, k, Side::N, c.n_K + l, c.n_K + m)) {
                    GElem u1 = exchange(up, u, k).first;
                    ok = ok && member(u1, Subgroup::N_k, k, c.n_K + l);
                    imgs.push_back(std::move(u1));
                  }
                  ok = ok && distinct_cosets(imgs, Side::N, k, c.n_K + m);
                  ++tested;
                  bad += !ok;
                }
              for (auto [l, m] : {std::pair{1, 2}, {1, 3}, {2, 4}})
                for (int trial = 0; trial < 2; ++trial) {
                  GElem u = random_unipotent(T, Side::N, c.n_K, 4, rng);
                  std::vector<GElem> imgs;
                  bool ok = true;
                  for (const auto& up : coset_reps(T, k, Side::Nprime, c.m_K + l, c.m_K + m)) {
                    GElem up1 = exchange2(u, up, k).first;
                    ok = ok && member(up1, Subgroup::Nprime_k, k, c.m_K + l);
                    imgs.push_back(std::move(up1));
                  }
                  ok = ok && distinct_cosets(imgs, Side::Nprime, k, c.m_K + m);
                  ++tested;
                  bad += !ok;
                }
              (void)N;
              return Outcome{bad == 0, std::to_string(tested - bad) + "/" + std::to_string(tested) + " quotients"};
            });
}

}  // namespace

void suite_notation(Ctx& ctx) {
  useful_identity_check(ctx);
  for (KTag k : ctx.tags()) {
    constants_checks(ctx, k);
    exchange_checks(ctx, k);
  }
}

}  // namespace u21::detail

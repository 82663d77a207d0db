#include <set>

#include "harness_internal.hpp"

namespace u21::detail {

namespace {

// ⟨K f1⟩: dimension 1 + q^{t_K}, disjoint translates, ≅ Ind χ_σ^s.
void spin_check(Ctx& ctx, KTag k, const NamedWeight& nw) {
  const std::string K = to_string(k);
  const auto& T = ctx.tower();
  const int t = cached_iwahori_constants(T, k).t_K;
  long long want = 1;
  for (int i = 0; i < t; ++i) want *= T.q();
  ++want;
  ctx.check("regular.spin_f1." + K + "." + nw.name, "⟨K f1⟩ ≅ Ind_𝔹 χ_σ^s with a basis of disjoint translates", 8,
            K + ", σ = " + nw.name, "dim " + std::to_string(want) + ", disjoint supports, full-rank intertwiner",
            [&] {
              const Weight& s = nw.w;
              SpunModule m = spin_K(f_basis(s, 1));
              const int dim = m.weight.dim();
              std::set<CosetKey> seen;
              bool disjoint = true;
              std::size_t total = 0;
              for (const auto& f : m.translates)
                for (const auto& [key, gen] : f.generators()) {
                  disjoint = disjoint && seen.insert(key).second;
                  ++total;
                }
              const Weight ps = make_principal_series(s.gamma_ptr(), char_s(T, chi_of(s), k));
              auto iso = find_isomorphism(m.weight, ps);
              const bool full = iso && iso->rank() == dim;
              return Outcome{dim == want && disjoint && full && static_cast<long long>(m.translates.size()) == want,
                             "dim " + std::to_string(dim) + ", " + std::to_string(m.translates.size()) +
                                 " translates over " + std::to_string(total) + " cosets" +
                                 (disjoint ? ", disjoint" : ", overlapping") +
                                 (full ? ", intertwiner rank " + std::to_string(iso->rank()) : ", no isomorphism")};
            });
}

// Ind χ_σ: socle σ^s, head σ, non-split.
void principal_series_check(Ctx& ctx, const NamedWeight& nw) {
  ctx.check("regular.principal_series.K1." + nw.name, "Ind_𝔹 χ_σ has length two, socle σ^s, head σ, non-split", 9,
            "K1, σ = " + nw.name, "chain of length 2 with those layers; no Γ-stable complement", [&] {
              const Weight& s = nw.w;
              const auto& F = s.field();
              const Weight ps = make_principal_series(s.gamma_ptr(), chi_of(s));
              const Weight ss = weight_s(s);
              SocleReport rep = socle_series(ps);
              bool ok = rep.chain && rep.length() == 2 && rep.layers[0].quotient == fingerprint(ss) &&
                        rep.layers[1].quotient == fingerprint(s);
              Subspace soc(F, ps.dim());
              for (const auto& h : hom_space(ss, ps))
                for (int c = 0; c < h.cols(); ++c) soc.add(h.column(c));
              ok = ok && soc.dim() == ss.dim();
              const bool splits = submodule_splits(ps, soc);
              std::string obs = std::string(rep.chain ? "chain" : "no chain") + " of length " +
                                std::to_string(rep.length()) + ", socle dim " + std::to_string(soc.dim()) +
                                (splits ? ", splits" : ", non-split");
              return Outcome{ok && !splits, obs};
            });
}

// (T) ∩ ⟨K f1⟩ = span T[Id, σ] ≅ σ with quotient σ^s.
void t_image_check(Ctx& ctx, const NamedWeight& nw) {
  ctx.check("regular.T_image.K1." + nw.name, "(T) ∩ ⟨K f1⟩ = T[Id, σ] ≅ σ, quotient σ^s", 9, "K1, σ = " + nw.name,
            "W ⊂ ⟨K f1⟩, W ≅ σ, outward injectivity, quotient fingerprint = σ^s", [&] {
              const Weight& s = nw.w;
              const auto& F = s.field();
              SpunModule m = spin_K(f_basis(s, 1));
              Subspace W(F, m.weight.dim());
              bool inside = true;
              for (const auto& t : t_of_base(s)) {
                auto c = coordinates_in(m.basis, t);
                inside = inside && c.has_value();
                if (c) W.add(*c);
              }
              if (!inside) return Outcome{false, "T[Id, v] outside ⟨K f1⟩"};
              const bool iso = find_isomorphism(s, sub_weight(m.weight, W)).has_value();
              const bool inj = t_outward_injective(s);
              const bool quot = fingerprint(quotient_weight(m.weight, W)) == fingerprint(weight_s(s));
              std::string obs = "dim W = " + std::to_string(W.dim()) + (iso ? ", ≅ σ" : ", ≇ σ") +
                                (inj ? ", injective" : ", not injective") + (quot ? ", quotient σ^s" : ", quotient ≠ σ^s");
              return Outcome{W.dim() == s.dim() && iso && inj && quot, obs};
            });
}

}  // namespace

void suite_regular(Ctx& ctx) {
  for (KTag k : ctx.tags()) {
    for (const auto& nw : ctx.catalog(k)) spin_check(ctx, k, nw);
    if (k != KTag::K1) continue;
    int regular = 0;
    for (const auto& nw : ctx.catalog(k)) {
      if (nw.name.rfind("ps_", 0) != 0) continue;
      ++regular;
      principal_series_check(ctx, nw);
      t_image_check(ctx, nw);
    }
    if (regular == 0)
      ctx.check("regular.catalog.K1", "regular weights present", 9, "K1", "at least one", []() -> Outcome {
        throw std::runtime_error("regular weights are only catalogued for f = 1");
      });
  }
}

}  // namespace u21::detail

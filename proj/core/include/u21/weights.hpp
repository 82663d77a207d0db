#pragma once

// Weights: finite-dimensional Λ-representations of Γ_K.

#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "u21/linalg.hpp"
#include "u21/unitary_group.hpp"

namespace u21 {

class NotApplicable : public AlgebraError {
 public:
  using AlgebraError::AlgebraError;
};

class DegenerateWeight : public AlgebraError {
 public:
  using AlgebraError::AlgebraError;
};

class InconclusiveLattice : public AlgebraError {
 public:
  using AlgebraError::AlgebraError;
};

/// The finite group Γ_K, enumerated by closure from its Bruhat generators.
/// Holds a pointer to the tower, which must outlive it.
class GammaGroup {
 public:
  GammaGroup(const FieldTower& tower, KTag k);

  const FieldTower& tower() const { return *tower_; }
  KTag k() const { return k_; }
  std::size_t order() const { return elements_.size(); }
  const std::vector<GammaElem>& elements() const { return elements_; }
  bool contains(const GammaElem& g) const;

  GammaElem identity() const { return gamma_identity(*tower_, k_); }
  GammaElem mul(const GammaElem& a, const GammaElem& b) const { return gamma_mul(*tower_, a, b); }
  GammaElem inv(const GammaElem& a) const { return gamma_inverse(*tower_, a); }

  /// Image of β_K.
  const GammaElem& weyl() const { return weyl_; }
  /// Images of diag(ε, 1, ε̄⁻¹) and diag(1, ζ, 1).
  const GammaElem& torus_a() const { return torus_a_; }
  const GammaElem& torus_b() const { return torus_b_; }
  /// 𝕌, in the order of the layer representatives of N_{n_K}/N_{n_K+1}.
  const std::vector<GammaElem>& unipotent() const { return unipotent_; }
  /// 𝕌' = β 𝕌 β, the opposite unipotent radical.
  const std::vector<GammaElem>& lower_unipotent() const { return lower_; }
  /// Torus generators, the Weyl element and one element of 𝕌 whose torus
  /// orbit generates 𝕌. Γ_K is enumerated from these.
  const std::vector<GammaElem>& generators() const { return generators_; }
  /// One representative (the least element) per conjugacy class, sorted.
  const std::vector<GammaElem>& class_reps() const;

 private:
  const FieldTower* tower_;
  KTag k_;
  std::vector<GammaElem> elements_;  // sorted
  GammaElem weyl_, torus_a_, torus_b_;
  std::vector<GammaElem> unipotent_, lower_, generators_;
  mutable std::once_flag classes_once_;
  mutable std::vector<GammaElem> class_reps_;
};

using GammaPtr = std::shared_ptr<const GammaGroup>;
GammaPtr make_gamma(const FieldTower& tower, KTag k);

enum class WeightKind { Trivial, DetTwist, PrincipalSeries, Steinberg, PsSub, PsQuotient, Sub, Quotient, Twist, Spun };

std::string to_string(WeightKind k);

/// A representation ρ: Γ_K → GL_d(Λ). Matrices are computed on demand and
/// cached; copies share the cache.
class Weight {
 public:
  using ActionFn = std::function<Matrix(const GammaElem&)>;

  Weight(GammaPtr gamma, int dim, WeightKind kind, std::string name, ActionFn action,
         std::optional<Character> chi = std::nullopt);

  int dim() const { return impl_->dim; }
  KTag k() const { return impl_->gamma->k(); }
  const GammaGroup& gamma() const { return *impl_->gamma; }
  const GammaPtr& gamma_ptr() const { return impl_->gamma; }
  const FieldTower& tower() const { return impl_->gamma->tower(); }
  const FiniteField& field() const { return tower().lambda(); }
  WeightKind kind() const { return impl_->kind; }
  const std::string& name() const { return impl_->name; }
  /// The character the weight was built from, if any.
  const std::optional<Character>& built_from() const { return impl_->chi; }

  const Matrix& action(const GammaElem& g) const;
  Vec act(const GammaElem& g, const Vec& v) const { return action(g) * v; }

 private:
  struct Impl {
    GammaPtr gamma;
    int dim;
    WeightKind kind;
    std::string name;
    ActionFn fn;
    std::optional<Character> chi;
    mutable std::mutex mu;
    mutable std::map<GammaElem, Matrix> cache;
  };
  std::shared_ptr<Impl> impl_;
};

// ---- construction -------------------------------------------------------------

Weight make_trivial(const GammaPtr& G);
/// θ_k ∘ det with θ_k(z) = z^k on the norm-one group.
Weight make_det_twist(const GammaPtr& G, int k);
/// Ind_𝔹^Γ χ on functions f(bγ) = χ(b) f(γ); basis indexed by 𝔹\Γ with
/// representatives 1 and β u, u ∈ 𝕌.
Weight make_principal_series(const GammaPtr& G, const Character& chi);
/// Ind_𝔹^Γ 1 modulo the constants.
Weight make_steinberg(const GammaPtr& G);
enum class PsPart { Sub, Quotient };
/// Socle or head of Ind_𝔹^Γ χ for regular χ; only for K1 with q = p.
Weight make_ps_part(const GammaPtr& G, const Character& chi, PsPart part);
Weight sub_weight(const Weight& w, const Subspace& W, WeightKind kind = WeightKind::Sub, std::string name = "sub");
Weight quotient_weight(const Weight& w, const Subspace& W, WeightKind kind = WeightKind::Quotient,
                       std::string name = "quotient");
/// w ⊗ (θ_k ∘ det).
Weight twist(const Weight& w, int k);

/// Declarative form used by the harness and CLI.
struct WeightSpec {
  enum class Kind { Trivial, DetTwist, PrincipalSeries, Steinberg, SteinbergTwist, PsSub, PsQuotient } kind =
      Kind::Trivial;
  int det_power = 0;
  Character chi{};
};
Weight make_weight(const GammaPtr& G, const WeightSpec& spec);

// ---- invariants ---------------------------------------------------------------

/// σ^𝕌 (equal to σ^{I_{1,K}}).
Subspace u_invariants(const Weight& w);
/// span{(u' − 1)v : u' ∈ 𝕌'}; σ_{I'_1} is the quotient by it.
Subspace lower_coinvariant_kernel(const Weight& w);
/// The generator v0 of σ^𝕌 (first reduced basis vector).
Vec v0(const Weight& w);
/// j_σ = v0 · λᵀ where λ kills the coinvariant kernel and λ(v0) = 1.
Matrix j_map(const Weight& w);
/// Character of the torus on σ^𝕌.
Character chi_of(const Weight& w);
/// The weight σ^s with χ_{σ^s} = (χ_σ)^s.
Weight weight_s(const Weight& w);
/// dim σ = 1 and χ_σ = θ∘det.
bool is_det_twist_weight(const Weight& w);

// ---- submodules ---------------------------------------------------------------

Subspace spin(const Weight& w, const std::vector<Vec>& seeds);

struct Fingerprint {
  int dim = 0;
  std::optional<Character> chi;
  std::vector<FE> traces;
  friend bool operator==(const Fingerprint&, const Fingerprint&) = default;
};
Fingerprint fingerprint(const Weight& w);
std::string to_string(const Fingerprint& f);

struct SocleLayer {
  int dim = 0;  // dimension of the submodule
  Fingerprint quotient;  // of this submodule by the previous one
};

struct SocleReport {
  bool chain = false;
  std::vector<SocleLayer> layers;  // increasing chain ending in the whole space
  int length() const { return static_cast<int>(layers.size()); }
};

/// Spins every torus eigenvector of σ^𝕌 and every basis vector of σ^𝕌;
/// the distinct submodules found, plus σ itself. When they do not form a
/// chain, chain is false and the layers carry dimensions only.
SocleReport socle_series(const Weight& w);

/// Basis of Hom_Γ(a, b), as dim b × dim a matrices.
std::vector<Matrix> hom_space(const Weight& a, const Weight& b);
/// An isomorphism a → b if one exists among the hom-space basis vectors
/// (and their sum).
std::optional<Matrix> find_isomorphism(const Weight& a, const Weight& b);
/// True if the submodule W of w has a Γ-stable complement, i.e. some
/// intertwiner P: w → W restricts to the identity on W.
bool submodule_splits(const Weight& w, const Subspace& W);
/// ρ(g h) = ρ(g) ρ(h).
bool is_homomorphic_on(const Weight& w, const GammaElem& g, const GammaElem& h);

}  // namespace u21

#pragma once

// G = U(2,1)(E/F) for the antidiagonal hermitian form β, over E = k_E((t)).
//
// Elements are 3×3 matrices of Series. The subgroups used throughout are
//   K0, K1        the two maximal compact subgroups (valuation patterns),
//   K¹            kernel of the reduction K → Γ_K,
//   I_K, I_{1,K}  preimages of the Borel 𝔹 and its unipotent radical 𝕌,
//   N_k, N'_k     upper / lower unipotents n(x, y), n'(x, y) with y ∈ 𝔭^k,
//   H0, H1        the diagonal torus intersected with I_K and I_{1,K}.

#include <array>
#include <compare>
#include <string>
#include <vector>

#include "u21/laurent.hpp"

namespace u21 {

class RelationViolated : public AlgebraError {
 public:
  using AlgebraError::AlgebraError;
};

class MembershipViolated : public AlgebraError {
 public:
  using AlgebraError::AlgebraError;
};

class GElem {
 public:
  GElem() = default;
  explicit GElem(const FieldTower& tower);

  static GElem identity(const FieldTower& tower);
  static GElem from_entries(const FieldTower& tower, const std::array<Series, 9>& entries);

  const FieldTower& tower() const { return *tower_; }
  const Series& operator()(int i, int j) const { return a_[3 * i + j]; }
  Series& operator()(int i, int j) { return a_[3 * i + j]; }

  GElem operator*(const GElem& o) const;
  /// β ḡᵀ β, the inverse of a unitary element.
  GElem inverse() const;
  GElem conj() const;
  GElem transpose() const;

  bool is_exact() const;
  /// Minimum absolute precision across entries.
  int precision() const;
  /// gᵀ β ḡ − β; vanishes (to precision) exactly when g ∈ G.
  GElem unitarity_defect() const;
  bool agrees_with(const GElem& o, int upto) const;

  friend bool operator==(const GElem& a, const GElem& b) { return a.a_ == b.a_; }

  std::string to_string() const;

 private:
  const FieldTower* tower_ = nullptr;
  std::array<Series, 9> a_;
};

// ---- constructors -------------------------------------------------------

GElem make_n(const Series& x, const Series& y);
GElem make_nprime(const Series& x, const Series& y);
/// h(x) = diag(x, −x̄/x, x̄⁻¹).
GElem make_h(const Series& x);
/// diag(a, b, ā⁻¹); requires b b̄ = 1.
GElem make_torus(const Series& a, const Series& b);
/// α^n = diag(t^−n, 1, t^n).
GElem alpha_pow(const FieldTower& tower, int n);
GElem beta(const FieldTower& tower);
/// β' = β α⁻¹.
GElem beta_prime(const FieldTower& tower);
/// The unique element of K ∩ {β, β'}.
GElem beta_K(const FieldTower& tower, KTag k);

// ---- membership ---------------------------------------------------------

enum class Subgroup { G, K0, K1, Ksub1, I_K, I1_K, N_k, Nprime_k, H0, H1 };

/// Membership test. `k` selects the maximal compact for Ksub1, I_K, I1_K,
/// H0, H1; `level` is the filtration index for N_k and N'_k.
bool member(const GElem& g, Subgroup tag, KTag k = KTag::K0, int level = 0);
bool in_K(const GElem& g, KTag k);
/// Valuation-pattern test only (no unitarity check); for products of
/// elements already known to lie in G.
bool in_K_pattern(const GElem& g, KTag k);
/// g⁻¹ g' ∈ K.
bool same_coset(const GElem& g, const GElem& gp, KTag k);

struct IwahoriConstants {
  int n_K = 0;
  int m_K = 0;
  int t_K = 0;
};

/// Determined by scanning membership of the layers N_k/N_{k+1}, N'_k/N'_{k+1}
/// in I_{1,K}.
IwahoriConstants iwahori_constants(const FieldTower& tower, KTag k);
/// Memoised iwahori_constants, keyed by (p, f, K).
const IwahoriConstants& cached_iwahori_constants(const FieldTower& tower, KTag k);

// ---- the groups L_{q^3} and L_q ------------------------------------------

struct LElem {
  FE x;
  FE t;
  friend bool operator==(const LElem&, const LElem&) = default;
  friend auto operator<=>(const LElem&, const LElem&) = default;
};

/// (x, t)·(x', t') = (x + x', t + t' − x x̄'), matching n(x, t) n(x', t').
LElem l_mul(const FieldTower& tower, const LElem& a, const LElem& b);
bool l_valid(const FieldTower& tower, const LElem& a);
/// All of L_{q^3} (big = true) or L_q, in lexicographic encoding order.
std::vector<LElem> enumerate_L(const FieldTower& tower, bool big);

// ---- identities ------------------------------------------------------------

struct UsefulIdentity {
  GElem n_part;       // n(ȳ⁻¹x, y⁻¹)
  GElem h_part;       // h(ȳ⁻¹)
  GElem nprime_part;  // n'(−ȳ⁻¹x̄, y⁻¹)
};

/// The factorisation β·n(x, y) = n(ȳ⁻¹x, y⁻¹) h(ȳ⁻¹) n'(−ȳ⁻¹x̄, y⁻¹).
UsefulIdentity useful_identity(const Series& x, const Series& y);

struct Exchange {
  GElem first;   // u1 for exchange, u'1 for exchange2
  GElem torus;   // h ∈ H1
  GElem second;  // u'1 for exchange, u1 for exchange2
};

/// u' u = u1 h u'1 with u1 ∈ N_{n_K}, h ∈ H1, u'1 ∈ N'_{m_K}, from the
/// closed formulas for x2, y2.
Exchange exchange(const GElem& uprime, const GElem& u, KTag k);
/// u u' = u'1 h u1 with the roles of N and N' swapped.
Exchange exchange2(const GElem& u, const GElem& uprime, KTag k);

/// Generic Gaussian factorisations M = L D U and M = U D L (unipotent L, U).
Exchange ldu(const GElem& m);
Exchange udl(const GElem& m);

// ---- coset representatives ---------------------------------------------------

enum class Side { N, Nprime };

/// Representatives of the layer N_k/N_{k+1} (resp. N'_k/N'_{k+1}).
std::vector<GElem> layer_reps(const FieldTower& tower, Side side, int k);
/// A complete duplicate-free set of representatives of N_a/N_b (resp. N'),
/// as ordered products of layer representatives.
std::vector<GElem> coset_reps(const FieldTower& tower, KTag k, Side side, int a, int b);

// ---- the finite quotient Γ_K ----------------------------------------------

/// An element of Γ_K as a 3×3 matrix over k_E. For K1 the matrix has the
/// block shape [[a,0,b],[0,s,0],[c,0,d]] where [[a,b],[c,d]] is the U(1,1)
/// part and s the U(1) part.
struct GammaElem {
  KTag k = KTag::K0;
  std::array<FE, 9> m{};
  FE operator()(int i, int j) const { return m[3 * i + j]; }
  friend bool operator==(const GammaElem&, const GammaElem&) = default;
  friend auto operator<=>(const GammaElem&, const GammaElem&) = default;
};

GammaElem gamma_identity(const FieldTower& tower, KTag k);
GammaElem gamma_mul(const FieldTower& tower, const GammaElem& a, const GammaElem& b);
GammaElem gamma_inverse(const FieldTower& tower, const GammaElem& a);
FE gamma_det(const FieldTower& tower, const GammaElem& a);
bool gamma_in_borel(const GammaElem& a);
bool gamma_in_unipotent(const FieldTower& tower, const GammaElem& a);

/// K → Γ_K: the residue matrix for K0; for K1 the pair
/// ([[g11, ϖ g13], [ϖ⁻¹ g31, g33]] mod 𝔭, g22 mod 𝔭).
GammaElem reduce_to_gamma(KTag k, const GElem& g);
/// A lift of γ to K with Laurent-polynomial entries.
GElem lift_to_K(const FieldTower& tower, const GammaElem& g);

/// H0/H1 computed as the image of the torus under reduce_to_gamma.
TorusShape torus_quotient(const FieldTower& tower, KTag k);
/// Character value on a diagonal element of Γ_K.
FE evaluate_on_gamma(const FieldTower& tower, const Character& chi, const GammaElem& diag);

// ---- the Iwahori-type normal form of cosets gK -------------------------------

/// Canonical label of a coset gK ∈ G/K.
struct CosetKey {
  int n = 0;
  std::vector<std::int32_t> data;
  friend bool operator==(const CosetKey&, const CosetKey&) = default;
  friend auto operator<=>(const CosetKey&, const CosetKey&) = default;
};

/// g = u⁻¹ α^n k with k ∈ K, and u ∈ N_{n_K} (n ≤ 0) or u ∈ N'_{m_K}
/// (n > 0) a canonical representative modulo I_{1,K} ∩ α^n K α^−n.
/// Equivalently g⁻¹ ∈ K α^−n I_{1,K}: the decomposition G = ⊔ K α^−n I_{1,K}.
struct CosetForm {
  int n = 0;
  GElem u;
  GElem k;
  CosetKey key;
  /// u⁻¹ α^n, the canonical representative of gK.
  GElem rep() const;
};

CosetForm coset_form(const GElem& g, KTag k);

}  // namespace u21

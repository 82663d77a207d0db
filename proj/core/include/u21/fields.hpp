#pragma once

// Finite-field tower k_F ⊂ k_E ⊂ Λ and characters of the finite torus.
//
// All three fields are realised inside a single table-driven field Λ of
// order p^m. Elements are stored as the base-p encoding of their coefficient
// vector in a primitive polynomial basis, which gives a canonical total order
// used for deterministic enumeration.

#include <compare>
#include <cstdint>
#include <functional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace u21 {

class AlgebraError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An element of the coefficient field Λ. Plain value; arithmetic goes
/// through the owning FiniteField.
struct FE {
  std::uint16_t v = 0;
  friend constexpr bool operator==(FE, FE) = default;
  friend constexpr auto operator<=>(FE, FE) = default;
};

class FiniteField {
 public:
  FiniteField(int p, int degree);

  int characteristic() const { return p_; }
  int degree() const { return degree_; }
  int order() const { return order_; }

  FE zero() const { return FE{0}; }
  FE one() const { return FE{1}; }
  FE from_int(long long n) const;
  FE element(int encoding) const;

  FE add(FE a, FE b) const { return FE{add_[idx(a, b)]}; }
  FE sub(FE a, FE b) const { return add(a, neg(b)); }
  FE neg(FE a) const { return FE{neg_[a.v]}; }
  FE mul(FE a, FE b) const {
    if (a.v == 0 || b.v == 0) return FE{0};
    int e = log_[a.v] + log_[b.v];
    if (e >= order_ - 1) e -= order_ - 1;
    return FE{exp_[e]};
  }
  FE inv(FE a) const;
  FE div(FE a, FE b) const { return mul(a, inv(b)); }
  FE pow(FE a, long long e) const;

  /// Generator of Λ^×.
  FE primitive() const { return FE{exp_[1]}; }
  /// Discrete logarithm to the base primitive(); a must be nonzero.
  int log(FE a) const;
  FE exp(long long e) const;

  std::string to_string(FE a) const;

 private:
  std::size_t idx(FE a, FE b) const { return std::size_t(a.v) * order_ + b.v; }

  int p_;
  int degree_;
  int order_;
  std::vector<int> modulus_;  // monic primitive polynomial, low degree first
  std::vector<std::uint16_t> add_;
  std::vector<std::uint16_t> neg_;
  std::vector<std::uint16_t> exp_;
  std::vector<int> log_;
};

/// The residue fields k_F (order q = p^f), k_E (order q^2) and the
/// coefficient field Λ (order p^m, m minimal with (q^2 - 1) | (p^m - 1)).
class FieldTower {
 public:
  FieldTower(int p, int f);

  int p() const { return p_; }
  int f() const { return f_; }
  int q() const { return q_; }
  int m() const { return m_; }
  const FiniteField& lambda() const { return field_; }

  /// x ↦ x^q, the residual Galois conjugation of E/F.
  FE conj(FE a) const { return FE{frob_[a.v]}; }
  FE norm(FE a) const { return field_.mul(a, conj(a)); }
  FE trace(FE a) const { return field_.add(a, conj(a)); }

  bool in_kE(FE a) const;
  bool in_kF(FE a) const { return in_kE(a) && conj(a) == a; }

  /// Elements of k_E / k_F in increasing encoding order.
  const std::vector<FE>& kE() const { return kE_; }
  const std::vector<FE>& kF() const { return kF_; }
  /// Nonzero elements of k_E with trace zero.
  const std::vector<FE>& trace_zero() const { return trace_zero_; }

  /// Generator of k_E^× (order q^2 - 1).
  FE kE_generator() const { return kE_gen_; }
  /// Generator of the norm-one subgroup of k_E^× (order q + 1).
  FE norm_one_generator() const { return norm_one_gen_; }
  /// The fixed nonzero trace-zero element 𝔱 (least encoding).
  FE trace_zero_unit() const { return trace_zero_.front(); }

  /// Exponent e with a = kE_generator()^e, a ∈ k_E^×.
  int kE_log(FE a) const;
  /// Exponent e with a = norm_one_generator()^e, a in the norm-one group.
  int norm_one_log(FE a) const;

 private:
  int p_, f_, q_, m_;
  FiniteField field_;
  std::vector<std::uint16_t> frob_;
  std::vector<FE> kE_, kF_, trace_zero_;
  FE kE_gen_{}, norm_one_gen_{};
};

FieldTower build_tower(int p, int f);

enum class KTag { K0, K1 };

inline const char* to_string(KTag k) { return k == KTag::K0 ? "K0" : "K1"; }

/// A character of the finite torus H0/H1, stored by exponents against the
/// fixed generators diag(ε, 1, ε̄⁻¹) and diag(1, ζ, 1) where ε generates k_E^×
/// and ζ generates the norm-one group. Its value on diag(a, b, ā⁻¹) is
/// a^e1 · b^e2.
struct Character {
  int e1 = 0;  // mod q^2 - 1
  int e2 = 0;  // mod q + 1
  friend bool operator==(const Character&, const Character&) = default;
  friend auto operator<=>(const Character&, const Character&) = default;
};

/// Orders of the two generators of H0/H1; these are computed from the
/// reduction map by unitary_group::torus_quotient().
struct TorusShape {
  int order_a = 0;
  int order_b = 0;
  int size() const { return order_a * order_b; }
};

std::vector<Character> characters_of_torus(const TorusShape& shape);

/// χ evaluated on the torus element diag(a, b, ·) with a ∈ k_E^×, b of norm one.
FE evaluate(const FieldTower& tower, const Character& chi, FE a, FE b);

/// χ(h(x)) for h(x) = diag(x, -x̄/x, x̄⁻¹).
FE evaluate_h(const FieldTower& tower, const Character& chi, FE x);

Character char_s(const FieldTower& tower, const Character& chi, KTag k);
bool is_regular(const FieldTower& tower, const Character& chi, KTag k);
Character char_product(const FieldTower& tower, const Character& a, const Character& b);
/// χ = θ∘det for θ(z) = z^k on the norm-one group.
Character det_character(const FieldTower& tower, int k);
bool is_det_character(const FieldTower& tower, const Character& chi);

std::string to_string(const Character& chi);

}  // namespace u21

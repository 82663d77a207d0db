#pragma once

// Truncated Laurent series over k_E: the scalars of E = k_E((t)).
//
// A Series is either exact (a Laurent polynomial, known to infinite
// precision) or known modulo t^prec. Arithmetic propagates worst-case
// precision:
//   add:  min(prec_a, prec_b)
//   mul:  min(val_a + prec_b, val_b + prec_a)
//   inv:  prec_a - 2·val_a
// Inverting an exact series that is not a monomial yields a series with
// relative precision working_precision().

#include <climits>
#include <string>
#include <vector>

#include "u21/fields.hpp"

namespace u21 {

class PrecisionError : public AlgebraError {
 public:
  using AlgebraError::AlgebraError;
};

class InversionOfZero : public AlgebraError {
 public:
  InversionOfZero() : AlgebraError("inversion of zero") {}
};

class InsufficientPrecision : public PrecisionError {
 public:
  using PrecisionError::PrecisionError;
};

class IndeterminateMembership : public PrecisionError {
 public:
  using PrecisionError::PrecisionError;
};

/// Relative precision used when an exact non-monomial series is inverted.
int working_precision();

/// Sets working_precision() for the current thread while alive.
class PrecisionScope {
 public:
  explicit PrecisionScope(int n);
  ~PrecisionScope();
  PrecisionScope(const PrecisionScope&) = delete;
  PrecisionScope& operator=(const PrecisionScope&) = delete;

 private:
  int saved_;
};

class Series {
 public:
  static constexpr int kExact = 1 << 28;
  static constexpr int kInfinity = INT_MAX;

  Series() = default;
  explicit Series(const FieldTower& tower) : tower_(&tower), val_(kExact), prec_(kExact) {}

  static Series zero(const FieldTower& tower, int prec = kExact);
  static Series constant(const FieldTower& tower, FE c);
  static Series from_int(const FieldTower& tower, long long n);
  /// c·t^deg, exact.
  static Series monomial(const FieldTower& tower, FE c, int deg);
  /// Σ coeffs[i] t^(val+i), known modulo t^prec (kExact for a polynomial).
  static Series from_coeffs(const FieldTower& tower, int val, const std::vector<FE>& coeffs, int prec = kExact);

  const FieldTower& tower() const { return *tower_; }
  bool is_exact() const { return prec_ >= kExact; }
  /// True when every certified coefficient vanishes.
  bool is_zero() const { return coeffs_.empty(); }
  /// t-adic valuation; kInfinity for a zero-flagged series.
  int valuation() const { return is_zero() ? kInfinity : val_; }
  int precision() const { return prec_; }

  /// Coefficient of t^deg; throws InsufficientPrecision if deg ≥ precision().
  FE coeff(int deg) const;
  /// Lowest certified-nonzero coefficient.
  FE leading() const;
  /// Highest degree with a stored nonzero coefficient (exact series).
  int degree() const { return is_zero() ? INT_MIN : val_ + static_cast<int>(coeffs_.size()) - 1; }

  /// Decides membership in 𝔭_E^k (valuation ≥ k).
  bool in_ideal(int k) const;

  Series operator+(const Series& o) const;
  Series operator-(const Series& o) const;
  Series operator-() const;
  Series operator*(const Series& o) const;
  Series scaled(FE c) const;
  /// Multiplication by t^k (exact).
  Series shifted(int k) const;
  Series inv() const;
  Series conj() const;

  /// The exact Laurent polynomial of the terms of degree < deg.
  /// Requires precision() ≥ deg.
  Series truncated_below(int deg) const;
  /// Forgets everything from t^p on.
  Series with_precision(int p) const;

  /// True if (this − o) is certified to vanish modulo t^upto.
  bool agrees_with(const Series& o, int upto) const;

  /// Structural equality (same precision and coefficients).
  friend bool operator==(const Series& a, const Series& b) {
    return a.prec_ == b.prec_ && a.val_ == b.val_ && a.coeffs_ == b.coeffs_;
  }

  std::string to_string() const;

 private:
  static int clamp_prec(long long p) { return p >= kExact / 2 ? kExact : static_cast<int>(p); }
  FE raw(int deg) const {
    int i = deg - val_;
    return (i < 0 || i >= static_cast<int>(coeffs_.size())) ? FE{0} : coeffs_[i];
  }
  void normalize();

  const FieldTower* tower_ = nullptr;
  int val_ = kExact;  // degree of coeffs_[0]; equals prec_ for zero
  int prec_ = kExact;
  std::vector<FE> coeffs_;
};

/// The constant series 𝔱: a unit with 𝔱 + conj(𝔱) = 0.
Series trace_zero_unit(const FieldTower& tower);

}  // namespace u21

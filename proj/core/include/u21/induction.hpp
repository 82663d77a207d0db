#pragma once

// ind_K^G σ: finitely supported functions f: G → σ with f(kg) = σ(k) f(g).
// [g, v] is supported on K g⁻¹ with value v at g⁻¹; G acts by right
// translation, so g'·[g, v] = [g'g, v] and [gk, v] = [g, σ(k)v].

#include <functional>
#include <map>
#include <memory>
#include <vector>

#include "u21/unitary_group.hpp"
#include "u21/weights.hpp"

namespace u21 {

class InvarianceViolated : public AlgebraError {
 public:
  using AlgebraError::AlgebraError;
};

class CrossCheckFailed : public AlgebraError {
 public:
  using AlgebraError::AlgebraError;
};

class ClosureBudgetExceeded : public AlgebraError {
 public:
  using AlgebraError::AlgebraError;
};

class PrecisionBudgetExceeded : public PrecisionError {
 public:
  using PrecisionError::PrecisionError;
};

struct Generator {
  GElem g;
  Vec v;
};

/// A normalized element of ind_K^G σ: one generator per coset gK, keyed by
/// the canonical form of gK and stored at the canonical representative.
/// Zero vectors are dropped.
class InducedFn {
 public:
  explicit InducedFn(Weight sigma) : sigma_(std::move(sigma)) {}

  const Weight& weight() const { return sigma_; }
  KTag k() const { return sigma_.k(); }

  /// Adds c·[g, v].
  void add(const GElem& g, const Vec& v);
  void add(const InducedFn& o, FE c);
  void add(const InducedFn& o) { add(o, sigma_.field().one()); }

  std::size_t size() const { return gens_.size(); }
  bool is_zero() const { return gens_.empty(); }
  const std::map<CosetKey, Generator>& generators() const { return gens_; }
  /// Largest |n| among the generator keys.
  int depth() const;

  /// f(x).
  Vec value_at(const GElem& x) const;

  friend bool operator==(const InducedFn& a, const InducedFn& b);

 private:
  Weight sigma_;
  std::map<CosetKey, Generator> gens_;
};

InducedFn from_generators(const Weight& sigma, const std::vector<Generator>& gens);
InducedFn operator+(const InducedFn& a, const InducedFn& b);
InducedFn operator-(const InducedFn& a, const InducedFn& b);
InducedFn scaled(const InducedFn& f, FE c);

InducedFn g_act(const GElem& g, const InducedFn& f);

/// The value f_n(α^−n): v0 for n ≤ 0, σ(β_K) v0 for n > 0.
Vec f_value(const Weight& sigma, int n);
/// Coset representatives of I_{1,K} / (I_{1,K} ∩ α^n K α^−n).
std::vector<GElem> f_reps(const FieldTower& tower, KTag k, int n);
/// f_n = Σ_i [i α^n, f_value(n)] over f_reps(n), checked to have distinct
/// cosets, the right support and (with verify) I_{1,K}-invariance. Throws
/// PrecisionBudgetExceeded when |n| > n_max.
InducedFn f_basis(const Weight& sigma, int n, int n_max = 5, bool verify = true);

/// Elements whose translates test I_{1,K}-invariance: torus generators and
/// layer representatives of N_{n_K} and N'_{m_K} up to the given number of
/// layers.
std::vector<GElem> i1_generators(const FieldTower& tower, KTag k, int layers);
bool is_I1_invariant(const InducedFn& f);

// ---- operators on explicit functions -----------------------------------------

/// T[g, v] summed over the generators of f, from the explicit formula for
/// T[Id, v].
InducedFn op_T(const InducedFn& f);
/// T[Id, e_i] for the standard basis e_i of σ.
std::vector<InducedFn> t_of_base(const Weight& sigma);
/// The cosets g_i K of T[Id, ·] fall into groups of mutually adjacent
/// vertices (those sharing a vertex of the other type with the base point).
/// True if, for every group, the terms outside it have no common kernel.
/// Then T g has strictly larger support radius than g unless g is supported
/// at the base point, so (T) meets functions supported in radius ≤ 1
/// exactly in T[Id, σ].
bool t_outward_injective(const Weight& sigma);
bool uses_T_plus_one(const Weight& sigma);
/// T, or T + 1 when σ is a determinant twist.
InducedFn op_T_sigma(const InducedFn& f);
/// Σ_{u ∈ N_{n_K}/N_{n_K+1}} u β_K · f; f must be N'_{m_K}-invariant.
InducedFn op_SK(const InducedFn& f);
/// Σ_{u' ∈ N'_{m_K}/N'_{m_K+1}} u' β_K α⁻¹ · f; f must be N_{n_K}-invariant.
InducedFn op_Sminus(const InducedFn& f);

// ---- pointwise functions -----------------------------------------------------

/// A left σ-equivariant function given by evaluation. Used where the
/// explicit generator lists are too large (f_n for |n| ≥ 2).
class PointFn {
 public:
  using Eval = std::function<Vec(const GElem&)>;
  PointFn(Weight sigma, Eval eval) : sigma_(std::move(sigma)), eval_(std::move(eval)) {}

  const Weight& weight() const { return sigma_; }
  Vec operator()(const GElem& x) const { return eval_(x); }

 private:
  Weight sigma_;
  Eval eval_;
};

PointFn as_point_fn(const InducedFn& f);
/// f_n evaluated through the decomposition G = ⊔ K α^−m I_{1,K}.
PointFn f_point(const Weight& sigma, int n);
PointFn point_sum(const std::vector<std::pair<FE, PointFn>>& terms);

/// T as a kernel: (Tf)(x) = Σ_i Φ(g_i) f(g_i⁻¹ x), one term per coset
/// g_i K of the explicit formula, with Φ(g_i) read off T[Id, ·].
struct HeckeKernel {
  std::vector<GElem> g_inv;
  std::vector<Matrix> phi;
};
HeckeKernel hecke_kernel(const Weight& sigma);

PointFn point_T(const HeckeKernel& kernel, const PointFn& f);
PointFn point_T_sigma(const HeckeKernel& kernel, const PointFn& f);
PointFn point_SK(const PointFn& f);
PointFn point_Sminus(const PointFn& f);
PointFn point_act(const GElem& g, const PointFn& f);

/// Coefficients c_m with F = Σ c_m f_m, read from F(α^−m) = c_m f_m(α^−m)
/// for m in [lo, hi]. Valid for I_{1,K}-invariant F supported in that
/// range; throws CrossCheckFailed if some value is not a multiple of
/// f_value(m).
std::map<int, FE> basis_coefficients(const PointFn& F, int lo, int hi);
/// Same read-out for an explicit function, with the explicit identity
/// F = Σ c_m f_m checked against f_basis.
std::map<int, FE> basis_coefficients(const InducedFn& F);

/// Samples F(x i) = F(x) for x = α^−m j over representatives j of
/// I_{1,K}/(I_{1,K} ∩ α^m K α^−m), |m| ≤ mmax, and i from i1_generators.
/// At most `cap` representatives per m, chosen with the seed when there are
/// more.
bool point_I1_invariant(const PointFn& F, int mmax, std::size_t cap, unsigned seed);

// ---- constants ---------------------------------------------------------------

struct HeckeConstants {
  FE lambda{};
  FE c{};
  /// 0 when dim σ > 1, c_minus for characters.
  FE c_closed{};
  FE c_minus{};
  std::map<int, FE> d;  // n ≥ 0
};

/// Σ_{(x,t) ∈ L^×_{q^{4−t_K}}} χ_σ(h(t)).
FE c_minus_closed(const Weight& sigma);
/// Σ_{(x,t) ∈ L^×_{q^{t_K}}} χ_σ(h(t)), n ≥ 1.
FE d_closed(const Weight& sigma);
/// −χ_σ(h(𝔱)) for twists of the Steinberg weight, 0 otherwise.
FE d0_closed(const Weight& sigma);
/// The scalar with Σ_{u ∈ 𝕌} σ(u β_K) v0 = d0 v0.
FE d0_direct(const Weight& sigma);
bool is_steinberg_twist(const Weight& sigma);

/// Closed forms cross-checked against coefficients of T f0, T f1, S_− f_1
/// and S_K f_−n (n = 0..n_max). Throws CrossCheckFailed on disagreement,
/// except for c, whose closed form is only recorded.
HeckeConstants constants(const Weight& sigma, int n_max = 3);

// ---- K-spinning --------------------------------------------------------------

struct SpunModule {
  /// Γ_K acting on the span through lifts to K.
  Weight weight;
  std::vector<InducedFn> basis;
  /// The spanning translates f, uβ_K f, ... and their coordinates (columns).
  std::vector<InducedFn> translates;
  Matrix coordinates;
};

/// Coordinates of f against a list of functions, if f lies in their span.
std::optional<Vec> coordinates_in(const std::vector<InducedFn>& basis, const InducedFn& f);

/// The span of K·f; f must be K¹-invariant. The spanning translates are f
/// and u β_K f for u ∈ N_{n_K}/N_{n_K+1}.
SpunModule spin_K(const InducedFn& f, int cap = 128);

}  // namespace u21

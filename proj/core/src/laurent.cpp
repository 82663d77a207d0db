#include "u21/laurent.hpp"

#include <algorithm>
#include <sstream>

namespace u21 {

namespace {
thread_local int g_working_precision = 16;
}

int working_precision() { return g_working_precision; }

PrecisionScope::PrecisionScope(int n) : saved_(g_working_precision) {
  if (n < 1) throw AlgebraError("working precision must be positive");
  g_working_precision = n;
}

PrecisionScope::~PrecisionScope() { g_working_precision = saved_; }

Series Series::zero(const FieldTower& tower, int prec) {
  Series s(tower);
  s.prec_ = clamp_prec(prec);
  s.val_ = s.prec_;
  return s;
}

Series Series::constant(const FieldTower& tower, FE c) { return monomial(tower, c, 0); }

Series Series::from_int(const FieldTower& tower, long long n) {
  return constant(tower, tower.lambda().from_int(n));
}

Series Series::monomial(const FieldTower& tower, FE c, int deg) {
  Series s(tower);
  if (c.v != 0) {
    s.val_ = deg;
    s.coeffs_.push_back(c);
  }
  return s;
}

Series Series::from_coeffs(const FieldTower& tower, int val, const std::vector<FE>& coeffs, int prec) {
  Series s(tower);
  s.prec_ = clamp_prec(prec);
  s.val_ = val;
  s.coeffs_ = coeffs;
  if (!s.is_exact()) s.coeffs_.resize(std::max(0, s.prec_ - val), FE{0});
  s.normalize();
  return s;
}

void Series::normalize() {
  std::size_t lead = 0;
  while (lead < coeffs_.size() && coeffs_[lead].v == 0) ++lead;
  if (lead == coeffs_.size()) {
    coeffs_.clear();
    val_ = prec_;
    return;
  }
  if (lead > 0) {
    coeffs_.erase(coeffs_.begin(), coeffs_.begin() + static_cast<std::ptrdiff_t>(lead));
    val_ += static_cast<int>(lead);
  }
  if (is_exact()) {
    while (!coeffs_.empty() && coeffs_.back().v == 0) coeffs_.pop_back();
  }
}

FE Series::coeff(int deg) const {
  if (deg >= prec_) throw InsufficientPrecision("coefficient beyond certified precision");
  return raw(deg);
}

FE Series::leading() const {
  if (is_zero()) throw IndeterminateMembership("leading coefficient of a zero-flagged series");
  return coeffs_.front();
}

bool Series::in_ideal(int k) const {
  if (!is_zero()) return val_ >= k;
  if (prec_ >= k) return true;
  throw IndeterminateMembership("zero known only modulo t^" + std::to_string(prec_) + ", asked for p^" +
                                std::to_string(k));
}

Series Series::operator+(const Series& o) const {
  const auto& F = tower_->lambda();
  Series r(*tower_);
  r.prec_ = std::min(prec_, o.prec_);
  int lo = std::min(val_, o.val_);
  int hi;  // exclusive
  if (r.is_exact()) {
    hi = std::max(is_zero() ? lo : degree() + 1, o.is_zero() ? lo : o.degree() + 1);
  } else {
    hi = r.prec_;
  }
  if (lo >= hi) {
    r.val_ = r.prec_;
    return r;
  }
  r.val_ = lo;
  r.coeffs_.resize(hi - lo);
  for (int d = lo; d < hi; ++d) r.coeffs_[d - lo] = F.add(raw(d), o.raw(d));
  r.normalize();
  return r;
}

Series Series::operator-() const {
  Series r = *this;
  const auto& F = tower_->lambda();
  for (auto& c : r.coeffs_) c = F.neg(c);
  return r;
}

Series Series::operator-(const Series& o) const { return *this + (-o); }

Series Series::operator*(const Series& o) const {
  const auto& F = tower_->lambda();
  Series r(*tower_);
  const long long va = is_zero() ? prec_ : val_;
  const long long vb = o.is_zero() ? o.prec_ : o.val_;
  r.prec_ = clamp_prec(std::min(va + o.prec_, vb + prec_));
  if (is_zero() || o.is_zero()) {
    r.val_ = r.prec_;
    return r;
  }
  r.val_ = val_ + o.val_;
  std::size_t len = r.is_exact() ? coeffs_.size() + o.coeffs_.size() - 1
                                 : static_cast<std::size_t>(std::max(0, r.prec_ - r.val_));
  r.coeffs_.assign(len, FE{0});
  for (std::size_t i = 0; i < coeffs_.size() && i < len; ++i) {
    FE a = coeffs_[i];
    if (a.v == 0) continue;
    std::size_t jmax = std::min(o.coeffs_.size(), len - i);
    for (std::size_t j = 0; j < jmax; ++j) r.coeffs_[i + j] = F.add(r.coeffs_[i + j], F.mul(a, o.coeffs_[j]));
  }
  r.normalize();
  return r;
}

Series Series::scaled(FE c) const {
  if (c.v == 0) return is_exact() ? zero(*tower_) : zero(*tower_, prec_);
  Series r = *this;
  const auto& F = tower_->lambda();
  for (auto& x : r.coeffs_) x = F.mul(c, x);
  return r;
}

Series Series::shifted(int k) const {
  Series r = *this;
  if (!r.is_exact()) r.prec_ += k;
  r.val_ += k;
  if (r.is_zero()) r.val_ = r.prec_;
  return r;
}

Series Series::inv() const {
  if (is_zero()) throw InversionOfZero();
  const auto& F = tower_->lambda();
  Series r(*tower_);
  r.val_ = -val_;
  if (is_exact() && coeffs_.size() == 1) {
    r.coeffs_.push_back(F.inv(coeffs_[0]));
    return r;
  }
  const int rel = is_exact() ? working_precision() : prec_ - val_;
  if (rel <= 0) throw InsufficientPrecision("no certified coefficients to invert");
  r.prec_ = r.val_ + rel;
  r.coeffs_.assign(rel, FE{0});
  const FE b0 = F.inv(coeffs_[0]);
  r.coeffs_[0] = b0;
  for (int k = 1; k < rel; ++k) {
    FE acc{0};
    const int imax = std::min<int>(k, static_cast<int>(coeffs_.size()) - 1);
    for (int i = 1; i <= imax; ++i) acc = F.add(acc, F.mul(coeffs_[i], r.coeffs_[k - i]));
    r.coeffs_[k] = F.neg(F.mul(b0, acc));
  }
  r.normalize();
  return r;
}

Series Series::conj() const {
  Series r = *this;
  for (auto& c : r.coeffs_) c = tower_->conj(c);
  return r;
}

Series Series::truncated_below(int deg) const {
  if (prec_ < deg) throw InsufficientPrecision("truncation beyond certified precision");
  Series r(*tower_);
  if (is_zero() || val_ >= deg) return r;
  r.val_ = val_;
  r.coeffs_.assign(coeffs_.begin(), coeffs_.begin() + std::min<std::ptrdiff_t>(deg - val_, coeffs_.size()));
  r.normalize();
  return r;
}

Series Series::with_precision(int p) const {
  if (p >= prec_) return *this;
  Series r(*tower_);
  r.prec_ = p;
  if (is_zero() || val_ >= p) {
    r.val_ = p;
    return r;
  }
  r.val_ = val_;
  r.coeffs_.assign(coeffs_.begin(), coeffs_.begin() + std::min<std::ptrdiff_t>(p - val_, coeffs_.size()));
  r.coeffs_.resize(p - val_, FE{0});
  r.normalize();
  return r;
}

bool Series::agrees_with(const Series& o, int upto) const {
  Series d = *this - o;
  if (d.prec_ < upto) return false;
  return d.is_zero() || d.val_ >= upto;
}

std::string Series::to_string() const {
  std::ostringstream os;
  const auto& F = tower_->lambda();
  bool first = true;
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    if (coeffs_[i].v == 0) continue;
    if (!first) os << " + ";
    first = false;
    os << F.to_string(coeffs_[i]);
    int d = val_ + static_cast<int>(i);
    if (d != 0) os << "*t^" << d;
  }
  if (first) os << "0";
  if (!is_exact()) os << " + O(t^" << prec_ << ")";
  return os.str();
}

Series trace_zero_unit(const FieldTower& tower) { return Series::constant(tower, tower.trace_zero_unit()); }

}  // namespace u21

#include "u21/fields.hpp"

#include <numeric>
#include <sstream>

namespace u21 {

namespace {

int ipow(int base, int e) {
  long long r = 1;
  for (int i = 0; i < e; ++i) r *= base;
  return static_cast<int>(r);
}

int mod(long long a, long long n) {
  long long r = a % n;
  return static_cast<int>(r < 0 ? r + n : r);
}

bool is_prime(int n) {
  if (n < 2) return false;
  for (int d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

}  // namespace

FiniteField::FiniteField(int p, int degree) : p_(p), degree_(degree) {
  if (!is_prime(p)) throw AlgebraError("characteristic must be prime");
  if (degree < 1) throw AlgebraError("degree must be positive");
  order_ = ipow(p, degree);
  if (order_ > 1024) throw AlgebraError("field too large for table arithmetic");

  auto digits = [&](int enc) {
    std::vector<int> d(degree_);
    for (int i = 0; i < degree_; ++i, enc /= p_) d[i] = enc % p_;
    return d;
  };
  auto encode = [&](const std::vector<int>& d) {
    int enc = 0;
    for (int i = degree_ - 1; i >= 0; --i) enc = enc * p_ + d[i];
    return enc;
  };

  add_.resize(std::size_t(order_) * order_);
  neg_.resize(order_);
  for (int a = 0; a < order_; ++a) {
    auto da = digits(a);
    std::vector<int> dn(degree_);
    for (int i = 0; i < degree_; ++i) dn[i] = (p_ - da[i]) % p_;
    neg_[a] = static_cast<std::uint16_t>(encode(dn));
    for (int b = 0; b < order_; ++b) {
      auto db = digits(b);
      std::vector<int> ds(degree_);
      for (int i = 0; i < degree_; ++i) ds[i] = (da[i] + db[i]) % p_;
      add_[std::size_t(a) * order_ + b] = static_cast<std::uint16_t>(encode(ds));
    }
  }

  // Search monic polynomials of the given degree in encoding order until x
  // has multiplicative order p^m - 1 modulo one of them.
  const int count = order_;  // number of choices for the lower coefficients
  for (int low = 0; low < count; ++low) {
    std::vector<int> poly = digits(low);
    poly.push_back(1);
    if (poly[0] == 0) continue;
    std::vector<int> cur(degree_, 0);
    cur[0] = 1;
    std::vector<std::uint16_t> seq;
    seq.reserve(order_ - 1);
    bool ok = true;
    for (int k = 0; k < order_ - 1; ++k) {
      int enc = encode(cur);
      if (k > 0 && enc == 1) {
        ok = false;
        break;
      }
      seq.push_back(static_cast<std::uint16_t>(enc));
      // cur *= x mod poly
      int top = cur[degree_ - 1];
      for (int i = degree_ - 1; i > 0; --i) cur[i] = cur[i - 1];
      cur[0] = 0;
      for (int i = 0; i < degree_; ++i) cur[i] = mod(cur[i] - static_cast<long long>(top) * poly[i], p_);
    }
    if (!ok || encode(cur) != 1) continue;
    modulus_ = poly;
    exp_ = std::move(seq);
    break;
  }
  if (exp_.empty()) throw AlgebraError("no primitive polynomial found");
  log_.assign(order_, -1);
  for (int k = 0; k < order_ - 1; ++k) log_[exp_[k]] = k;
}

FE FiniteField::from_int(long long n) const {
  // The prime field sits at encodings 0..p-1.
  return FE{static_cast<std::uint16_t>(mod(n, p_))};
}

FE FiniteField::element(int encoding) const {
  if (encoding < 0 || encoding >= order_) throw AlgebraError("encoding out of range");
  return FE{static_cast<std::uint16_t>(encoding)};
}

FE FiniteField::inv(FE a) const {
  if (a.v == 0) throw AlgebraError("inverse of zero in finite field");
  int e = log_[a.v];
  return FE{exp_[e == 0 ? 0 : order_ - 1 - e]};
}

FE FiniteField::pow(FE a, long long e) const {
  if (a.v == 0) {
    if (e == 0) return one();
    if (e < 0) throw AlgebraError("negative power of zero");
    return zero();
  }
  return FE{exp_[mod(static_cast<long long>(log_[a.v]) * mod(e, order_ - 1), order_ - 1)]};
}

int FiniteField::log(FE a) const {
  if (a.v == 0) throw AlgebraError("logarithm of zero");
  return log_[a.v];
}

FE FiniteField::exp(long long e) const { return FE{exp_[mod(e, order_ - 1)]}; }

std::string FiniteField::to_string(FE a) const {
  if (a.v == 0) return "0";
  if (a.v < p_) return std::to_string(a.v);
  return "g^" + std::to_string(log_[a.v]);
}

FieldTower::FieldTower(int p, int f)
    : p_(p), f_(f), q_(0), m_(0), field_([&] {
        if (p % 2 == 0) throw AlgebraError("residue characteristic must be odd");
        if (!is_prime(p)) throw AlgebraError("p must be prime");
        if (f < 1) throw AlgebraError("f must be positive");
        const long long q = ipow(p, f);
        const long long target = q * q - 1;
        int m = 1;
        long long pm = p;
        while ((pm - 1) % target != 0) {
          ++m;
          pm *= p;
        }
        return FiniteField(p, m);
      }()) {
  q_ = ipow(p, f);
  m_ = field_.degree();
  const int order = field_.order();
  frob_.resize(order);
  for (int a = 0; a < order; ++a) frob_[a] = field_.pow(FE{static_cast<std::uint16_t>(a)}, q_).v;
  for (int a = 0; a < order; ++a) {
    FE x{static_cast<std::uint16_t>(a)};
    if (!in_kE(x)) continue;
    kE_.push_back(x);
    if (conj(x) == x) kF_.push_back(x);
    if (x.v != 0 && trace(x) == field_.zero()) trace_zero_.push_back(x);
  }
  const int cofactor = (order - 1) / (q_ * q_ - 1);
  kE_gen_ = field_.exp(cofactor);
  norm_one_gen_ = field_.pow(kE_gen_, q_ - 1);
}

bool FieldTower::in_kE(FE a) const { return conj(conj(a)) == a; }

int FieldTower::kE_log(FE a) const {
  const int cofactor = (field_.order() - 1) / (q_ * q_ - 1);
  int l = field_.log(a);
  if (l % cofactor != 0) throw AlgebraError("element not in k_E");
  return l / cofactor;
}

int FieldTower::norm_one_log(FE a) const {
  int l = kE_log(a);
  if (l % (q_ - 1) != 0) throw AlgebraError("element not of norm one");
  return l / (q_ - 1);
}

FieldTower build_tower(int p, int f) { return FieldTower(p, f); }

std::vector<Character> characters_of_torus(const TorusShape& shape) {
  std::vector<Character> out;
  out.reserve(shape.size());
  for (int a = 0; a < shape.order_a; ++a)
    for (int b = 0; b < shape.order_b; ++b) out.push_back({a, b});
  return out;
}

FE evaluate(const FieldTower& tower, const Character& chi, FE a, FE b) {
  const auto& F = tower.lambda();
  return F.mul(F.pow(a, chi.e1), F.pow(b, chi.e2));
}

FE evaluate_h(const FieldTower& tower, const Character& chi, FE x) {
  const auto& F = tower.lambda();
  FE mid = F.neg(F.div(tower.conj(x), x));
  return evaluate(tower, chi, x, mid);
}

Character char_s(const FieldTower& tower, const Character& chi, KTag) {
  // β_K diag(a, b, ā⁻¹) β_K⁻¹ = diag(ā⁻¹, b, a) for both maximal compacts.
  const int q = tower.q();
  return {mod(-static_cast<long long>(q) * chi.e1, q * q - 1), chi.e2};
}

bool is_regular(const FieldTower& tower, const Character& chi, KTag k) {
  return char_s(tower, chi, k) != chi;
}

Character char_product(const FieldTower& tower, const Character& a, const Character& b) {
  const int q = tower.q();
  return {mod(a.e1 + b.e1, q * q - 1), mod(a.e2 + b.e2, q + 1)};
}

Character det_character(const FieldTower& tower, int k) {
  // det diag(a, b, ā⁻¹) = b · a^(1-q)
  const int q = tower.q();
  return {mod(static_cast<long long>(k) * (1 - q), q * q - 1), mod(k, q + 1)};
}

bool is_det_character(const FieldTower& tower, const Character& chi) {
  for (int k = 0; k <= tower.q(); ++k)
    if (det_character(tower, k) == chi) return true;
  return false;
}

std::string to_string(const Character& chi) {
  std::ostringstream os;
  os << "chi(" << chi.e1 << "," << chi.e2 << ")";
  return os.str();
}

}  // namespace u21

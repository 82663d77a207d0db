#include "u21/unitary_group.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <optional>
#include <set>
#include <sstream>
#include <tuple>

namespace u21 {

namespace {


Series one(const FieldTower& T) { return Series::constant(T, FE{1}); }

// Lower bounds on entry valuations defining K (B⁻¹ g B integral).
constexpr std::array<int, 9> kPatternK0{0, 0, 0, 0, 0, 0, 0, 0, 0};
constexpr std::array<int, 9> kPatternK1{0, 0, -1, 0, 0, -1, 1, 1, 0};

const std::array<int, 9>& pattern(KTag k) { return k == KTag::K0 ? kPatternK0 : kPatternK1; }

bool certified_zero(const Series& s) { return s.is_zero(); }

}  // namespace

GElem::GElem(const FieldTower& tower) : tower_(&tower) {
  for (auto& e : a_) e = Series::zero(tower);
}

GElem GElem::identity(const FieldTower& tower) {
  GElem g(tower);
  for (int i = 0; i < 3; ++i) g(i, i) = one(tower);
  return g;
}

GElem GElem::from_entries(const FieldTower& tower, const std::array<Series, 9>& entries) {
  GElem g(tower);
  g.a_ = entries;
  return g;
}

GElem GElem::operator*(const GElem& o) const {
  GElem r(*tower_);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      Series acc = Series::zero(*tower_);
      for (int k = 0; k < 3; ++k) {
        const Series& x = (*this)(i, k);
        const Series& y = o(k, j);
        if (x.is_zero() && x.is_exact()) continue;
        if (y.is_zero() && y.is_exact()) continue;
        acc = acc + x * y;
      }
      r(i, j) = acc;
    }
  return r;
}

GElem GElem::inverse() const {
  // (β ḡᵀ β)_{ij} = conj(g_{4-j,4-i}) in 1-based indices.
  GElem r(*tower_);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) r(i, j) = (*this)(2 - j, 2 - i).conj();
  return r;
}

GElem GElem::conj() const {
  GElem r = *this;
  for (auto& e : r.a_) e = e.conj();
  return r;
}

GElem GElem::transpose() const {
  GElem r(*tower_);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) r(i, j) = (*this)(j, i);
  return r;
}

bool GElem::is_exact() const {
  return std::all_of(a_.begin(), a_.end(), [](const Series& s) { return s.is_exact(); });
}

int GElem::precision() const {
  int p = Series::kExact;
  for (const auto& s : a_) p = std::min(p, s.precision());
  return p;
}

GElem GElem::unitarity_defect() const {
  GElem b = beta(*tower_);
  GElem d = transpose() * b * conj();
  for (int i = 0; i < 3; ++i) d(i, 2 - i) = d(i, 2 - i) - one(*tower_);
  return d;
}

bool GElem::agrees_with(const GElem& o, int upto) const {
  for (int i = 0; i < 9; ++i)
    if (!a_[i].agrees_with(o.a_[i], upto)) return false;
  return true;
}

std::string GElem::to_string() const {
  std::ostringstream os;
  os << "[";
  for (int i = 0; i < 3; ++i) {
    os << (i ? "; " : "") << "[";
    for (int j = 0; j < 3; ++j) os << (j ? ", " : "") << (*this)(i, j).to_string();
    os << "]";
  }
  os << "]";
  return os.str();
}

// ---- constructors ---------------------------------------------------------

GElem make_n(const Series& x, const Series& y) {
  const auto& T = x.tower();
  Series rel = x * x.conj() + y + y.conj();
  if (!certified_zero(rel)) throw RelationViolated("n(x, y) requires x x̄ + y + ȳ = 0");
  GElem g = GElem::identity(T);
  g(0, 1) = x;
  g(0, 2) = y;
  g(1, 2) = -x.conj();
  return g;
}

GElem make_nprime(const Series& x, const Series& y) {
  const auto& T = x.tower();
  Series rel = x * x.conj() + y + y.conj();
  if (!certified_zero(rel)) throw RelationViolated("n'(x, y) requires x x̄ + y + ȳ = 0");
  GElem g = GElem::identity(T);
  g(1, 0) = x;
  g(2, 0) = y;
  g(2, 1) = -x.conj();
  return g;
}

GElem make_h(const Series& x) {
  const auto& T = x.tower();
  GElem g(T);
  Series xb = x.conj();
  g(0, 0) = x;
  g(1, 1) = -(xb * x.inv());
  g(2, 2) = xb.inv();
  return g;
}

GElem make_torus(const Series& a, const Series& b) {
  const auto& T = a.tower();
  Series nb = b * b.conj() - one(T);
  if (!certified_zero(nb)) throw RelationViolated("torus middle entry must have norm one");
  GElem g(T);
  g(0, 0) = a;
  g(1, 1) = b;
  g(2, 2) = a.conj().inv();
  return g;
}

GElem alpha_pow(const FieldTower& tower, int n) {
  GElem g(tower);
  g(0, 0) = Series::monomial(tower, FE{1}, -n);
  g(1, 1) = one(tower);
  g(2, 2) = Series::monomial(tower, FE{1}, n);
  return g;
}

GElem beta(const FieldTower& tower) {
  GElem g(tower);
  for (int i = 0; i < 3; ++i) g(i, 2 - i) = one(tower);
  return g;
}

GElem beta_prime(const FieldTower& tower) { return beta(tower) * alpha_pow(tower, -1); }

GElem beta_K(const FieldTower& tower, KTag k) { return k == KTag::K0 ? beta(tower) : beta_prime(tower); }

// ---- membership -------------------------------------------------------------

bool in_K_pattern(const GElem& g, KTag k) {
  const auto& pat = pattern(k);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      if (!g(i, j).in_ideal(pat[3 * i + j])) return false;
  return true;
}

namespace {

bool in_G(const GElem& g) {
  GElem d = g.unitarity_defect();
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      if (!certified_zero(d(i, j))) return false;
  return true;
}

bool is_diagonal(const GElem& g) {
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      if (i != j && !certified_zero(g(i, j))) return false;
  return true;
}

// Unipotent with the given triangle; off-triangle entries certified zero.
bool is_unipotent(const GElem& g, bool upper) {
  for (int i = 0; i < 3; ++i) {
    if (!g(i, i).agrees_with(one(g.tower()), g(i, i).precision())) return false;
    for (int j = 0; j < 3; ++j) {
      if (i == j) continue;
      bool allowed = upper ? j > i : j < i;
      if (!allowed && !certified_zero(g(i, j))) return false;
    }
  }
  return true;
}

}  // namespace

bool in_K(const GElem& g, KTag k) { return in_G(g) && in_K_pattern(g, k); }

bool member(const GElem& g, Subgroup tag, KTag k, int level) {
  const auto& T = g.tower();
  switch (tag) {
    case Subgroup::G:
      return in_G(g);
    case Subgroup::K0:
      return in_K(g, KTag::K0);
    case Subgroup::K1:
      return in_K(g, KTag::K1);
    case Subgroup::Ksub1:
      return in_K(g, k) && reduce_to_gamma(k, g) == gamma_identity(T, k);
    case Subgroup::I_K:
      return in_K(g, k) && gamma_in_borel(reduce_to_gamma(k, g));
    case Subgroup::I1_K:
      return in_K(g, k) && gamma_in_unipotent(T, reduce_to_gamma(k, g));
    case Subgroup::N_k:
      return in_G(g) && is_unipotent(g, true) && g(0, 2).in_ideal(level);
    case Subgroup::Nprime_k:
      return in_G(g) && is_unipotent(g, false) && g(2, 0).in_ideal(level);
    case Subgroup::H0:
      return is_diagonal(g) && member(g, Subgroup::I_K, k);
    case Subgroup::H1:
      return is_diagonal(g) && member(g, Subgroup::I1_K, k);
  }
  return false;
}

bool same_coset(const GElem& g, const GElem& gp, KTag k) { return in_K_pattern(g.inverse() * gp, k); }

}  // namespace u21

namespace u21 {

// ---- Γ_K ------------------------------------------------------------------

GammaElem gamma_identity(const FieldTower&, KTag k) {
  GammaElem g;
  g.k = k;
  for (int i = 0; i < 3; ++i) g.m[4 * i] = FE{1};
  return g;
}

GammaElem gamma_mul(const FieldTower& T, const GammaElem& a, const GammaElem& b) {
  const auto& F = T.lambda();
  GammaElem r;
  r.k = a.k;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      FE acc{0};
      for (int l = 0; l < 3; ++l) acc = F.add(acc, F.mul(a(i, l), b(l, j)));
      r.m[3 * i + j] = acc;
    }
  return r;
}

FE gamma_det(const FieldTower& T, const GammaElem& a) {
  const auto& F = T.lambda();
  auto minor = [&](int r0, int r1, int c0, int c1) {
    return F.sub(F.mul(a(r0, c0), a(r1, c1)), F.mul(a(r0, c1), a(r1, c0)));
  };
  FE d = F.mul(a(0, 0), minor(1, 2, 1, 2));
  d = F.sub(d, F.mul(a(0, 1), minor(1, 2, 0, 2)));
  d = F.add(d, F.mul(a(0, 2), minor(1, 2, 0, 1)));
  return d;
}

GammaElem gamma_inverse(const FieldTower& T, const GammaElem& a) {
  const auto& F = T.lambda();
  FE det = gamma_det(T, a);
  if (det.v == 0) throw AlgebraError("singular element of Γ_K");
  FE di = F.inv(det);
  GammaElem r;
  r.k = a.k;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      // cofactor C_{ji}
      int r0 = (j + 1) % 3, r1 = (j + 2) % 3, c0 = (i + 1) % 3, c1 = (i + 2) % 3;
      FE c = F.sub(F.mul(a(r0, c0), a(r1, c1)), F.mul(a(r0, c1), a(r1, c0)));
      r.m[3 * i + j] = F.mul(c, di);
    }
  return r;
}

bool gamma_in_borel(const GammaElem& a) { return a(1, 0).v == 0 && a(2, 0).v == 0 && a(2, 1).v == 0; }

bool gamma_in_unipotent(const FieldTower&, const GammaElem& a) {
  return gamma_in_borel(a) && a(0, 0) == FE{1} && a(1, 1) == FE{1} && a(2, 2) == FE{1};
}

GammaElem reduce_to_gamma(KTag k, const GElem& g) {
  if (!in_K_pattern(g, k)) throw MembershipViolated(std::string("element is not in ") + to_string(k));
  GammaElem r;
  r.k = k;
  if (k == KTag::K0) {
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) r.m[3 * i + j] = g(i, j).coeff(0);
  } else {
    r.m[0] = g(0, 0).coeff(0);
    r.m[2] = g(0, 2).coeff(-1);
    r.m[4] = g(1, 1).coeff(0);
    r.m[6] = g(2, 0).coeff(1);
    r.m[8] = g(2, 2).coeff(0);
  }
  return r;
}

GElem lift_to_K(const FieldTower& T, const GammaElem& g) {
  GElem r(T);
  if (g.k == KTag::K0) {
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) r(i, j) = Series::constant(T, g(i, j));
  } else {
    r(0, 0) = Series::constant(T, g(0, 0));
    r(0, 2) = Series::monomial(T, g(0, 2), -1);
    r(1, 1) = Series::constant(T, g(1, 1));
    r(2, 0) = Series::monomial(T, g(2, 0), 1);
    r(2, 2) = Series::constant(T, g(2, 2));
  }
  return r;
}

namespace {

int gamma_order(const FieldTower& T, const GammaElem& g) {
  GammaElem id = gamma_identity(T, g.k), x = g;
  int n = 1;
  while (!(x == id)) {
    x = gamma_mul(T, x, g);
    if (++n > 1 << 20) throw AlgebraError("element of Γ_K of unexpected order");
  }
  return n;
}

}  // namespace

TorusShape torus_quotient(const FieldTower& T, KTag k) {
  Series eps = Series::constant(T, T.kE_generator());
  Series zeta = Series::constant(T, T.norm_one_generator());
  GammaElem ga = reduce_to_gamma(k, make_torus(eps, one(T)));
  GammaElem gb = reduce_to_gamma(k, make_torus(one(T), zeta));
  TorusShape shape{gamma_order(T, ga), gamma_order(T, gb)};
  std::set<GammaElem> images;
  GammaElem x = gamma_identity(T, k);
  for (int i = 0; i < shape.order_a; ++i) {
    GammaElem y = x;
    for (int j = 0; j < shape.order_b; ++j) {
      images.insert(y);
      y = gamma_mul(T, y, gb);
    }
    x = gamma_mul(T, x, ga);
  }
  if (static_cast<int>(images.size()) != shape.size()) throw AlgebraError("torus quotient is not a direct product");
  return shape;
}

FE evaluate_on_gamma(const FieldTower& T, const Character& chi, const GammaElem& d) {
  return evaluate(T, chi, d(0, 0), d(1, 1));
}

// ---- L groups and coset representatives --------------------------------------

LElem l_mul(const FieldTower& T, const LElem& a, const LElem& b) {
  const auto& F = T.lambda();
  return {F.add(a.x, b.x), F.sub(F.add(a.t, b.t), F.mul(a.x, T.conj(b.x)))};
}

bool l_valid(const FieldTower& T, const LElem& a) {
  const auto& F = T.lambda();
  return T.in_kE(a.x) && T.in_kE(a.t) && F.add(T.norm(a.x), T.trace(a.t)).v == 0;
}

std::vector<LElem> enumerate_L(const FieldTower& T, bool big) {
  std::vector<LElem> out;
  for (FE x : T.kE()) {
    if (!big && x.v != 0) continue;
    for (FE t : T.kE()) {
      LElem e{x, t};
      if (l_valid(T, e)) out.push_back(e);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<GElem> layer_reps(const FieldTower& T, Side side, int k) {
  const bool even = (k % 2 == 0);
  const int half = even ? k / 2 : 0;
  std::vector<GElem> out;
  for (const LElem& e : enumerate_L(T, even)) {
    Series x = Series::monomial(T, e.x, half);
    Series y = Series::monomial(T, e.t, k);
    out.push_back(side == Side::N ? make_n(x, y) : make_nprime(x, y));
  }
  return out;
}

std::vector<GElem> coset_reps(const FieldTower& T, KTag, Side side, int a, int b) {
  std::vector<GElem> cur{GElem::identity(T)};
  for (int k = a; k < b; ++k) {
    auto layer = layer_reps(T, side, k);
    std::vector<GElem> next;
    next.reserve(cur.size() * layer.size());
    for (const auto& r : cur)
      for (const auto& u : layer) next.push_back(r * u);
    cur = std::move(next);
  }
  return cur;
}

IwahoriConstants iwahori_constants(const FieldTower& T, KTag k) {
  auto first_level = [&](Side side) {
    auto layer_in = [&](int lvl) {
      for (const auto& u : layer_reps(T, side, lvl))
        if (!member(u, Subgroup::I1_K, k)) return false;
      return true;
    };
    for (int lvl = -6; lvl <= 6; ++lvl) {
      bool ok = true;
      for (int j = lvl; j < lvl + 4 && ok; ++j) ok = layer_in(j);
      if (ok) return lvl;
    }
    throw AlgebraError("no level of the unipotent filtration lies in I_1");
  };
  IwahoriConstants c;
  c.n_K = first_level(Side::N);
  c.m_K = first_level(Side::Nprime);
  const auto size = layer_reps(T, Side::N, c.n_K).size();
  std::size_t qt = 1;
  while (qt < size) {
    qt *= T.q();
    ++c.t_K;
  }
  if (qt != size) throw AlgebraError("layer size is not a power of q");
  return c;
}

}  // namespace u21

namespace u21 {

const IwahoriConstants& cached_iwahori_constants(const FieldTower& T, KTag k) {
  static std::mutex mu;
  static std::map<std::tuple<int, int, KTag>, IwahoriConstants> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto key = std::make_tuple(T.p(), T.f(), k);
  auto it = cache.find(key);
  if (it == cache.end()) it = cache.emplace(key, iwahori_constants(T, k)).first;
  return it->second;
}

namespace {

Series half(const Series& s) {
  const auto& F = s.tower().lambda();
  return s.scaled(F.inv(F.from_int(2)));
}

}  // namespace

UsefulIdentity useful_identity(const Series& x, const Series& y) {
  Series ybi = y.conj().inv();
  Series yi = y.inv();
  return {make_n(ybi * x, yi), make_h(ybi), make_nprime(-(ybi * x.conj()), yi)};
}

Exchange ldu(const GElem& m) {
  const auto& T = m.tower();
  GElem L = GElem::identity(T), D(T), U = GElem::identity(T);
  Series d1 = m(0, 0), d1i = d1.inv();
  L(1, 0) = m(1, 0) * d1i;
  L(2, 0) = m(2, 0) * d1i;
  U(0, 1) = d1i * m(0, 1);
  U(0, 2) = d1i * m(0, 2);
  Series s11 = m(1, 1) - L(1, 0) * d1 * U(0, 1);
  Series s12 = m(1, 2) - L(1, 0) * d1 * U(0, 2);
  Series s21 = m(2, 1) - L(2, 0) * d1 * U(0, 1);
  Series s22 = m(2, 2) - L(2, 0) * d1 * U(0, 2);
  Series d2i = s11.inv();
  L(2, 1) = s21 * d2i;
  U(1, 2) = d2i * s12;
  D(0, 0) = d1;
  D(1, 1) = s11;
  D(2, 2) = s22 - L(2, 1) * s11 * U(1, 2);
  return {L, D, U};
}

Exchange udl(const GElem& m) {
  const auto& T = m.tower();
  auto flip = [&](const GElem& a) {
    GElem r(T);
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) r(i, j) = a(2 - i, 2 - j);
    return r;
  };
  Exchange e = ldu(flip(m));
  return {flip(e.first), flip(e.torus), flip(e.second)};
}

Exchange exchange(const GElem& uprime, const GElem& u, KTag k) {
  const auto& c = cached_iwahori_constants(u.tower(), k);
  if (!member(uprime, Subgroup::Nprime_k, k, c.m_K)) throw MembershipViolated("exchange: u' is not in N'_{m_K}");
  if (!member(u, Subgroup::N_k, k, c.n_K)) throw MembershipViolated("exchange: u is not in N_{n_K}");
  const Series& x = uprime(1, 0);
  const Series& y = uprime(2, 0);
  const Series& x1 = u(0, 1);
  const Series& y1 = u(0, 2);
  const auto& T = u.tower();
  Series D = one(T) + x * x1 + (y * y1).conj();
  Series Db = D.conj();
  Series Di = D.inv(), Dbi = Db.inv();
  GElem u1 = make_n((x1 - (y1 * x).conj()) * Di, y1 * Dbi);
  GElem h(T);
  h(0, 0) = Di;
  h(1, 1) = D * Dbi;
  h(2, 2) = Db;
  GElem u1p = make_nprime((x - (x1 * y).conj()) * Di, y * Dbi);
  return {u1, h, u1p};
}

Exchange exchange2(const GElem& u, const GElem& uprime, KTag k) {
  const auto& c = cached_iwahori_constants(u.tower(), k);
  if (!member(uprime, Subgroup::Nprime_k, k, c.m_K)) throw MembershipViolated("exchange: u' is not in N'_{m_K}");
  if (!member(u, Subgroup::N_k, k, c.n_K)) throw MembershipViolated("exchange: u is not in N_{n_K}");
  return ldu(u * uprime);
}

// ---- normal form of gK ----------------------------------------------------------

GElem CosetForm::rep() const { return u.inverse() * alpha_pow(u.tower(), n); }

namespace {

void append_series(std::vector<std::int32_t>& out, const Series& s) {
  if (s.is_zero()) {
    out.push_back(0);
    return;
  }
  const int lo = s.valuation(), hi = s.degree();
  out.push_back(hi - lo + 1);
  out.push_back(lo);
  for (int d = lo; d <= hi; ++d) out.push_back(s.coeff(d).v);
}

// Candidate values for the x-coefficient that the pivot row leaves free.
std::vector<FE> extra_coefficients(const FieldTower& T, KTag k) {
  if (k == KTag::K0) return {FE{0}};
  return T.kE();
}

}  // namespace

CosetForm coset_form(const GElem& g, KTag k) {
  const auto& T = g.tower();
  const auto& c = cached_iwahori_constants(T, k);
  const int b = (k == KTag::K1) ? 1 : 0;
  GElem Y = g;
  for (int i = 0; i < 3; ++i) Y(i, 2) = Y(i, 2).shifted(b);

  auto pivot = [&](int row) {
    int j = 0;
    for (int jj = 1; jj < 3; ++jj)
      if (Y(row, jj).valuation() < Y(row, j).valuation()) j = jj;
    return j;
  };

  auto finish = [&](int n, const GElem& u, const Series& x, const Series& z0) -> std::optional<CosetForm> {
    GElem kk = alpha_pow(T, -n) * u * g;
    if (!in_K_pattern(kk, k)) return std::nullopt;
    CosetForm f{n, u, kk, {}};
    f.key.n = n;
    append_series(f.key.data, x);
    append_series(f.key.data, z0);
    return f;
  };

  // g = u⁻¹ α^n k with u = n(x, z), n ≤ 0.
  {
    const int j = pivot(2);
    const int v3 = Y(2, j).valuation();
    const int n = v3 - b;
    if (n <= 0) {
      Series inv3 = Y(2, j).inv();
      Series xbase = (Y(1, j) * inv3).truncated_below(-v3).conj();
      for (FE extra : extra_coefficients(T, k)) {
        Series x = xbase + Series::monomial(T, extra, -v3);
        Series z0 = (-((Y(0, j) + x * Y(1, j)) * inv3)).truncated_below(-2 * n - b);
        Series z = z0 - half(z0 + z0.conj() + x * x.conj());
        if (!z.in_ideal(c.n_K)) continue;
        if (auto f = finish(n, make_n(x, z), x, z0)) return *f;
      }
    }
  }
  // g = u'⁻¹ α^n k with u' = n'(x, z), n > 0.
  {
    const int j = pivot(0);
    const int v1 = Y(0, j).valuation();
    const int n = -v1;
    if (n > 0) {
      Series inv1 = Y(0, j).inv();
      Series xbase = (-(Y(1, j) * inv1)).truncated_below(-v1);
      for (FE extra : extra_coefficients(T, k)) {
        Series x = xbase + Series::monomial(T, extra, -v1);
        Series z0 = ((x.conj() * Y(1, j) - Y(2, j)) * inv1).truncated_below(2 * n + b);
        Series z = z0 - half(z0 + z0.conj() + x * x.conj());
        if (!z.in_ideal(c.m_K)) continue;
        if (auto f = finish(n, make_nprime(x, z), x, z0)) return *f;
      }
    }
  }
  throw AlgebraError("no Iwahori normal form found for coset");
}

}  // namespace u21

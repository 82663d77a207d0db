#include "u21/induction.hpp"

#include <algorithm>
#include <cstdlib>
#include <random>

namespace u21 {

namespace {

GammaElem reduce(const Weight& w, const GElem& k) { return reduce_to_gamma(w.k(), k); }

}  // namespace

void InducedFn::add(const GElem& g, const Vec& v) {
  if (u21::is_zero(v)) return;
  CosetForm cf = coset_form(g, k());
  Vec w = sigma_.act(reduce(sigma_, cf.k), v);
  auto it = gens_.find(cf.key);
  if (it == gens_.end()) {
    gens_.emplace(std::move(cf.key), Generator{cf.rep(), std::move(w)});
    return;
  }
  it->second.v = axpy(sigma_.field(), sigma_.field().one(), w, it->second.v);
  if (u21::is_zero(it->second.v)) gens_.erase(it);
}

void InducedFn::add(const InducedFn& o, FE c) {
  const auto& F = sigma_.field();
  if (c == F.zero()) return;
  for (const auto& [key, gen] : o.gens_) {
    Vec w = scale(F, c, gen.v);
    auto it = gens_.find(key);
    if (it == gens_.end()) {
      gens_.emplace(key, Generator{gen.g, std::move(w)});
      continue;
    }
    it->second.v = axpy(F, F.one(), w, it->second.v);
    if (u21::is_zero(it->second.v)) gens_.erase(it);
  }
}

int InducedFn::depth() const {
  int d = 0;
  for (const auto& [key, gen] : gens_) d = std::max(d, std::abs(key.n));
  return d;
}

Vec InducedFn::value_at(const GElem& x) const {
  CosetForm cf = coset_form(x.inverse(), k());
  auto it = gens_.find(cf.key);
  if (it == gens_.end()) return Vec(sigma_.dim(), sigma_.field().zero());
  return sigma_.act(reduce(sigma_, x * it->second.g), it->second.v);
}

bool operator==(const InducedFn& a, const InducedFn& b) {
  if (a.gens_.size() != b.gens_.size()) return false;
  for (auto ia = a.gens_.begin(), ib = b.gens_.begin(); ia != a.gens_.end(); ++ia, ++ib)
    if (ia->first != ib->first || ia->second.v != ib->second.v) return false;
  return true;
}

InducedFn from_generators(const Weight& sigma, const std::vector<Generator>& gens) {
  InducedFn f(sigma);
  for (const auto& g : gens) f.add(g.g, g.v);
  return f;
}

InducedFn operator+(const InducedFn& a, const InducedFn& b) {
  InducedFn out = a;
  out.add(b);
  return out;
}

InducedFn operator-(const InducedFn& a, const InducedFn& b) {
  InducedFn out = a;
  out.add(b, a.weight().field().neg(a.weight().field().one()));
  return out;
}

InducedFn scaled(const InducedFn& f, FE c) {
  InducedFn out(f.weight());
  out.add(f, c);
  return out;
}

InducedFn g_act(const GElem& g, const InducedFn& f) {
  InducedFn out(f.weight());
  for (const auto& [key, gen] : f.generators()) out.add(g * gen.g, gen.v);
  return out;
}

// ---- f_n ----------------------------------------------------------------------

Vec f_value(const Weight& sigma, int n) {
  Vec v = v0(sigma);
  return n <= 0 ? v : sigma.act(sigma.gamma().weyl(), v);
}

std::vector<GElem> f_reps(const FieldTower& tower, KTag k, int n) {
  const auto& c = cached_iwahori_constants(tower, k);
  if (n <= 0) return coset_reps(tower, k, Side::N, c.n_K, c.n_K - 2 * n);
  return coset_reps(tower, k, Side::Nprime, c.m_K, c.m_K + 2 * n - 1);
}

InducedFn f_basis(const Weight& sigma, int n, int n_max, bool verify) {
  if (std::abs(n) > n_max) throw PrecisionBudgetExceeded("f_n requested beyond n_max");
  const auto& T = sigma.tower();
  const auto reps = f_reps(T, sigma.k(), n);
  const GElem a = alpha_pow(T, n);
  const Vec w = f_value(sigma, n);
  InducedFn f(sigma);
  for (const auto& i : reps) f.add(i * a, w);
  if (f.size() != reps.size()) throw CrossCheckFailed("f_n representatives are not distinct cosets");
  for (const auto& [key, gen] : f.generators())
    if (key.n != n) throw CrossCheckFailed("f_n generator outside K α^-n I1");
  if (verify && !is_I1_invariant(f)) throw CrossCheckFailed("f_n is not I1-invariant");
  return f;
}

// ---- I1-invariance -------------------------------------------------------------

namespace {

Series norm_one_unit(const FieldTower& T) {
  // (1 + s t)/(1 + s̄ t) for a generator s of k_E^×.
  Series a = Series::from_int(T, 1) + Series::monomial(T, T.kE_generator(), 1);
  return a * a.conj().inv();
}

}  // namespace

namespace {

// A generating set of the layer N_k/N_{k+1} (or N'): elements with x running
// over an F_p-basis of k_E, and pure elements (0, 𝔱 b) for an F_p-basis b of k_F.
std::vector<GElem> layer_generators(const FieldTower& T, Side side, int k) {
  const auto& K = T.lambda();
  const bool even = (k % 2 == 0);
  std::vector<FE> xs, ts;
  for (int i = 0; i < 2 * T.f(); ++i) xs.push_back(K.pow(T.kE_generator(), i));
  const FE gF = K.pow(T.kE_generator(), T.q() + 1);
  for (int i = 0; i < T.f(); ++i) ts.push_back(K.mul(T.trace_zero_unit(), K.pow(gF, i)));
  std::vector<GElem> out;
  for (const LElem& e : enumerate_L(T, even)) {
    bool take = false;
    if (e.x != K.zero()) {
      auto it = std::find(xs.begin(), xs.end(), e.x);
      if (it != xs.end()) {
        take = true;
        xs.erase(it);
      }
    } else {
      take = std::find(ts.begin(), ts.end(), e.t) != ts.end();
    }
    if (!take) continue;
    Series x = Series::monomial(T, e.x, even ? k / 2 : 0);
    Series y = Series::monomial(T, e.t, k);
    out.push_back(side == Side::N ? make_n(x, y) : make_nprime(x, y));
  }
  return out;
}

}  // namespace

std::vector<GElem> i1_generators(const FieldTower& T, KTag k, int layers) {
  const auto& c = cached_iwahori_constants(T, k);
  std::vector<GElem> out;
  const Series one = Series::from_int(T, 1);
  out.push_back(make_torus(one + Series::monomial(T, T.kE_generator(), 1), one));
  out.push_back(make_torus(one, norm_one_unit(T)));
  for (int l = 0; l < layers; ++l) {
    for (auto& u : layer_generators(T, Side::N, c.n_K + l)) out.push_back(std::move(u));
    for (auto& u : layer_generators(T, Side::Nprime, c.m_K + l)) out.push_back(std::move(u));
  }
  return out;
}

bool is_I1_invariant(const InducedFn& f) {
  if (f.is_zero()) return true;
  for (const auto& i : i1_generators(f.weight().tower(), f.k(), 2 * f.depth() + 2))
    if (!(g_act(i, f) == f)) return false;
  return true;
}

// ---- explicit operators --------------------------------------------------------

namespace {

// The terms [g_i, A_i v] of T[Id, v].
std::vector<std::pair<GElem, Matrix>> t_terms(const Weight& sigma) {
  const auto& T = sigma.tower();
  const KTag k = sigma.k();
  const auto& c = cached_iwahori_constants(T, k);
  const Matrix j = j_map(sigma);
  const GElem ainv = alpha_pow(T, -1);
  const GElem bK = beta_K(T, k);
  std::vector<std::pair<GElem, Matrix>> out;
  for (const auto& u : coset_reps(T, k, Side::N, c.n_K, c.n_K + 2))
    out.emplace_back(u * ainv, j * sigma.action(reduce(sigma, u.inverse())));
  const Matrix jb = j * sigma.action(sigma.gamma().weyl());
  for (const auto& u : coset_reps(T, k, Side::N, c.n_K + 1, c.n_K + 2)) out.emplace_back(bK * u * ainv, jb);
  return out;
}

void require_invariant(const InducedFn& f, Side side, const char* what) {
  const auto& T = f.weight().tower();
  const auto& c = cached_iwahori_constants(T, f.k());
  const int start = side == Side::N ? c.n_K : c.m_K;
  for (int l = 0; l < 2 * f.depth() + 2; ++l)
    for (const auto& u : layer_generators(T, side, start + l))
      if (!(g_act(u, f) == f)) throw InvarianceViolated(what);
}

}  // namespace

InducedFn op_T(const InducedFn& f) {
  InducedFn out(f.weight());
  if (f.is_zero()) return out;
  const auto terms = t_terms(f.weight());
  for (const auto& [key, gen] : f.generators())
    for (const auto& [g, A] : terms) out.add(gen.g * g, A * gen.v);
  return out;
}

std::vector<InducedFn> t_of_base(const Weight& sigma) {
  const auto& T = sigma.tower();
  const auto& K = sigma.field();
  std::vector<InducedFn> out;
  for (int i = 0; i < sigma.dim(); ++i) {
    Vec e(sigma.dim(), K.zero());
    e[i] = K.one();
    InducedFn f(sigma);
    f.add(GElem::identity(T), e);
    out.push_back(op_T(f));
  }
  return out;
}

bool t_outward_injective(const Weight& sigma) {
  const auto terms = t_terms(sigma);
  const std::size_t n = terms.size();
  std::vector<std::size_t> group(n);
  for (std::size_t i = 0; i < n; ++i) group[i] = i;
  auto root = [&](std::size_t i) {
    while (group[i] != i) i = group[i];
    return i;
  };
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      const GElem d = terms[i].first.inverse() * terms[j].first;
      if (std::abs(coset_form(d, sigma.k()).n) == 1) group[root(j)] = root(i);
    }
  const int dim = sigma.dim();
  for (std::size_t r = 0; r < n; ++r) {
    if (root(r) != r) continue;
    std::vector<Vec> rows;
    for (std::size_t i = 0; i < n; ++i)
      if (root(i) != r)
        for (int a = 0; a < dim; ++a) rows.push_back(terms[i].second.row(a));
    if (rows.empty() || Matrix::from_rows(sigma.field(), dim, rows).rank() < dim) return false;
  }
  return true;
}

bool uses_T_plus_one(const Weight& sigma) { return is_det_twist_weight(sigma); }

InducedFn op_T_sigma(const InducedFn& f) {
  InducedFn out = op_T(f);
  if (uses_T_plus_one(f.weight())) out.add(f);
  return out;
}

InducedFn op_SK(const InducedFn& f) {
  require_invariant(f, Side::Nprime, "S_K needs an N'_{m_K}-invariant input");
  const auto& T = f.weight().tower();
  const auto& c = cached_iwahori_constants(T, f.k());
  const GElem bK = beta_K(T, f.k());
  InducedFn out(f.weight());
  for (const auto& u : layer_reps(T, Side::N, c.n_K)) out.add(g_act(u * bK, f));
  return out;
}

InducedFn op_Sminus(const InducedFn& f) {
  require_invariant(f, Side::N, "S_- needs an N_{n_K}-invariant input");
  const auto& T = f.weight().tower();
  const auto& c = cached_iwahori_constants(T, f.k());
  const GElem tail = beta_K(T, f.k()) * alpha_pow(T, -1);
  InducedFn out(f.weight());
  for (const auto& u : layer_reps(T, Side::Nprime, c.m_K)) out.add(g_act(u * tail, f));
  return out;
}

}  // namespace u21

// ---- pointwise functions -------------------------------------------------------

namespace u21 {

PointFn as_point_fn(const InducedFn& f) {
  return PointFn(f.weight(), [f](const GElem& x) { return f.value_at(x); });
}

PointFn f_point(const Weight& sigma, int n) {
  Vec w = f_value(sigma, n);
  return PointFn(sigma, [sigma, w, n](const GElem& y) {
    // y⁻¹ = u⁻¹ α^m k, so y = k⁻¹ α^−m u with u ∈ I_{1,K}.
    CosetForm cf = coset_form(y.inverse(), sigma.k());
    if (cf.n != n) return Vec(sigma.dim(), sigma.field().zero());
    return sigma.act(reduce(sigma, cf.k.inverse()), w);
  });
}

PointFn point_sum(const std::vector<std::pair<FE, PointFn>>& terms) {
  if (terms.empty()) throw AlgebraError("empty point_sum");
  const Weight sigma = terms.front().second.weight();
  return PointFn(sigma, [sigma, terms](const GElem& x) {
    const auto& F = sigma.field();
    Vec out(sigma.dim(), F.zero());
    for (const auto& [c, f] : terms)
      if (c != F.zero()) out = axpy(F, c, f(x), out);
    return out;
  });
}

HeckeKernel hecke_kernel(const Weight& sigma) {
  const auto terms = t_terms(sigma);
  std::map<CosetKey, std::size_t> index;
  for (std::size_t i = 0; i < terms.size(); ++i)
    if (!index.emplace(coset_form(terms[i].first, sigma.k()).key, i).second)
      throw CrossCheckFailed("T[Id, v] has two terms on one coset");
  HeckeKernel ker;
  for (const auto& [g, A] : terms) {
    GElem ginv = g.inverse();
    auto it = index.find(coset_form(ginv, sigma.k()).key);
    if (it == index.end()) throw CrossCheckFailed("double coset of T is not symmetric");
    const auto& [gj, Aj] = terms[it->second];
    ker.phi.push_back(sigma.action(reduce(sigma, g * gj)) * Aj);
    ker.g_inv.push_back(std::move(ginv));
  }
  return ker;
}

PointFn point_T(const HeckeKernel& kernel, const PointFn& f) {
  const Weight sigma = f.weight();
  return PointFn(sigma, [sigma, kernel, f](const GElem& x) {
    const auto& F = sigma.field();
    Vec out(sigma.dim(), F.zero());
    for (std::size_t i = 0; i < kernel.phi.size(); ++i) {
      Vec v = f(kernel.g_inv[i] * x);
      if (!is_zero(v)) out = axpy(F, F.one(), kernel.phi[i] * v, out);
    }
    return out;
  });
}

PointFn point_T_sigma(const HeckeKernel& kernel, const PointFn& f) {
  PointFn t = point_T(kernel, f);
  if (!uses_T_plus_one(f.weight())) return t;
  const FE one = f.weight().field().one();
  return point_sum({{one, t}, {one, f}});
}

PointFn point_act(const GElem& g, const PointFn& f) {
  return PointFn(f.weight(), [g, f](const GElem& x) { return f(x * g); });
}

namespace {

PointFn point_average(const PointFn& f, const std::vector<GElem>& gs) {
  const Weight sigma = f.weight();
  return PointFn(sigma, [sigma, gs, f](const GElem& x) {
    const auto& F = sigma.field();
    Vec out(sigma.dim(), F.zero());
    for (const auto& g : gs) out = axpy(F, F.one(), f(x * g), out);
    return out;
  });
}

}  // namespace

PointFn point_SK(const PointFn& f) {
  const auto& T = f.weight().tower();
  const KTag k = f.weight().k();
  const GElem bK = beta_K(T, k);
  std::vector<GElem> gs;
  for (const auto& u : layer_reps(T, Side::N, cached_iwahori_constants(T, k).n_K)) gs.push_back(u * bK);
  return point_average(f, gs);
}

PointFn point_Sminus(const PointFn& f) {
  const auto& T = f.weight().tower();
  const KTag k = f.weight().k();
  const GElem tail = beta_K(T, k) * alpha_pow(T, -1);
  std::vector<GElem> gs;
  for (const auto& u : layer_reps(T, Side::Nprime, cached_iwahori_constants(T, k).m_K)) gs.push_back(u * tail);
  return point_average(f, gs);
}

std::map<int, FE> basis_coefficients(const PointFn& F, int lo, int hi) {
  const Weight& sigma = F.weight();
  const auto& K = sigma.field();
  std::map<int, FE> out;
  for (int m = lo; m <= hi; ++m) {
    Vec val = F(alpha_pow(sigma.tower(), -m));
    if (is_zero(val)) continue;
    Vec w = f_value(sigma, m);
    std::size_t i = 0;
    while (w[i] == K.zero()) ++i;
    FE c = K.div(val[i], w[i]);
    if (scale(K, c, w) != val) throw CrossCheckFailed("value at α^-m is not a multiple of f_m(α^-m)");
    out[m] = c;
  }
  return out;
}

std::map<int, FE> basis_coefficients(const InducedFn& F) {
  const int d = F.depth() + 1;
  auto coeffs = basis_coefficients(as_point_fn(F), -d, d);
  InducedFn sum(F.weight());
  for (const auto& [m, c] : coeffs) sum.add(f_basis(F.weight(), m, d, false), c);
  if (!(sum == F)) throw CrossCheckFailed("function is not the combination of f_m read from its values");
  return coeffs;
}

}  // namespace u21

// ---- sampled invariance --------------------------------------------------------

namespace u21 {

namespace {

// Representatives of I_{1,K}/(I_{1,K} ∩ α^m K α^−m): all of them when there
// are at most `cap`, otherwise `cap` random products of layer representatives.
std::vector<GElem> sample_f_reps(const FieldTower& T, KTag k, int m, std::size_t cap, std::mt19937& rng) {
  const auto& c = cached_iwahori_constants(T, k);
  const Side side = m <= 0 ? Side::N : Side::Nprime;
  const int a = m <= 0 ? c.n_K : c.m_K;
  const int b = m <= 0 ? c.n_K - 2 * m : c.m_K + 2 * m - 1;
  std::vector<std::vector<GElem>> layers;
  double count = 1;
  for (int l = a; l < b; ++l) {
    layers.push_back(layer_reps(T, side, l));
    count *= static_cast<double>(layers.back().size());
  }
  if (count <= static_cast<double>(cap)) return f_reps(T, k, m);
  std::vector<GElem> out;
  for (std::size_t s = 0; s < cap; ++s) {
    GElem g = GElem::identity(T);
    for (const auto& layer : layers) {
      std::uniform_int_distribution<std::size_t> pick(0, layer.size() - 1);
      g = g * layer[pick(rng)];
    }
    out.push_back(std::move(g));
  }
  return out;
}

}  // namespace

bool point_I1_invariant(const PointFn& F, int mmax, std::size_t cap, unsigned seed) {
  const Weight& sigma = F.weight();
  const auto& T = sigma.tower();
  std::mt19937 rng(seed);
  const auto gens = i1_generators(T, sigma.k(), 2);
  for (int m = -mmax; m <= mmax; ++m) {
    const GElem a = alpha_pow(T, -m);
    for (const auto& j : sample_f_reps(T, sigma.k(), m, cap, rng)) {
      const GElem x = a * j.inverse();
      const Vec fx = F(x);
      for (const auto& g : gens)
        if (F(x * g) != fx) return false;
    }
  }
  return true;
}

// ---- constants -----------------------------------------------------------------

namespace {

FE l_sum(const Weight& sigma, bool big) {
  const auto& T = sigma.tower();
  const auto& K = sigma.field();
  const Character chi = chi_of(sigma);
  FE s = K.zero();
  for (const auto& e : enumerate_L(T, big))
    if (e.t != K.zero()) s = K.add(s, evaluate_h(T, chi, e.t));
  return s;
}

FE coefficient(const std::map<int, FE>& c, int m, const FiniteField& K) {
  auto it = c.find(m);
  return it == c.end() ? K.zero() : it->second;
}

void expect_equal(FE a, FE b, const char* what) {
  if (a != b) throw CrossCheckFailed(what);
}

}  // namespace

FE c_minus_closed(const Weight& sigma) {
  return l_sum(sigma, 4 - cached_iwahori_constants(sigma.tower(), sigma.k()).t_K == 3);
}

FE d_closed(const Weight& sigma) { return l_sum(sigma, cached_iwahori_constants(sigma.tower(), sigma.k()).t_K == 3); }

bool is_steinberg_twist(const Weight& sigma) {
  const Weight st = make_steinberg(sigma.gamma_ptr());
  if (sigma.dim() != st.dim()) return false;
  for (int k = 0; k <= sigma.tower().q(); ++k)
    if (find_isomorphism(sigma, twist(st, k))) return true;
  return false;
}

FE d0_closed(const Weight& sigma) {
  const auto& T = sigma.tower();
  if (!is_steinberg_twist(sigma)) return sigma.field().zero();
  return sigma.field().neg(evaluate_h(T, chi_of(sigma), T.trace_zero_unit()));
}

FE d0_direct(const Weight& sigma) {
  const auto& K = sigma.field();
  const Vec v = v0(sigma);
  const Vec bv = sigma.act(sigma.gamma().weyl(), v);
  Vec s(sigma.dim(), K.zero());
  for (const auto& u : sigma.gamma().unipotent()) s = axpy(K, K.one(), sigma.act(u, bv), s);
  std::size_t i = 0;
  while (v[i] == K.zero()) ++i;
  FE d = K.div(s[i], v[i]);
  if (scale(K, d, v) != s) throw CrossCheckFailed("Σ u β_K v0 is not a multiple of v0");
  return d;
}

HeckeConstants constants(const Weight& sigma, int n_max) {
  const auto& K = sigma.field();
  HeckeConstants hc;
  const HeckeKernel ker = hecke_kernel(sigma);

  const auto tf0 = basis_coefficients(point_T(ker, f_point(sigma, 0)), -3, 3);
  const auto tf1 = basis_coefficients(point_T(ker, f_point(sigma, 1)), -3, 4);
  hc.lambda = coefficient(tf0, 1, K);
  hc.c = coefficient(tf1, 1, K);
  const auto tf0x = basis_coefficients(as_point_fn(op_T(f_basis(sigma, 0))), -3, 3);
  const auto tf1x = basis_coefficients(as_point_fn(op_T(f_basis(sigma, 1))), -3, 4);
  expect_equal(hc.lambda, coefficient(tf0x, 1, K), "λ: kernel and explicit expansions differ");
  expect_equal(hc.c, coefficient(tf1x, 1, K), "c: kernel and explicit expansions differ");

  hc.c_minus = c_minus_closed(sigma);
  hc.c_closed = sigma.dim() > 1 ? K.zero() : hc.c_minus;
  const auto sm = basis_coefficients(point_Sminus(f_point(sigma, 1)), -2, 3);
  expect_equal(hc.c_minus, coefficient(sm, 1, K), "c_- differs from the S_- f_1 coefficient");

  const FE d0 = d0_closed(sigma);
  expect_equal(d0, d0_direct(sigma), "d_0: closed form and Σ u β_K v0 differ");
  hc.d[0] = d0;
  const FE dn = d_closed(sigma);
  for (int n = 0; n <= n_max; ++n) {
    const auto sk = basis_coefficients(point_SK(f_point(sigma, -n)), -n - 2, n + 2);
    expect_equal(n == 0 ? d0 : dn, coefficient(sk, -n, K), "d_n differs from the S_K f_-n coefficient");
    if (n > 0) hc.d[n] = dn;
  }
  return hc;
}

}  // namespace u21

// ---- K-spinning ----------------------------------------------------------------

namespace u21 {

namespace {

// Stacks functions as columns over the union of their (key, component) slots.
Matrix flatten(const std::vector<const InducedFn*>& fs) {
  const Weight& sigma = fs.front()->weight();
  std::map<CosetKey, int> slot;
  for (const auto* f : fs)
    for (const auto& [key, gen] : f->generators()) slot.emplace(key, 0);
  int r = 0;
  for (auto& [key, off] : slot) {
    off = r;
    r += sigma.dim();
  }
  Matrix m(sigma.field(), r, static_cast<int>(fs.size()));
  for (std::size_t c = 0; c < fs.size(); ++c)
    for (const auto& [key, gen] : fs[c]->generators())
      for (int i = 0; i < sigma.dim(); ++i) m(slot[key] + i, static_cast<int>(c)) = gen.v[i];
  return m;
}

}  // namespace

std::optional<Vec> coordinates_in(const std::vector<InducedFn>& basis, const InducedFn& f) {
  const auto& K = f.weight().field();
  if (basis.empty()) return f.is_zero() ? std::optional<Vec>(Vec{}) : std::nullopt;
  std::vector<const InducedFn*> all;
  for (const auto& b : basis) all.push_back(&b);
  all.push_back(&f);
  Matrix m = flatten(all);
  const int n = static_cast<int>(basis.size());
  Matrix A(K, m.rows(), n), B(K, m.rows(), 1);
  for (int r = 0; r < m.rows(); ++r) {
    for (int c = 0; c < n; ++c) A(r, c) = m(r, c);
    B(r, 0) = m(r, n);
  }
  auto x = A.solve(B);
  if (!x) return std::nullopt;
  return x->column(0);
}

SpunModule spin_K(const InducedFn& f, int cap) {
  const Weight& sigma = f.weight();
  const auto& T = sigma.tower();
  const GammaGroup& G = sigma.gamma();
  std::vector<GElem> lifts;
  for (const auto& g : G.generators()) lifts.push_back(lift_to_K(T, g));

  auto basis = std::make_shared<std::vector<InducedFn>>();
  if (!f.is_zero()) basis->push_back(f);
  for (std::size_t i = 0; i < basis->size(); ++i)
    for (const auto& g : lifts) {
      InducedFn h = g_act(g, (*basis)[i]);
      if (coordinates_in(*basis, h)) continue;
      if (static_cast<int>(basis->size()) >= cap) throw ClosureBudgetExceeded("K-span exceeds the dimension cap");
      basis->push_back(std::move(h));
    }

  const int d = static_cast<int>(basis->size());
  Weight w(sigma.gamma_ptr(), d, WeightKind::Spun, "spin", [basis, &T, d](const GammaElem& g) {
    const GElem k = lift_to_K(T, g);
    std::vector<Vec> cols;
    for (const auto& b : *basis) {
      auto c = coordinates_in(*basis, g_act(k, b));
      if (!c) throw CrossCheckFailed("K-span is not stable");
      cols.push_back(std::move(*c));
    }
    return Matrix::from_columns(T.lambda(), d, cols);
  });

  SpunModule out{w, *basis, {}, Matrix()};
  out.translates.push_back(f);
  const GElem bK = beta_K(T, sigma.k());
  for (const auto& u : layer_reps(T, Side::N, cached_iwahori_constants(T, sigma.k()).n_K))
    out.translates.push_back(g_act(u * bK, f));
  std::vector<Vec> cols;
  for (const auto& t : out.translates) {
    auto c = coordinates_in(out.basis, t);
    if (!c) throw CrossCheckFailed("translate outside the K-span");
    cols.push_back(std::move(*c));
  }
  out.coordinates = Matrix::from_columns(sigma.field(), d, cols);
  return out;
}

}  // namespace u21

#include "u21/weights.hpp"

#include <algorithm>
#include <deque>
#include <set>
#include <sstream>

namespace u21 {

// ---- Γ_K --------------------------------------------------------------------

GammaGroup::GammaGroup(const FieldTower& tower, KTag k) : tower_(&tower), k_(k) {
  const auto& c = cached_iwahori_constants(tower, k);
  weyl_ = reduce_to_gamma(k, beta_K(tower, k));
  Series eps = Series::constant(tower, tower.kE_generator());
  Series zeta = Series::constant(tower, tower.norm_one_generator());
  Series one = Series::constant(tower, FE{1});
  torus_a_ = reduce_to_gamma(k, make_torus(eps, one));
  torus_b_ = reduce_to_gamma(k, make_torus(one, zeta));
  for (const auto& u : layer_reps(tower, Side::N, c.n_K)) unipotent_.push_back(reduce_to_gamma(k, u));
  GammaElem winv = inv(weyl_);
  for (const auto& u : unipotent_) lower_.push_back(mul(mul(weyl_, u), winv));

  // One unipotent generator: prefer a nonzero (1,2) entry, whose torus orbit
  // together with commutators fills 𝕌.
  GammaElem ugen = unipotent_.size() > 1 ? unipotent_[1] : identity();
  for (const auto& u : unipotent_)
    if (u(0, 1).v != 0) {
      ugen = u;
      break;
    }
  generators_ = {torus_a_, torus_b_, weyl_, ugen};

  std::set<GammaElem> seen{identity()};
  std::deque<GammaElem> todo{identity()};
  while (!todo.empty()) {
    GammaElem x = todo.front();
    todo.pop_front();
    for (const auto& g : generators_) {
      GammaElem y = mul(x, g);
      if (seen.insert(y).second) todo.push_back(y);
    }
  }
  elements_.assign(seen.begin(), seen.end());
  for (const auto& u : unipotent_)
    if (!contains(u)) throw AlgebraError("generators of Γ_K do not reach 𝕌");
}

bool GammaGroup::contains(const GammaElem& g) const {
  return std::binary_search(elements_.begin(), elements_.end(), g);
}

const std::vector<GammaElem>& GammaGroup::class_reps() const {
  std::call_once(classes_once_, [this] {
    std::vector<bool> done(elements_.size(), false);
    auto index = [&](const GammaElem& g) {
      return static_cast<std::size_t>(std::lower_bound(elements_.begin(), elements_.end(), g) - elements_.begin());
    };
    std::vector<GammaElem> ginv;
    for (const auto& g : generators_) ginv.push_back(inv(g));
    for (std::size_t i = 0; i < elements_.size(); ++i) {
      if (done[i]) continue;
      class_reps_.push_back(elements_[i]);
      done[i] = true;
      std::vector<GammaElem> stack{elements_[i]};
      while (!stack.empty()) {
        GammaElem x = stack.back();
        stack.pop_back();
        for (std::size_t j = 0; j < generators_.size(); ++j) {
          GammaElem y = mul(mul(generators_[j], x), ginv[j]);
          std::size_t iy = index(y);
          if (!done[iy]) {
            done[iy] = true;
            stack.push_back(y);
          }
        }
      }
    }
  });
  return class_reps_;
}

GammaPtr make_gamma(const FieldTower& tower, KTag k) { return std::make_shared<const GammaGroup>(tower, k); }

std::string to_string(WeightKind k) {
  switch (k) {
    case WeightKind::Trivial: return "trivial";
    case WeightKind::DetTwist: return "det_twist";
    case WeightKind::PrincipalSeries: return "principal_series";
    case WeightKind::Steinberg: return "steinberg";
    case WeightKind::PsSub: return "ps_sub";
    case WeightKind::PsQuotient: return "ps_quotient";
    case WeightKind::Sub: return "sub";
    case WeightKind::Quotient: return "quotient";
    case WeightKind::Twist: return "twist";
    case WeightKind::Spun: return "spun";
  }
  return "?";
}

// ---- Weight -------------------------------------------------------------------

Weight::Weight(GammaPtr gamma, int dim, WeightKind kind, std::string name, ActionFn action,
               std::optional<Character> chi)
    : impl_(std::make_shared<Impl>()) {
  impl_->gamma = std::move(gamma);
  impl_->dim = dim;
  impl_->kind = kind;
  impl_->name = std::move(name);
  impl_->fn = std::move(action);
  impl_->chi = chi;
}

const Matrix& Weight::action(const GammaElem& g) const {
  {
    std::lock_guard<std::mutex> lock(impl_->mu);
    auto it = impl_->cache.find(g);
    if (it != impl_->cache.end()) return it->second;
  }
  Matrix m = impl_->fn(g);
  if (m.rows() != dim() || m.cols() != dim()) throw AlgebraError("weight action has wrong shape");
  std::lock_guard<std::mutex> lock(impl_->mu);
  return impl_->cache.emplace(g, std::move(m)).first->second;
}

namespace {

FE det_power(const GammaGroup& G, const GammaElem& g, int k) {
  const auto& T = G.tower();
  const int order = T.q() + 1;
  return T.lambda().pow(gamma_det(T, g), ((k % order) + order) % order);
}

std::vector<std::int32_t> line_key(const FiniteField& F, const GammaElem& x) {
  FE r[3] = {x(2, 0), x(2, 1), x(2, 2)};
  int lead = 0;
  while (lead < 3 && r[lead].v == 0) ++lead;
  if (lead == 3) throw AlgebraError("singular element in Γ_K");
  FE s = F.inv(r[lead]);
  return {F.mul(s, r[0]).v, F.mul(s, r[1]).v, F.mul(s, r[2]).v};
}

}  // namespace

Weight make_trivial(const GammaPtr& G) {
  const auto& F = G->tower().lambda();
  return Weight(G, 1, WeightKind::Trivial, "trivial", [&F](const GammaElem&) { return Matrix::identity(F, 1); },
                Character{0, 0});
}

Weight make_det_twist(const GammaPtr& G, int k) {
  const GammaGroup* g = G.get();
  return Weight(G, 1, WeightKind::DetTwist, "det^" + std::to_string(k),
                [g, k](const GammaElem& x) {
                  Matrix m(g->tower().lambda(), 1, 1);
                  m(0, 0) = det_power(*g, x, k);
                  return m;
                },
                det_character(G->tower(), k));
}

Weight make_principal_series(const GammaPtr& G, const Character& chi) {
  const GammaGroup* g = G.get();
  const auto& T = G->tower();
  auto reps = std::make_shared<std::vector<GammaElem>>();
  auto rep_inv = std::make_shared<std::vector<GammaElem>>();
  auto index = std::make_shared<std::map<std::vector<std::int32_t>, int>>();
  reps->push_back(G->identity());
  for (const auto& u : G->unipotent()) reps->push_back(G->mul(G->weyl(), u));
  for (std::size_t i = 0; i < reps->size(); ++i) {
    rep_inv->push_back(G->inv((*reps)[i]));
    if (!index->emplace(line_key(T.lambda(), (*reps)[i]), static_cast<int>(i)).second)
      throw AlgebraError("Bruhat representatives are not distinct modulo 𝔹");
  }
  const int d = static_cast<int>(reps->size());
  auto fn = [g, reps, rep_inv, index, chi, d](const GammaElem& x) {
    const auto& T = g->tower();
    const auto& F = T.lambda();
    GammaElem xinv = g->inv(x);
    Matrix m(F, d, d);
    for (int l = 0; l < d; ++l) {
      GammaElem y = g->mul((*reps)[l], xinv);
      auto it = index->find(line_key(F, y));
      if (it == index->end()) throw AlgebraError("coset of 𝔹 not among the Bruhat representatives");
      const int lp = it->second;
      GammaElem b = g->mul(y, (*rep_inv)[lp]);
      if (!gamma_in_borel(b)) throw AlgebraError("principal series: expected a Borel element");
      m(lp, l) = F.inv(evaluate_on_gamma(T, chi, b));
    }
    return m;
  };
  return Weight(G, d, WeightKind::PrincipalSeries, "Ind(" + to_string(chi) + ")", fn, chi);
}

Weight sub_weight(const Weight& w, const Subspace& W, WeightKind kind, std::string name) {
  auto basis = W.basis();
  const int r = W.dim();
  Subspace Wc = W;
  auto fn = [w, basis, Wc, r](const GammaElem& x) {
    Matrix m(w.field(), r, r);
    const Matrix& a = w.action(x);
    for (int j = 0; j < r; ++j) {
      auto c = Wc.coordinates(a * basis[j]);
      if (!c) throw AlgebraError("subspace is not stable under Γ_K");
      for (int i = 0; i < r; ++i) m(i, j) = (*c)[i];
    }
    return m;
  };
  return Weight(w.gamma_ptr(), r, kind, std::move(name), fn);
}

Weight quotient_weight(const Weight& w, const Subspace& W, WeightKind kind, std::string name) {
  std::vector<int> free;
  {
    std::vector<bool> piv(w.dim(), false);
    for (int p : W.pivots()) piv[p] = true;
    for (int i = 0; i < w.dim(); ++i)
      if (!piv[i]) free.push_back(i);
  }
  const int r = static_cast<int>(free.size());
  Subspace Wc = W;
  auto fn = [w, Wc, free, r](const GammaElem& x) {
    const auto& F = w.field();
    Matrix m(F, r, r);
    const Matrix& a = w.action(x);
    for (int j = 0; j < r; ++j) {
      Vec red = Wc.reduce(a.column(free[j]));
      for (int i = 0; i < r; ++i) m(i, j) = red[free[i]];
    }
    return m;
  };
  return Weight(w.gamma_ptr(), r, kind, std::move(name), fn);
}

Weight twist(const Weight& w, int k) {
  auto fn = [w, k](const GammaElem& x) { return w.action(x).scaled(det_power(w.gamma(), x, k)); };
  return Weight(w.gamma_ptr(), w.dim(), WeightKind::Twist, w.name() + "⊗det^" + std::to_string(k), fn);
}

Weight make_steinberg(const GammaPtr& G) {
  Weight ps = make_principal_series(G, Character{0, 0});
  const auto& F = G->tower().lambda();
  Subspace constants(F, ps.dim());
  constants.add(Vec(ps.dim(), F.one()));
  return quotient_weight(ps, constants, WeightKind::Steinberg, "st");
}

}  // namespace u21

namespace u21 {

namespace {

// Rows (ρ(g) − 1) for each g, stacked.
Matrix stacked_minus_one(const Weight& w, const std::vector<GammaElem>& gs) {
  const auto& F = w.field();
  const int d = w.dim();
  Matrix m(F, d * static_cast<int>(gs.size()), d);
  for (std::size_t k = 0; k < gs.size(); ++k) {
    const Matrix& a = w.action(gs[k]);
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) m(static_cast<int>(k) * d + i, j) = i == j ? F.sub(a(i, j), F.one()) : a(i, j);
  }
  return m;
}

Subspace span_of(const FiniteField& F, int n, const std::vector<Vec>& vs) {
  Subspace s(F, n);
  for (const auto& v : vs) s.add(v);
  return s;
}

// Vectors of σ^𝕌 on which the torus acts by χ.
Subspace eigenspace(const Weight& w, const Character& chi) {
  const auto& G = w.gamma();
  const auto& T = w.tower();
  const auto& F = w.field();
  const int d = w.dim();
  Matrix m = stacked_minus_one(w, G.unipotent());
  Matrix full(F, m.rows() + 2 * d, d);
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < d; ++j) full(i, j) = m(i, j);
  const GammaElem* ts[2] = {&G.torus_a(), &G.torus_b()};
  for (int t = 0; t < 2; ++t) {
    FE val = evaluate_on_gamma(T, chi, *ts[t]);
    const Matrix& a = w.action(*ts[t]);
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j)
        full(m.rows() + t * d + i, j) = i == j ? F.sub(a(i, j), val) : a(i, j);
  }
  return span_of(F, d, full.nullspace());
}

}  // namespace

Subspace u_invariants(const Weight& w) {
  return span_of(w.field(), w.dim(), stacked_minus_one(w, w.gamma().unipotent()).nullspace());
}

Subspace lower_coinvariant_kernel(const Weight& w) {
  Subspace s(w.field(), w.dim());
  const auto& F = w.field();
  for (const auto& u : w.gamma().lower_unipotent()) {
    const Matrix& a = w.action(u);
    for (int j = 0; j < w.dim(); ++j) {
      Vec c = a.column(j);
      c[j] = F.sub(c[j], F.one());
      s.add(c);
    }
  }
  return s;
}

Vec v0(const Weight& w) {
  Subspace inv = u_invariants(w);
  if (inv.dim() != 1) throw DegenerateWeight("σ^𝕌 has dimension " + std::to_string(inv.dim()));
  return inv.basis().front();
}

Matrix j_map(const Weight& w) {
  const auto& F = w.field();
  const int d = w.dim();
  Vec v = v0(w);
  Subspace C = lower_coinvariant_kernel(w);
  if (C.dim() != d - 1 || C.contains(v)) throw DegenerateWeight("coinvariants are not one-dimensional");
  std::vector<Vec> rows = C.basis();
  rows.push_back(v);
  Matrix A = Matrix::from_rows(F, d, rows);
  Matrix rhs(F, d, 1);
  rhs(d - 1, 0) = F.one();
  auto lambda = A.solve(rhs);
  if (!lambda) throw DegenerateWeight("no functional splitting the coinvariants");
  Matrix j(F, d, d);
  for (int r = 0; r < d; ++r)
    for (int c = 0; c < d; ++c) j(r, c) = F.mul(v[r], (*lambda)(c, 0));
  return j;
}

Character chi_of(const Weight& w) {
  const auto& T = w.tower();
  const auto& F = w.field();
  Vec v = v0(w);
  int lead = 0;
  while (v[lead].v == 0) ++lead;
  auto eigen = [&](const GammaElem& g) {
    Vec gv = w.act(g, v);
    FE val = F.div(gv[lead], v[lead]);
    if (!(gv == scale(F, val, v))) throw AlgebraError("torus does not act on σ^𝕌 by a character");
    return val;
  };
  const int qa = T.q() * T.q() - 1, qb = T.q() + 1;
  return {T.kE_log(eigen(w.gamma().torus_a())) % qa, T.norm_one_log(eigen(w.gamma().torus_b())) % qb};
}

bool is_det_twist_weight(const Weight& w) { return w.dim() == 1 && is_det_character(w.tower(), chi_of(w)); }

Subspace spin(const Weight& w, const std::vector<Vec>& seeds) {
  Subspace s(w.field(), w.dim());
  std::vector<Vec> todo;
  for (const auto& v : seeds)
    if (s.add(v)) todo.push_back(v);
  while (!todo.empty()) {
    Vec v = std::move(todo.back());
    todo.pop_back();
    for (const auto& g : w.gamma().generators()) {
      Vec gv = w.act(g, v);
      if (s.add(gv)) todo.push_back(std::move(gv));
    }
  }
  return s;
}

Weight make_ps_part(const GammaPtr& G, const Character& chi, PsPart part) {
  const auto& T = G->tower();
  if (G->k() != KTag::K1 || T.f() != 1) throw NotApplicable("length-two principal series needs K1 and q = p");
  if (!is_regular(T, chi, KTag::K1)) throw NotApplicable("length-two principal series needs a regular character");
  Weight ps = make_principal_series(G, chi);
  Subspace eig = eigenspace(ps, char_s(T, chi, KTag::K1));
  if (eig.dim() != 1) throw AlgebraError("expected a single χ^s-eigenline in the principal series");
  Subspace sub = spin(ps, eig.basis());
  if (sub.dim() == 0 || sub.dim() == ps.dim()) throw AlgebraError("χ^s-eigenline generates the whole principal series");
  if (part == PsPart::Sub) return sub_weight(ps, sub, WeightKind::PsSub, "soc Ind(" + to_string(chi) + ")");
  return quotient_weight(ps, sub, WeightKind::PsQuotient, "cosoc Ind(" + to_string(chi) + ")");
}

Weight weight_s(const Weight& w) {
  Character chi = chi_of(w);
  if (!is_regular(w.tower(), chi, w.k())) return w;
  return make_ps_part(w.gamma_ptr(), chi, PsPart::Sub);
}

Weight make_weight(const GammaPtr& G, const WeightSpec& spec) {
  using K = WeightSpec::Kind;
  switch (spec.kind) {
    case K::Trivial: return make_trivial(G);
    case K::DetTwist: return make_det_twist(G, spec.det_power);
    case K::PrincipalSeries: return make_principal_series(G, spec.chi);
    case K::Steinberg: return make_steinberg(G);
    case K::SteinbergTwist: return twist(make_steinberg(G), spec.det_power);
    case K::PsSub: return make_ps_part(G, spec.chi, PsPart::Sub);
    case K::PsQuotient: return make_ps_part(G, spec.chi, PsPart::Quotient);
  }
  throw AlgebraError("unknown weight kind");
}

Fingerprint fingerprint(const Weight& w) {
  Fingerprint f;
  f.dim = w.dim();
  if (u_invariants(w).dim() == 1) f.chi = chi_of(w);
  for (const auto& g : w.gamma().class_reps()) f.traces.push_back(w.action(g).trace());
  return f;
}

std::string to_string(const Fingerprint& f) {
  std::ostringstream os;
  os << "dim=" << f.dim << " chi=" << (f.chi ? to_string(*f.chi) : std::string("-")) << " traces=";
  for (std::size_t i = 0; i < f.traces.size(); ++i) os << (i ? "," : "") << f.traces[i].v;
  return os.str();
}

namespace {

// Every nonzero vector of S up to scalars, when that set is small.
std::vector<Vec> lines_of(const FiniteField& F, const Subspace& S) {
  std::vector<Vec> out;
  const int r = S.dim();
  long long total = 1;
  for (int i = 0; i < r; ++i) total *= F.order();
  if (r == 0 || total > 4096) return out;
  for (long long code = 1; code < total; ++code) {
    std::vector<FE> coeff(r);
    long long c = code;
    for (int i = 0; i < r; ++i) {
      coeff[i] = F.element(static_cast<int>(c % F.order()));
      c /= F.order();
    }
    int lead = 0;
    while (coeff[lead].v == 0) ++lead;
    if (coeff[lead] != F.one()) continue;
    Vec v(S.ambient(), F.zero());
    for (int i = 0; i < r; ++i) v = axpy(F, coeff[i], S.basis()[i], v);
    out.push_back(std::move(v));
  }
  return out;
}

}  // namespace

SocleReport socle_series(const Weight& w) {
  const auto& F = w.field();
  Subspace inv = u_invariants(w);
  std::vector<Vec> seeds = lines_of(F, inv);
  for (const auto& b : inv.basis()) seeds.push_back(b);
  const auto& T = w.tower();
  for (const auto& chi : characters_of_torus(torus_quotient(T, w.k()))) {
    Subspace eig = eigenspace(w, chi);
    for (const auto& b : eig.basis()) seeds.push_back(b);
  }

  std::vector<Subspace> subs;
  for (const auto& s : seeds) {
    Subspace sp = spin(w, {s});
    if (std::find(subs.begin(), subs.end(), sp) == subs.end()) subs.push_back(sp);
  }
  Subspace whole(F, w.dim());
  for (int i = 0; i < w.dim(); ++i) {
    Vec e(w.dim(), F.zero());
    e[i] = F.one();
    whole.add(e);
  }
  if (std::find(subs.begin(), subs.end(), whole) == subs.end()) subs.push_back(whole);
  std::sort(subs.begin(), subs.end(), [](const Subspace& a, const Subspace& b) { return a.dim() < b.dim(); });
  SocleReport rep;
  for (std::size_t i = 1; i < subs.size(); ++i)
    if (subs[i].dim() == subs[i - 1].dim() || !subs[i].contains(subs[i - 1])) {
      for (const auto& s : subs) rep.layers.push_back({s.dim(), {}});
      return rep;
    }
  rep.chain = true;
  for (std::size_t i = 0; i < subs.size(); ++i) {
    Weight top = sub_weight(w, subs[i]);
    if (i == 0) {
      rep.layers.push_back({subs[i].dim(), fingerprint(top)});
      continue;
    }
    Subspace prev(F, subs[i].dim());
    for (const auto& b : subs[i - 1].basis()) prev.add(*subs[i].coordinates(b));
    rep.layers.push_back({subs[i].dim(), fingerprint(quotient_weight(top, prev))});
  }
  return rep;
}

namespace {

// Linear system for X (rows_x × cols_x) with X ρa(g) = ρb(g) X for every
// generator; unknown X(r, c) sits at index r·cols_x + c.
Matrix intertwining_system(const Weight& a, const Weight& b) {
  const auto& F = a.field();
  const int da = a.dim(), db = b.dim();
  const auto& gens = a.gamma().generators();
  Matrix m(F, static_cast<int>(gens.size()) * db * da, db * da);
  int row = 0;
  for (const auto& g : gens) {
    const Matrix& A = a.action(g);
    const Matrix& B = b.action(g);
    for (int r = 0; r < db; ++r)
      for (int c = 0; c < da; ++c, ++row) {
        for (int j = 0; j < da; ++j) m(row, r * da + j) = F.add(m(row, r * da + j), A(j, c));
        for (int i = 0; i < db; ++i) m(row, i * da + c) = F.sub(m(row, i * da + c), B(r, i));
      }
  }
  return m;
}

Matrix unflatten(const FiniteField& F, const Vec& x, int rows, int cols) {
  Matrix m(F, rows, cols);
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c < cols; ++c) m(r, c) = x[r * cols + c];
  return m;
}

}  // namespace

std::vector<Matrix> hom_space(const Weight& a, const Weight& b) {
  std::vector<Matrix> out;
  for (const auto& x : intertwining_system(a, b).nullspace()) out.push_back(unflatten(a.field(), x, b.dim(), a.dim()));
  return out;
}

std::optional<Matrix> find_isomorphism(const Weight& a, const Weight& b) {
  if (a.dim() != b.dim()) return std::nullopt;
  auto homs = hom_space(a, b);
  if (homs.empty()) return std::nullopt;
  Matrix sum = homs.front();
  for (std::size_t i = 1; i < homs.size(); ++i) sum = sum + homs[i];
  homs.push_back(sum);
  for (const auto& h : homs)
    if (h.rank() == a.dim()) return h;
  return std::nullopt;
}

bool submodule_splits(const Weight& w, const Subspace& W) {
  const auto& F = w.field();
  Weight sub = sub_weight(w, W);
  const int d = w.dim(), r = W.dim();
  Matrix sys = intertwining_system(w, sub);  // P: r × d
  // P·b_j = e_j for the basis vectors b_j of W.
  Matrix full(F, sys.rows() + r * r, r * d);
  Matrix rhs(F, sys.rows() + r * r, 1);
  for (int i = 0; i < sys.rows(); ++i)
    for (int j = 0; j < sys.cols(); ++j) full(i, j) = sys(i, j);
  int row = sys.rows();
  for (int j = 0; j < r; ++j)
    for (int i = 0; i < r; ++i, ++row) {
      for (int c = 0; c < d; ++c) full(row, i * d + c) = W.basis()[j][c];
      rhs(row, 0) = i == j ? F.one() : F.zero();
    }
  return full.solve(rhs).has_value();
}

bool is_homomorphic_on(const Weight& w, const GammaElem& g, const GammaElem& h) {
  return w.action(w.gamma().mul(g, h)) == w.action(g) * w.action(h);
}

}  // namespace u21

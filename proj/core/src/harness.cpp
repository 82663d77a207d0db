#include "u21/harness.hpp"

#include <algorithm>
#include <chrono>
#include <sstream>

#include "harness_internal.hpp"

namespace u21 {

namespace {

bool is_prime(int p) {
  if (p < 2) return false;
  for (int d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"notation", "hecke",   "appendix",  "section3",
                                              "degenerate", "regular", "properties"};
  return names;
}

void validate(const RunConfig& cfg) {
  if (!is_prime(cfg.p) || cfg.p == 2) throw ConfigError("p must be an odd prime");
  if (cfg.f < 1) throw ConfigError("f must be at least 1");
  long long q2 = 1;
  for (int i = 0; i < 2 * cfg.f; ++i) q2 *= cfg.p;
  if (q2 > 4096) throw ConfigError("q^2 must be at most 4096");
  if (cfg.n_max < 1) throw ConfigError("nmax must be at least 1");
  if (2 * cfg.n_max + 4 > cfg.precision) throw ConfigError("need 2*nmax + 4 <= prec");
  if (cfg.suite != "all") {
    const auto& s = suite_names();
    if (std::find(s.begin(), s.end(), cfg.suite) == s.end()) throw ConfigError("unknown suite '" + cfg.suite + "'");
  }
}

std::vector<KTag> selected_tags(const RunConfig& cfg) {
  switch (cfg.k) {
    case KSelect::K0:
      return {KTag::K0};
    case KSelect::K1:
      return {KTag::K1};
    case KSelect::Both:
      break;
  }
  return {KTag::K0, KTag::K1};
}

const char* to_string(Status s) {
  switch (s) {
    case Status::Pass:
      return "pass";
    case Status::Fail:
      return "fail";
    case Status::Indeterminate:
      return "indeterminate";
  }
  return "?";
}

int CheckReport::count(Status s) const {
  int n = 0;
  for (const auto& c : checks) n += (c.status == s);
  return n;
}

CheckReport run_suite(const std::string& name, const RunConfig& cfg) {
  RunConfig c = cfg;
  c.suite = name;
  validate(c);
  CheckReport rep;
  rep.config = c;
  detail::Ctx ctx(rep.config, rep.checks);
  using Fn = void (*)(detail::Ctx&);
  const std::map<std::string, Fn> table{
      {"notation", detail::suite_notation},     {"hecke", detail::suite_hecke},
      {"appendix", detail::suite_appendix},     {"section3", detail::suite_section3},
      {"degenerate", detail::suite_degenerate}, {"regular", detail::suite_regular},
      {"properties", detail::suite_properties}};
  for (const auto& s : suite_names())
    if (name == "all" || name == s) table.at(s)(ctx);
  return rep;
}

namespace detail {

Ctx::Ctx(const RunConfig& cfg, std::vector<CheckRecord>& out)
    : cfg_(cfg), out_(out), tower_(cfg.p, cfg.f), tags_(selected_tags(cfg)) {}

const GammaPtr& Ctx::gamma(KTag k) {
  auto it = gammas_.find(k);
  if (it == gammas_.end()) it = gammas_.emplace(k, make_gamma(tower_, k)).first;
  return it->second;
}

std::vector<NamedWeight> Ctx::basic_catalog(KTag k) {
  const auto& G = gamma(k);
  std::vector<NamedWeight> out{{"trivial", make_trivial(G)}, {"st", make_steinberg(G)}};
  for (int e = 1; e <= tower_.q(); ++e) out.push_back({"det^" + std::to_string(e), make_det_twist(G, e)});
  return out;
}

const std::vector<NamedWeight>& Ctx::catalog(KTag k) {
  auto it = catalogs_.find(k);
  if (it != catalogs_.end()) return it->second;
  auto out = basic_catalog(k);
  if (k == KTag::K1 && tower_.f() == 1) {
    const auto& G = gamma(k);
    for (const auto& chi : characters_of_torus(torus_quotient(tower_, k))) {
      if (!is_regular(tower_, chi, k)) continue;
      out.push_back({"ps_sub" + to_string(chi), make_ps_part(G, chi, PsPart::Sub)});
      out.push_back({"ps_quot" + to_string(chi), make_ps_part(G, chi, PsPart::Quotient)});
    }
  }
  return catalogs_.emplace(k, std::move(out)).first->second;
}

std::mt19937 Ctx::rng(const std::string& id) const {
  // FNV-1a, so seeds do not depend on the standard library's hash.
  std::uint32_t h = 2166136261u;
  for (unsigned char ch : id) h = (h ^ ch) * 16777619u;
  std::seed_seq seq{cfg_.seed, h};
  return std::mt19937(seq);
}

void Ctx::check(const std::string& id, const std::string& label, int criterion, const std::string& inputs,
                const std::string& expected, const std::function<Outcome()>& fn) {
  CheckRecord r{id, label, criterion, inputs, expected, "", Status::Indeterminate, 0};
  const auto t0 = std::chrono::steady_clock::now();
  auto attempt = [&](int prec) {
    PrecisionScope scope(prec);
    Outcome o = fn();
    r.observed = o.observed;
    r.status = o.pass ? Status::Pass : Status::Fail;
  };
  try {
    try {
      attempt(cfg_.precision);
    } catch (const PrecisionError&) {
      attempt(2 * cfg_.precision);
    }
  } catch (const CrossCheckFailed& e) {
    r.status = Status::Fail;
    r.observed = std::string("cross-check failed: ") + e.what();
  } catch (const std::exception& e) {
    r.status = Status::Indeterminate;
    r.observed = std::string("error: ") + e.what();
  }
  r.ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  out_.push_back(std::move(r));
}

std::string fe_str(const FiniteField& F, FE a) { return F.to_string(a); }

std::string coeffs_str(const FiniteField& F, const std::map<int, FE>& c) {
  std::ostringstream os;
  os << "{";
  bool first = true;
  for (const auto& [m, v] : c) {
    if (v == F.zero()) continue;
    os << (first ? "" : ", ") << "f" << m << ":" << F.to_string(v);
    first = false;
  }
  os << "}";
  return os.str();
}

std::map<int, FE> expect_coeffs(const FiniteField& F, std::initializer_list<std::pair<int, FE>> terms) {
  std::map<int, FE> out;
  for (const auto& [m, v] : terms)
    if (v != F.zero()) out[m] = F.add(out.count(m) ? out[m] : F.zero(), v);
  for (auto it = out.begin(); it != out.end();) it = (it->second == F.zero()) ? out.erase(it) : std::next(it);
  return out;
}

GElem random_unipotent(const FieldTower& T, Side side, int a, int depth, std::mt19937& rng) {
  GElem g = GElem::identity(T);
  for (int l = a; l < a + depth; ++l) {
    auto layer = layer_reps(T, side, l);
    std::uniform_int_distribution<std::size_t> pick(0, layer.size() - 1);
    g = g * layer[pick(rng)];
  }
  return g;
}

Series random_series(const FieldTower& T, int lo, int hi, std::mt19937& rng) {
  const auto& kE = T.kE();
  std::uniform_int_distribution<std::size_t> pick(0, kE.size() - 1);
  std::vector<FE> c;
  for (int d = lo; d <= hi; ++d) c.push_back(kE[pick(rng)]);
  return Series::from_coeffs(T, lo, c);
}

}  // namespace detail

}  // namespace u21

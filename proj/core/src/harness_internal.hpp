#pragma once

#include <functional>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "u21/harness.hpp"
#include "u21/induction.hpp"

namespace u21::detail {

struct Outcome {
  bool pass = false;
  std::string observed;
};

struct NamedWeight {
  std::string name;
  Weight w;
};

class Ctx {
 public:
  Ctx(const RunConfig& cfg, std::vector<CheckRecord>& out);

  const RunConfig& cfg() const { return cfg_; }
  const FieldTower& tower() const { return tower_; }
  const std::vector<KTag>& tags() const { return tags_; }
  const GammaPtr& gamma(KTag k);
  /// trivial, st, det^k (k = 1..q), and for K1 with f = 1 the socle and head
  /// of every regular principal series.
  const std::vector<NamedWeight>& catalog(KTag k);
  /// trivial, st and det^k only.
  std::vector<NamedWeight> basic_catalog(KTag k);

  /// Deterministic generator for one check.
  std::mt19937 rng(const std::string& id) const;

  void check(const std::string& id, const std::string& label, int criterion, const std::string& inputs,
             const std::string& expected, const std::function<Outcome()>& fn);

 private:
  const RunConfig& cfg_;
  std::vector<CheckRecord>& out_;
  FieldTower tower_;
  std::vector<KTag> tags_;
  std::map<KTag, GammaPtr> gammas_;
  std::map<KTag, std::vector<NamedWeight>> catalogs_;
};

std::string fe_str(const FiniteField& F, FE a);
std::string coeffs_str(const FiniteField& F, const std::map<int, FE>& c);
std::map<int, FE> expect_coeffs(const FiniteField& F, std::initializer_list<std::pair<int, FE>> terms);

/// Random element of N_a (or N'_a) modulo N_{a+depth}.
GElem random_unipotent(const FieldTower& T, Side side, int a, int depth, std::mt19937& rng);
/// Random element of E with valuation ≥ lo, at most `terms` nonzero terms up to degree hi.
Series random_series(const FieldTower& T, int lo, int hi, std::mt19937& rng);

void suite_notation(Ctx& ctx);
void suite_hecke(Ctx& ctx);
void suite_appendix(Ctx& ctx);
void suite_section3(Ctx& ctx);
void suite_degenerate(Ctx& ctx);
void suite_regular(Ctx& ctx);
void suite_properties(Ctx& ctx);

}  // namespace u21::detail

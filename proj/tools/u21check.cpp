// Runs the check suites and writes a JSON or text report.
//
//   u21check --suite hecke --K K0 --format text
//
// Exit status: 0 all pass, 1 some check failed or was indeterminate, 2 usage.

#include <CLI11.hpp>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <json.hpp>

#include "u21/harness.hpp"

namespace {

using nlohmann::ordered_json;

const char* k_name(u21::KSelect k) {
  switch (k) {
    case u21::KSelect::K0:
      return "K0";
    case u21::KSelect::K1:
      return "K1";
    case u21::KSelect::Both:
      break;
  }
  return "both";
}

ordered_json to_json(const u21::CheckReport& r, bool stable) {
  const auto& c = r.config;
  ordered_json j;
  j["config"] = {{"p", c.p},         {"f", c.f},     {"K", k_name(c.k)}, {"prec", c.precision},
                 {"nmax", c.n_max}, {"suite", c.suite}, {"seed", c.seed}};
  j["checks"] = ordered_json::array();
  for (const auto& x : r.checks)
    j["checks"].push_back({{"id", x.id},
                           {"label", x.label},
                           {"criterion", x.criterion},
                           {"inputs", x.inputs},
                           {"status", u21::to_string(x.status)},
                           {"expected", x.expected},
                           {"observed", x.observed},
                           {"ms", stable ? 0.0 : x.ms}});
  j["summary"] = {{"pass", r.count(u21::Status::Pass)},
                  {"fail", r.count(u21::Status::Fail)},
                  {"indeterminate", r.count(u21::Status::Indeterminate)}};
  return j;
}

std::string to_text(const u21::CheckReport& r, bool stable) {
  std::string out;
  char buf[64];
  for (const auto& x : r.checks) {
    std::snprintf(buf, sizeof buf, "%-13s %9.1f ms  ", u21::to_string(x.status), stable ? 0.0 : x.ms);
    out += buf + x.id + "\n";
    if (x.status != u21::Status::Pass) out += "    expected: " + x.expected + "\n    observed: " + x.observed + "\n";
  }
  out += "pass " + std::to_string(r.count(u21::Status::Pass)) + ", fail " +
         std::to_string(r.count(u21::Status::Fail)) + ", indeterminate " +
         std::to_string(r.count(u21::Status::Indeterminate)) + "\n";
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact checks for U(2,1) compact induction and its Hecke operators"};
  u21::RunConfig cfg;
  std::string format = "json";
  bool stable = false;
  const std::map<std::string, u21::KSelect> ks{
      {"K0", u21::KSelect::K0}, {"K1", u21::KSelect::K1}, {"both", u21::KSelect::Both}};
  app.add_option("--p", cfg.p, "residue characteristic")->capture_default_str();
  app.add_option("--f", cfg.f, "q = p^f")->capture_default_str();
  app.add_option("--K", cfg.k, "maximal compact subgroup")->transform(CLI::CheckedTransformer(ks));
  app.add_option("--prec", cfg.precision, "working precision N")->capture_default_str();
  app.add_option("--nmax", cfg.n_max, "largest |n| in the S-operator checks")->capture_default_str();
  app.add_option("--suite", cfg.suite, "suite name or all")->capture_default_str();
  app.add_option("--out", cfg.out, "report file (default standard output)");
  app.add_option("--seed", cfg.seed, "random seed")->capture_default_str();
  app.add_option("--format", format, "json or text")->check(CLI::IsMember({"json", "text"}))->capture_default_str();
  app.add_flag("--stable", stable, "write 0 for wall times so reports compare byte for byte");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  u21::CheckReport rep;
  try {
    rep = u21::run_suite(cfg.suite, cfg);
  } catch (const u21::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  }

  const std::string body = format == "json" ? to_json(rep, stable).dump(2) + "\n" : to_text(rep, stable);
  if (cfg.out.empty()) {
    std::cout << body;
  } else {
    std::ofstream os(cfg.out, std::ios::binary);
    if (!os) {
      std::cerr << "cannot write " << cfg.out << "\n";
      return 2;
    }
    os << body;
  }
  return rep.ok() ? 0 : 1;
}

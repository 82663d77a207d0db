// One line per acceptance criterion over the default instance (q = 3, both
// K). Exit status is nonzero if any criterion fails.

#include <cstdio>
#include <map>
#include <vector>

#include "u21/harness.hpp"

int main() {
  const u21::RunConfig cfg;
  const u21::CheckReport rep = u21::run_suite("all", cfg);
  std::map<int, std::vector<const u21::CheckRecord*>> by;
  for (const auto& c : rep.checks)
    if (c.criterion > 0) by[c.criterion].push_back(&c);

  bool all = true;
  for (int k = 1; k <= 10; ++k) {
    const auto& v = by[k];
    int pass = 0;
    for (const auto* c : v) pass += c->status == u21::Status::Pass;
    const bool ok = !v.empty() && pass == static_cast<int>(v.size());
    all = all && ok;
    std::printf("criterion %d: %s (%d/%zu checks)\n", k, ok ? "PASS" : "FAIL", pass, v.size());
    for (const auto* c : v)
      if (c->status != u21::Status::Pass)
        std::printf("    %s %s: %s\n", u21::to_string(c->status), c->id.c_str(), c->observed.c_str());
  }
  int other = 0;
  for (const auto& c : rep.checks) other += c.criterion == 0 && c.status != u21::Status::Pass;
  std::printf("supplementary checks not passing: %d\n", other);
  return all ? 0 : 1;
}

#pragma once

// Check suites over the default instance, with a pass/fail report.

#include <stdexcept>
#include <string>
#include <vector>

#include "u21/fields.hpp"

namespace u21 {

class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

enum class KSelect { K0, K1, Both };

struct RunConfig {
  int p = 3;
  int f = 1;
  KSelect k = KSelect::Both;
  int precision = 16;
  int n_max = 4;
  std::string suite = "all";
  std::string out;
  unsigned seed = 1;
};

/// p an odd prime, f ≥ 1, 2·n_max + 4 ≤ precision, known suite name.
void validate(const RunConfig& cfg);
std::vector<KTag> selected_tags(const RunConfig& cfg);

enum class Status { Pass, Fail, Indeterminate };
const char* to_string(Status s);

struct CheckRecord {
  std::string id;
  std::string label;
  int criterion = 0;  // acceptance criterion, 0 if none
  std::string inputs;
  std::string expected;
  std::string observed;
  Status status = Status::Indeterminate;
  double ms = 0;
};

struct CheckReport {
  RunConfig config;
  std::vector<CheckRecord> checks;
  int count(Status s) const;
  bool ok() const { return count(Status::Fail) == 0 && count(Status::Indeterminate) == 0; }
};

/// notation, hecke, appendix, section3, degenerate, regular, properties.
const std::vector<std::string>& suite_names();

/// Runs one suite, or every suite for "all", in a fixed order. Precision
/// errors are retried once at twice the precision, then reported as
/// indeterminate.
CheckReport run_suite(const std::string& name, const RunConfig& cfg);

}  // namespace u21

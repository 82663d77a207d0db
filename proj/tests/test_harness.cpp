#include <gtest/gtest.h>

#include <cstdlib>
#include <fstream>
#include <json.hpp>
#include <sstream>

#include "u21/harness.hpp"

using namespace u21;

TEST(Harness, ConfigValidation) {
  RunConfig c;
  EXPECT_NO_THROW(validate(c));
  c.p = 2;
  EXPECT_THROW(validate(c), ConfigError);
  c = RunConfig{};
  c.n_max = 7;
  EXPECT_THROW(validate(c), ConfigError);
  c = RunConfig{};
  c.suite = "nope";
  EXPECT_THROW(validate(c), ConfigError);
  EXPECT_THROW(run_suite("notation", RunConfig{.p = 2}), ConfigError);
}

TEST(Harness, SuiteFilterAndDeterminism) {
  RunConfig c;
  c.k = KSelect::K0;
  CheckReport a = run_suite("notation", c), b = run_suite("notation", c);
  ASSERT_EQ(a.checks.size(), b.checks.size());
  for (std::size_t i = 0; i < a.checks.size(); ++i) {
    EXPECT_EQ(a.checks[i].id.rfind("notation.", 0), 0u);
    EXPECT_EQ(a.checks[i].id.find(".K1"), std::string::npos);
    EXPECT_EQ(a.checks[i].observed, b.checks[i].observed);
    EXPECT_EQ(a.checks[i].status, Status::Pass) << a.checks[i].id << ": " << a.checks[i].observed;
  }
}

#ifdef U21CHECK_PATH
namespace {

int run(const std::string& args) {
  const int rc = std::system((std::string(U21CHECK_PATH) + " " + args + " > /dev/null 2>&1").c_str());
  return WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
}

std::string slurp(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  std::ostringstream os;
  os << is.rdbuf();
  return os.str();
}

}  // namespace

TEST(Cli, ExitCodes) {
  EXPECT_EQ(run("--bogus"), 2);
  EXPECT_EQ(run("--p 2"), 2);
  EXPECT_EQ(run("--K K7"), 2);
  EXPECT_EQ(run("--suite notation --K K0"), 0);
}

TEST(Cli, StableReportIsByteIdentical) {
  const std::string a = ::testing::TempDir() + "u21_a.json", b = ::testing::TempDir() + "u21_b.json";
  ASSERT_EQ(run("--suite degenerate --K K1 --stable --out " + a), 0);
  ASSERT_EQ(run("--suite degenerate --K K1 --stable --out " + b), 0);
  const std::string ja = slurp(a);
  EXPECT_EQ(ja, slurp(b));
  auto j = nlohmann::json::parse(ja);
  EXPECT_EQ(j["summary"]["fail"], 0);
  for (const auto& c : j["checks"]) {
    EXPECT_EQ(c["id"].get<std::string>().rfind("degenerate.", 0), 0u);
    for (const char* key : {"id", "label", "status", "expected", "observed", "ms"}) EXPECT_TRUE(c.contains(key));
  }
}
#endif

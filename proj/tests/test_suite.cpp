#include <slavkp/suite.hpp>

#include <gtest/gtest.h>

using namespace slavkp;

namespace {

SuiteConfig config(const char* text) { return SuiteConfig::from_json(json::parse(text)); }

}  // namespace

TEST(Suite, DiagramCountsReport) {
  auto report = run_suite(config(R"({"N": 3, "M": 2, "Q": "-2", "lambda1_max": 5, "checks": ["diagram-counts"]})"));
  ASSERT_FALSE(report.records.empty());
  EXPECT_TRUE(report.ok());
  bool seen = false;
  for (const auto& r : report.records) {
    EXPECT_EQ(r.check, "diagram-counts");
    if (r.params.value("lambda1_max", -1) == 5) {
      seen = true;
      EXPECT_EQ(r.details["enumerated"].get<int>(), 6);
      EXPECT_EQ(r.details["closed_form"].get<int>(), 6);
    }
  }
  EXPECT_TRUE(seen);
  auto rows = diagram_table(2, 5);
  EXPECT_EQ(rows.back()["enumerated"].get<int>(), 6);
  EXPECT_EQ(rows.back()["closed_form"].get<int>(), 6);
}

TEST(Suite, EmptyCheckListSucceeds) {
  auto report = run_suite(config(R"({"N": 2, "M": 1, "Q": "-3", "checks": []})"));
  EXPECT_EQ(report.records.size(), 0u);
  EXPECT_TRUE(report.ok());
  EXPECT_EQ(report.to_json()["summary"]["total"].get<int>(), 0);
}

TEST(Suite, RepeatedSpectralParametersGiveErrorRecords) {
  auto report = run_suite(
      config(R"({"N": 3, "M": 2, "Q": "-2", "u": ["1/3", "5/2"], "v": ["1/7", "1/7"], "checks": ["theorem-quotient", "pluecker"]})"));
  ASSERT_FALSE(report.records.empty());
  EXPECT_FALSE(report.ok());
  int errors = 0;
  for (const auto& r : report.records)
    if (r.check == "theorem-quotient") {
      EXPECT_FALSE(r.pass);
      EXPECT_FALSE(r.error.empty());
      ++errors;
    }
  EXPECT_GT(errors, 0);
}

TEST(Suite, ReportDeterministicApartFromTimestamp) {
  const char* text = R"({"N": 3, "M": 2, "Q": "-2", "instances": 2, "seed": 7,
                         "checks": ["theorem-quotient", "pluecker", "lambda-structure", "andreev", "diagram-counts"]})";
  auto a = run_suite(config(text)).to_json();
  auto b = run_suite(config(text)).to_json();
  a.erase("timestamp");
  b.erase("timestamp");
  EXPECT_EQ(a.dump(), b.dump());
  auto c = config(text);
  c.seed = 8;
  auto d = run_suite(c).to_json();
  d.erase("timestamp");
  EXPECT_NE(a.dump(), d.dump());
}

TEST(Suite, ConfigErrorsNameEveryKey) {
  try {
    config(R"({"N": 3, "M": 2, "bogus": 1, "instances": "many", "checks": ["nope"]})");
    FAIL() << "expected ConfigError";
  } catch (const ConfigError& e) {
    auto keys = e.keys();
    for (const char* k : {"bogus", "instances", "checks", "Q"})
      EXPECT_NE(std::find(keys.begin(), keys.end(), k), keys.end()) << k;
  }
  EXPECT_THROW(config(R"({"N": 3, "M": 2, "Q": "-2", "u": ["1/3"]})"), ConfigError);
  EXPECT_THROW(config(R"({"N": 2, "M": 3, "Q": "-2"})"), ConfigError);
}

TEST(Suite, OneMagnonBetheRecordsPass) {
  auto report = run_suite(config(R"({"N": 2, "M": 1, "Q": "-2", "checks": ["bethe"]})"));
  EXPECT_TRUE(report.ok()) << report.to_text();
  int on_shell = 0;
  for (const auto& r : report.records)
    if (r.params.value("part", "") == "on-shell") ++on_shell;
  EXPECT_GT(on_shell, 0);
}

TEST(Suite, FieldModesAgreeOnPassFail) {
  for (const char* mode : {"rational", "float"}) {
    auto c = config(R"({"N": 3, "M": 2, "Q": "-2", "instances": 2, "checks": ["theorem-quotient", "pluecker", "integral-rep"]})");
    c.field_mode = parse_field_mode(mode);
    auto report = run_suite(c);
    EXPECT_TRUE(report.ok()) << mode << '\n' << report.to_text();
  }
}

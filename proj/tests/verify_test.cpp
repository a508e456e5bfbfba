#include <gtest/gtest.h>

#include <json.hpp>

#include "afqc/programs.hpp"
#include "afqc/verify.hpp"

using namespace afqc;

TEST(Suites, AllPass) {
  for (const auto& name : suite_names()) {
    for (const auto& r : run_suite(name)) {
      EXPECT_TRUE(r.passed()) << r.text();
    }
  }
}

TEST(Suites, UnknownThrows) { EXPECT_THROW(run_suite("bogus"), std::invalid_argument); }

TEST(Suites, CnotHasFourCases) {
  std::size_t truth = 0;
  for (const auto& r : run_suite("cnot")) {
    for (const auto& c : r.checks) truth += c.name.find("final") != std::string::npos;
  }
  EXPECT_GE(truth, 4u);
}

TEST(Suites, SeedChangesNothingForFixedChecks) {
  EXPECT_EQ(reports_text(run_suite("encode", 1)), reports_text(run_suite("encode", 99)));
  EXPECT_EQ(reports_text(run_suite("shift", 5)), reports_text(run_suite("shift", 5)));
}

TEST(Verify, ReportsFirstFailingStep) {
  Expectation e;
  e.step_configs = {{1, parse_config("ddududud")}, {2, parse_config("udududud")}};
  auto r = verify_program(encode_zero_at_edge(), SparseQuantumState::from_basis(ChainConfig::ground(8)), e);
  EXPECT_FALSE(r.passed());
  ASSERT_TRUE(r.first_failing_step);
  EXPECT_EQ(*r.first_failing_step, 2u);
  EXPECT_NE(r.text().find("first failing step 2"), std::string::npos);
}

TEST(Verify, FinalConfigsAndPulseCount) {
  Expectation e;
  e.final_configs = std::vector<ChainConfig>{parse_config("duududud")};
  e.pulse_count = 2;
  auto r = verify_program(encode_zero_at_edge(), SparseQuantumState::from_basis(ChainConfig::ground(8)), e);
  EXPECT_TRUE(r.passed()) << r.text();
  e.pulse_count = 3;
  r = verify_program(encode_zero_at_edge(), SparseQuantumState::from_basis(ChainConfig::ground(8)), e);
  EXPECT_FALSE(r.passed());
}

TEST(Verify, DeviationNotesSurfaceInReports) {
  bool noted = false;
  for (const auto& r : run_suite("gate1")) {
    for (const auto& n : r.notes) noted |= n.kind != "literal";
  }
  EXPECT_TRUE(noted);
}

TEST(Verify, JsonIsWellFormed) {
  const auto j = nlohmann::json::parse(reports_json(run_suite("encode")));
  ASSERT_TRUE(j.is_object() || j.is_array());
}

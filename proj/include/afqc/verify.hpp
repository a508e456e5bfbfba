#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "afqc/pulse.hpp"
#include "afqc/quantum_state.hpp"
#include "afqc/register.hpp"

namespace afqc {

/// Returns an empty string when satisfied, otherwise a short reason.
using StatePredicate = std::function<std::string(const SparseQuantumState&)>;

struct Expectation {
  /// Exact support of the final state.
  std::optional<std::vector<ChainConfig>> final_configs;
  std::vector<std::pair<ChainConfig, double>> probabilities;
  double probability_tol = 1e-10;
  /// Every final term must carry an unaltered CU at cu_start - cu_half_steps.
  std::optional<RegisterLayout> cu_layout;
  std::size_t cu_half_steps = 0;
  std::optional<std::size_t> pulse_count;
  /// Single-config state expected after step k (1-based).
  std::vector<std::pair<std::size_t, ChainConfig>> step_configs;
  double norm_tol = 1e-10;
  std::vector<std::pair<std::string, StatePredicate>> predicates;
};

struct Check {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct VerificationReport {
  std::string suite;
  std::string program;
  std::vector<Check> checks;
  /// 1-based step at which the run first left the expected trajectory.
  std::optional<std::size_t> first_failing_step;
  std::vector<std::string> trace;
  std::vector<ProvenanceNote> notes;

  bool passed() const;
  std::string text() const;
};

VerificationReport verify_program(const PulseProgram& program, const SparseQuantumState& start,
                                  const Expectation& expect);

std::vector<std::string> suite_names();
/// Throws std::invalid_argument for an unknown suite. `seed` drives the
/// randomised reversibility checks.
std::vector<VerificationReport> run_suite(std::string_view name, std::uint64_t seed = 1);

std::string reports_text(const std::vector<VerificationReport>& reports);
std::string reports_json(const std::vector<VerificationReport>& reports);

}  // namespace afqc

#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "afqc/chain.hpp"
#include "afqc/pulse.hpp"

namespace afqc {

struct SearchOptions {
  std::size_t node_cap = 10'000'000;
};

class SearchSpaceExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Shortest π-pulse program (length <= max_len) taking `start` to `goal`.
/// Ties go to the lexicographically smallest class sequence (A < B < D, m
/// ascending). Empty `allowed` means every class the chain presents.
/// Returns nullopt when nothing is found within the bound.
std::optional<PulseProgram> find_sequence(const ChainConfig& start, const ChainConfig& goal,
                                          std::size_t max_len,
                                          std::vector<PulseClass> allowed = {},
                                          SearchOptions options = {});

/// Packed view of a joint search node: `cases` configurations of
/// `words_per_case` words each, laid out back to back.
struct JointState {
  std::span<const ChainConfig::Word> words;
  std::size_t words_per_case;

  std::span<const ChainConfig::Word> at(std::size_t i) const {
    return words.subspan(i * words_per_case, words_per_case);
  }
};

using JointGoal = std::function<bool(const JointState&)>;

/// Breadth-first search applying the same pulse to every start config at once.
/// All starts must share length and dopant.
std::optional<std::vector<PulseClass>> find_joint_sequence(const std::vector<ChainConfig>& starts,
                                                           const JointGoal& goal,
                                                           std::size_t max_len,
                                                           std::vector<PulseClass> allowed,
                                                           SearchOptions options = {});

}  // namespace afqc

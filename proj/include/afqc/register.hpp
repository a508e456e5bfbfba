#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "afqc/chain.hpp"

namespace afqc {

enum class BlockRole {
  Zero,
  One,
  ZeroReversed,
  OneReversed,
  ControlUnit,
  ControlUnitAltered,
  Ground,
  Destroyed,
};

std::string_view to_string(BlockRole role);

/// Excitation template of a block ('1' excited, '.' ground). Zero and One
/// start on an A-site; their reversed forms are the same templates starting on
/// a B-site, which is how they appear after an odd number of SWAP half-steps.
/// The control unit starts on a B-site when settled.
std::string_view block_template(BlockRole role);

/// Renders a block in arrow notation given the parity of its first cell.
std::string render_block(BlockRole role, bool starts_on_a);

class LayoutError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class DestroyedQubit : public std::runtime_error {
 public:
  DestroyedQubit(std::size_t qubit, std::size_t position)
      : std::runtime_error("qubit " + std::to_string(qubit) + " at site " +
                           std::to_string(position) + " does not decode"),
        qubit_(qubit),
        position_(position) {}
  std::size_t qubit() const noexcept { return qubit_; }
  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t qubit_;
  std::size_t position_;
};

/// Qubit k occupies [lead + 8k, lead + 8k + 4); a spacer of 4 ground cells
/// follows every qubit but the last. The CU sits `cu_spacer` ground cells
/// after the last qubit.
struct RegisterLayout {
  std::size_t qubit_count = 0;
  std::size_t spacer_cells = 4;
  std::size_t qubit_block = 4;
  bool cu_present = true;
  std::size_t cu_block = 6;
  std::size_t cu_spacer = 3;
  std::size_t lead_cells = 0;
  /// Chain length; 0 means min_length().
  std::size_t length = 0;
  bool cu_altered = false;

  void validate() const;
  std::size_t qubit_start(std::size_t k) const;
  std::size_t cu_start() const;
  std::size_t min_length() const;
  std::size_t chain_length() const { return length != 0 ? length : min_length(); }

  /// Layout long enough for `half_steps` SWAP half-steps: qubits drift right
  /// by that many cells, so the tail grows to match (plus a margin).
  static RegisterLayout for_gates(std::size_t qubits, std::size_t half_steps,
                                  std::size_t lead = 4);
};

ChainConfig encode_register(std::span<const int> bits, const RegisterLayout& layout);

struct SlotReading {
  BlockRole role = BlockRole::Destroyed;
  std::size_t start = 0;
};

struct RegisterReading {
  std::vector<SlotReading> qubits;
  std::optional<SlotReading> cu;
  /// Excited sites outside every block window.
  std::vector<std::size_t> stray;

  /// Logical values; throws DestroyedQubit for a slot that is not a qubit form.
  std::vector<int> bits() const;
  bool clean() const { return stray.empty(); }
};

/// Reads every block window after `half_steps` SWAP half-steps: qubit windows
/// shifted right by that amount, the CU window left.
RegisterReading decode_register(const ChainConfig& config, const RegisterLayout& layout,
                                std::size_t half_steps = 0);

}  // namespace afqc

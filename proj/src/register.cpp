#include "afqc/register.hpp"

#include <algorithm>

namespace afqc {

std::string_view to_string(BlockRole role) {
  switch (role) {
    case BlockRole::Zero: return "zero";
    case BlockRole::One: return "one";
    case BlockRole::ZeroReversed: return "zero-reversed";
    case BlockRole::OneReversed: return "one-reversed";
    case BlockRole::ControlUnit: return "cu";
    case BlockRole::ControlUnitAltered: return "cu-altered";
    case BlockRole::Ground: return "ground";
    case BlockRole::Destroyed: return "destroyed";
  }
  return "?";
}

std::string_view block_template(BlockRole role) {
  switch (role) {
    case BlockRole::Zero:
    case BlockRole::ZeroReversed: return "11..";
    case BlockRole::One:
    case BlockRole::OneReversed: return "..11";
    case BlockRole::ControlUnit: return "11..11";
    case BlockRole::ControlUnitAltered: return "111111";
    case BlockRole::Ground: return "....";
    case BlockRole::Destroyed: return "";
  }
  return "";
}

std::string render_block(BlockRole role, bool starts_on_a) {
  if (role == BlockRole::Destroyed) throw std::invalid_argument("destroyed block has no pattern");
  std::string out;
  const auto tmpl = block_template(role);
  for (std::size_t i = 0; i < tmpl.size(); ++i) {
    const bool a_site = (i % 2 == 0) == starts_on_a;
    const bool excited = tmpl[i] == '1';
    if (a_site) {
      out += excited ? "⇓" : "↑";
    } else {
      out += excited ? "⇑" : "↓";
    }
  }
  return out;
}

// ---------------------------------------------------------------------------

void RegisterLayout::validate() const {
  if (qubit_block != 4) throw LayoutError("qubit blocks are 4 cells");
  if (cu_block != 6) throw LayoutError("the control unit is 6 cells");
  if (spacer_cells < 2 || spacer_cells % 2 != 0) {
    throw LayoutError("qubit spacer must be even and at least 2 cells");
  }
  if (cu_spacer % 2 == 0) throw LayoutError("CU spacer must be an odd number of cells");
  if (lead_cells % 2 != 0) throw LayoutError("lead cells must be even so qubits start on A");
  if (length != 0 && length < min_length()) {
    throw LayoutError("chain of " + std::to_string(length) + " cells is shorter than the " +
                      std::to_string(min_length()) + " the layout needs");
  }
}

std::size_t RegisterLayout::qubit_start(std::size_t k) const {
  return lead_cells + k * (qubit_block + spacer_cells);
}

std::size_t RegisterLayout::cu_start() const {
  if (qubit_count == 0) return lead_cells + cu_spacer;
  return qubit_start(qubit_count - 1) + qubit_block + cu_spacer;
}

std::size_t RegisterLayout::min_length() const {
  std::size_t end = lead_cells;
  if (qubit_count > 0) end = qubit_start(qubit_count - 1) + qubit_block;
  if (cu_present) end = cu_start() + cu_block;
  return std::max<std::size_t>(end, 2);
}

RegisterLayout RegisterLayout::for_gates(std::size_t qubits, std::size_t half_steps,
                                         std::size_t lead) {
  RegisterLayout layout;
  layout.qubit_count = qubits;
  layout.lead_cells = lead;
  layout.length = layout.min_length() + half_steps + 8;
  layout.validate();
  return layout;
}

ChainConfig encode_register(std::span<const int> bits, const RegisterLayout& layout) {
  layout.validate();
  if (bits.size() != layout.qubit_count) {
    throw LayoutError("layout holds " + std::to_string(layout.qubit_count) + " qubits, got " +
                      std::to_string(bits.size()) + " bits");
  }
  ChainConfig config = ChainConfig::ground(layout.chain_length());
  auto stamp = [&](std::size_t start, std::string_view tmpl) {
    for (std::size_t i = 0; i < tmpl.size(); ++i) {
      if (tmpl[i] == '1') config = config.with_flipped(start + i);
    }
  };
  for (std::size_t k = 0; k < bits.size(); ++k) {
    if (bits[k] != 0 && bits[k] != 1) throw LayoutError("qubit values must be 0 or 1");
    stamp(layout.qubit_start(k), block_template(bits[k] ? BlockRole::One : BlockRole::Zero));
  }
  if (layout.cu_present) {
    stamp(layout.cu_start(), block_template(layout.cu_altered ? BlockRole::ControlUnitAltered
                                                              : BlockRole::ControlUnit));
  }
  return config;
}

namespace {

std::string excitation(const ChainConfig& c, std::size_t start, std::size_t width) {
  std::string out;
  for (std::size_t i = start; i < start + width; ++i) out += c.excited(i) ? '1' : '.';
  return out;
}

}  // namespace

RegisterReading decode_register(const ChainConfig& config, const RegisterLayout& layout,
                                std::size_t half_steps) {
  layout.validate();
  const std::size_t n = config.size();
  std::vector<bool> covered(n, false);
  RegisterReading reading;

  for (std::size_t k = 0; k < layout.qubit_count; ++k) {
    SlotReading slot{BlockRole::Destroyed, layout.qubit_start(k) + half_steps};
    if (slot.start + layout.qubit_block <= n) {
      const auto e = excitation(config, slot.start, layout.qubit_block);
      const bool on_a = slot.start % 2 == 0;
      if (e == block_template(BlockRole::Zero)) {
        slot.role = on_a ? BlockRole::Zero : BlockRole::ZeroReversed;
      } else if (e == block_template(BlockRole::One)) {
        slot.role = on_a ? BlockRole::One : BlockRole::OneReversed;
      } else if (e == "....") {
        slot.role = BlockRole::Ground;
      }
      std::fill_n(covered.begin() + static_cast<std::ptrdiff_t>(slot.start), layout.qubit_block,
                  true);
    }
    reading.qubits.push_back(slot);
  }

  if (layout.cu_present) {
    SlotReading slot{BlockRole::Destroyed, 0};
    if (half_steps <= layout.cu_start() && layout.cu_start() - half_steps + layout.cu_block <= n) {
      slot.start = layout.cu_start() - half_steps;
      const auto e = excitation(config, slot.start, layout.cu_block);
      if (e == block_template(BlockRole::ControlUnit)) {
        slot.role = BlockRole::ControlUnit;
      } else if (e == block_template(BlockRole::ControlUnitAltered)) {
        slot.role = BlockRole::ControlUnitAltered;
      } else if (e == "......") {
        slot.role = BlockRole::Ground;
      }
      std::fill_n(covered.begin() + static_cast<std::ptrdiff_t>(slot.start), layout.cu_block,
                  true);
    }
    reading.cu = slot;
  }

  for (std::size_t i = 0; i < n; ++i) {
    if (!covered[i] && config.excited(i)) reading.stray.push_back(i);
  }
  return reading;
}

std::vector<int> RegisterReading::bits() const {
  std::vector<int> out;
  for (std::size_t k = 0; k < qubits.size(); ++k) {
    switch (qubits[k].role) {
      case BlockRole::Zero:
      case BlockRole::ZeroReversed: out.push_back(0); break;
      case BlockRole::One:
      case BlockRole::OneReversed: out.push_back(1); break;
      default: throw DestroyedQubit(k, qubits[k].start);
    }
  }
  return out;
}

}  // namespace afqc

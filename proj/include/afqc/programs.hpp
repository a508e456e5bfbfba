#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "afqc/pulse.hpp"
#include "afqc/quantum_state.hpp"
#include "afqc/register.hpp"

namespace afqc {

class VerificationFailed : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Classes the printed sequences draw from: (A,0), (A,1), (B,-1), (B,0), (B,1).
const std::vector<PulseClass>& standard_alphabet();

/// [pi(A,-1/2), pi(B,0)]: ground chain -> Zero block at sites 0-3.
PulseProgram encode_zero_at_edge();
/// Three pulses turning the edge Zero block into One.
PulseProgram encode_one_at_edge();
/// encode_zero_at_edge followed by encode_one_at_edge.
PulseProgram encode_one_from_ground();

/// `pairs` repetitions of [pi(A,0), pi(B,0)].
PulseProgram swap_shift(std::size_t pairs);
/// SWAP half-steps numbered [from, to): even steps pi(A,0), odd steps pi(B,0).
PulseProgram swap_half_steps(std::size_t from, std::size_t to);

/// 17 pulses, starting with the CU 3 ground cells right of the target block:
/// 3 approach half-steps, 5-pulse update, U(A,1), update reversed, 3 back.
PulseProgram one_qubit_gate(const OneCellUnitary& u);
/// Update pulses of the one-qubit gate (between the approach and U).
std::vector<PulseClass> one_qubit_update();

/// 8-pulse update plus the closing pi(A,1); 9 pulses.
PulseProgram cnot_extension();
std::vector<PulseClass> cnot_update();

/// Half-step count at which the CU sits 3 ground cells right of `qubit`.
std::size_t cu_settled_stage(const RegisterLayout& layout, std::size_t qubit);

/// Single-qubit gate on `target` of a register: SWAP approach, the 17-pulse
/// gate, SWAP retreat. Needs lead_cells >= 2 and enough tail.
PulseProgram gate_on_qubit(const RegisterLayout& layout, std::size_t target,
                           const OneCellUnitary& u);

/// CNOT with the target immediately left of the control.
PulseProgram cnot_adjacent(const RegisterLayout& layout, std::size_t target,
                           std::size_t control);

/// pi(A,1) stimulus fired 4 half-steps after the CU settles right of `qubit`,
/// with SWAP half-steps continuing up to `total_half_steps`.
PulseProgram cu_stimulus(const RegisterLayout& layout, std::size_t qubit,
                         std::size_t total_half_steps);
std::size_t stimulus_stage(const RegisterLayout& layout, std::size_t qubit);

/// Minimum chain length for `half_steps` of transport on `layout`.
std::size_t transport_length(const RegisterLayout& layout, std::size_t half_steps);

struct BuiltinInfo {
  std::string name;
  std::string description;
};

const std::vector<BuiltinInfo>& builtin_programs();
/// Throws std::out_of_range for an unknown name.
PulseProgram builtin_program(std::string_view name);

}  // namespace afqc

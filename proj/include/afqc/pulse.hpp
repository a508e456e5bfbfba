#pragma once

#include <cstddef>
#include <filesystem>
#include <functional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "afqc/chain.hpp"
#include "afqc/quantum_state.hpp"

namespace afqc {

struct Pulse {
  enum class Kind { Pi, Unitary };

  Kind kind = Kind::Pi;
  PulseClass cls;
  /// Identity for Pi pulses.
  OneCellUnitary u = OneCellUnitary::identity();

  static Pulse pi(PulseClass cls) { return Pulse{Kind::Pi, cls, OneCellUnitary::identity()}; }
  static Pulse unitary(PulseClass cls, const OneCellUnitary& u);

  /// Short label used in traces: "pi(A,0)" or "U(A,1)".
  std::string label() const;

  bool operator==(const Pulse&) const = default;
};

/// Where a named sequence came from, and how it was fixed if the text
/// transcription did not survive simulation.
struct ProvenanceNote {
  std::string kind;  // "literal", "alias", "search", "layout"
  std::string detail;

  bool operator==(const ProvenanceNote&) const = default;
};

struct PulseProgram {
  std::string name;
  std::vector<Pulse> pulses;
  std::vector<ProvenanceNote> notes;

  std::size_t size() const noexcept { return pulses.size(); }
  bool has_deviation() const;

  PulseProgram& append(const PulseProgram& other);
  PulseProgram& append(const Pulse& p);
};

PulseProgram make_pi_program(std::string name, const std::vector<PulseClass>& classes);

class ScriptError : public std::runtime_error {
 public:
  ScriptError(std::size_t line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// One pulse per line: `PI <A|B|D> <m>` or
/// `U <A|B|D> <m> <re_a> <im_a> <re_b> <im_b>`. `#` starts a comment.
PulseProgram parse_script(std::string_view text, std::string name);
/// Program name is the file stem.
PulseProgram load_script(const std::filesystem::path& path);
/// Emits a header comment with the name and any provenance notes. Throws
/// std::invalid_argument for a unitary that is not a ground-column completion.
std::string format_script(const PulseProgram& program);

/// Pulses in reverse order, unitaries replaced by their adjoint.
PulseProgram reverse_program(const PulseProgram& program);

using TraceFn = std::function<void(std::size_t step, const Pulse&, const SparseQuantumState&)>;

/// Runs every pulse in order; `trace` (if set) sees the state after each step.
void run_program(const PulseProgram& program, SparseQuantumState& state,
                 const TraceFn& trace = {});

/// Classical fast path. Throws std::invalid_argument if a unitary is present.
ChainConfig run_classical(const PulseProgram& program, ChainConfig config);
ChainConfig run_classes(const std::vector<PulseClass>& classes, ChainConfig config);

}  // namespace afqc

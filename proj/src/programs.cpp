#include "afqc/programs.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <functional>
#include <map>
#include <memory>
#include <set>

#include "afqc/search.hpp"

namespace afqc {

namespace {

const PulseClass kA0 = make_class(Sublattice::A, 0);
const PulseClass kA1 = make_class(Sublattice::A, 2);
const PulseClass kB0 = make_class(Sublattice::B, 0);
const PulseClass kB1 = make_class(Sublattice::B, 2);
const PulseClass kEdgeLo = make_class(Sublattice::A, -1);  // (A,-1/2)

using Word = ChainConfig::Word;

std::string join(const std::vector<PulseClass>& seq) {
  std::string out = "[";
  for (std::size_t i = 0; i < seq.size(); ++i) {
    if (i) out += ", ";
    out += "pi(" + seq[i].str() + ")";
  }
  return out + "]";
}

std::vector<PulseClass> reversed(std::vector<PulseClass> seq) {
  std::reverse(seq.begin(), seq.end());
  return seq;
}

std::vector<PulseClass> half_steps(std::size_t from, std::size_t to) {
  std::vector<PulseClass> out;
  for (std::size_t k = from; k < to; ++k) out.push_back(k % 2 == 0 ? kA0 : kB0);
  return out;
}

struct Reconstructed {
  std::vector<PulseClass> classes;
  std::vector<ProvenanceNote> notes;
};

struct SearchFallback {
  std::vector<ChainConfig> starts;
  JointGoal goal;
  std::size_t max_len;
};

// Literal first, then a consistent relabelling of one printed class to the
// opposite sign of m, then breadth-first search over the printed alphabet.
Reconstructed reconstruct(const std::string& what, const std::vector<PulseClass>& literal,
                          const std::function<bool(const std::vector<PulseClass>&)>& accepts,
                          const SearchFallback& fallback) {
  if (accepts(literal)) return {literal, {{"literal", what + " " + join(literal)}}};

  std::set<PulseClass> labels;
  for (auto c : literal) {
    if (c.m.twice() != 0) labels.insert(c);
  }
  for (auto label : labels) {
    const PulseClass alias{label.target, NeighborSum::from_twice(-label.m.twice())};
    auto candidate = literal;
    std::replace(candidate.begin(), candidate.end(), label, alias);
    if (accepts(candidate)) {
      return {candidate,
              {{"alias", what + ": literal " + join(literal) + " fails; label pi(" + label.str() +
                             ") read as pi(" + alias.str() + ")"}}};
    }
  }

  auto found = find_joint_sequence(fallback.starts, fallback.goal, fallback.max_len,
                                   standard_alphabet());
  if (!found || !accepts(*found)) {
    throw VerificationFailed(what + ": literal " + join(literal) +
                             " fails and no replacement of length <= " +
                             std::to_string(fallback.max_len) + " was found");
  }
  return {*found,
          {{"search", what + ": literal " + join(literal) + " fails; shortest replacement " +
                          join(*found) + " found by joint breadth-first search"}}};
}

bool mask_flip_equals(const ChainGeometry& g, std::span<const Word> x, std::span<const Word> y,
                      PulseClass cls, int* matched = nullptr) {
  std::vector<Word> m(g.words());
  g.match(x, cls, m);
  int count = 0;
  for (std::size_t w = 0; w < m.size(); ++w) {
    if ((x[w] ^ m[w]) != y[w]) return false;
    count += std::popcount(m[w]);
  }
  if (matched) *matched = count;
  return true;
}

// ---------------------------------------------------------------------------

const Reconstructed& encode_one_reconstruction() {
  static const Reconstructed r = [] {
    const std::vector<PulseClass> literal{kA0, kEdgeLo, kB0};
    const std::vector<PulseClass> zero{kEdgeLo, kB0};
    auto case_for = [&](std::size_t n) {
      RegisterLayout one;
      one.qubit_count = 1;
      one.cu_present = false;
      one.length = n;
      const int bit = 1;
      return std::pair{run_classes(zero, ChainConfig::ground(n)),
                       encode_register(std::span<const int>(&bit, 1), one)};
    };
    auto accepts = [&](const std::vector<PulseClass>& seq) {
      for (std::size_t n : {6, 8, 12, 16}) {
        auto [from, to] = case_for(n);
        if (run_classes(seq, from) != to) return false;
      }
      return true;
    };
    auto [from, to] = case_for(8);
    SearchFallback fb{{from},
                      [to](const JointState& s) {
                        return std::equal(to.words().begin(), to.words().end(), s.words.begin());
                      },
                      literal.size()};
    return reconstruct("encode-one", literal, accepts, fb);
  }();
  return r;
}

const Reconstructed& gate_reconstruction() {
  static const Reconstructed r = [] {
    const std::vector<PulseClass> literal{kA1, kB1, kB0, kA1, kB0};
    const RegisterLayout layout = RegisterLayout::for_gates(1, 16, 2);
    const auto approach = half_steps(0, 3);
    std::vector<ChainConfig> xs, ys;
    for (int b : {0, 1}) {
      const int flipped = 1 - b;
      xs.push_back(run_classes(approach, encode_register(std::span<const int>(&b, 1), layout)));
      ys.push_back(
          run_classes(approach, encode_register(std::span<const int>(&flipped, 1), layout)));
    }
    auto accepts = [=](const std::vector<PulseClass>& seq) {
      for (std::size_t i = 0; i < xs.size(); ++i) {
        ChainConfig z = run_classes(seq, xs[i]);
        if (matching_sites(z, kA1).size() != 1) return false;
        z = run_classes(reversed(seq), apply_pi(z, kA1));
        if (z != ys[i]) return false;
      }
      return true;
    };
    auto starts = xs;
    starts.insert(starts.end(), ys.begin(), ys.end());
    const auto geometry = std::make_shared<ChainGeometry>(layout.chain_length(), std::nullopt);
    SearchFallback fb{starts,
                      [geometry](const JointState& s) {
                        for (std::size_t i = 0; i < 2; ++i) {
                          int matched = 0;
                          if (!mask_flip_equals(*geometry, s.at(i), s.at(2 + i), kA1, &matched) ||
                              matched != 1) {
                            return false;
                          }
                        }
                        return true;
                      },
                      literal.size()};
    return reconstruct("one-qubit update", literal, accepts, fb);
  }();
  return r;
}

const Reconstructed& cnot_reconstruction() {
  static const Reconstructed r = [] {
    const std::vector<PulseClass> literal{kA1, kB1, kB0, kA0, kA1, kB0, kA0, kB1};
    const RegisterLayout layout = RegisterLayout::for_gates(2, 24, 2);
    auto w = half_steps(0, 4);
    w.push_back(kA1);
    const auto tail = half_steps(4, 7);
    w.insert(w.end(), tail.begin(), tail.end());

    std::vector<ChainConfig> xs, ys;
    for (int t : {0, 1}) {
      for (int c : {0, 1}) {
        const std::vector<int> in{t, c}, out{t ^ c, c};
        xs.push_back(run_classes(w, encode_register(in, layout)));
        ys.push_back(run_classes(w, encode_register(out, layout)));
      }
    }
    auto accepts = [=](const std::vector<PulseClass>& seq) {
      for (std::size_t i = 0; i < xs.size(); ++i) {
        const ChainConfig z = run_classes(reversed(seq), apply_pi(run_classes(seq, xs[i]), kA1));
        if (z != ys[i]) return false;
      }
      return true;
    };
    auto starts = xs;
    starts.insert(starts.end(), ys.begin(), ys.end());
    const auto geometry = std::make_shared<ChainGeometry>(layout.chain_length(), std::nullopt);
    SearchFallback fb{starts,
                      [geometry](const JointState& s) {
                        for (std::size_t i = 0; i < 4; ++i) {
                          if (!mask_flip_equals(*geometry, s.at(i), s.at(4 + i), kA1)) return false;
                        }
                        return true;
                      },
                      literal.size()};
    return reconstruct("cnot update", literal, accepts, fb);
  }();
  return r;
}

void require_cu(const RegisterLayout& layout) {
  layout.validate();
  if (!layout.cu_present) throw LayoutError("gate programs need a control unit");
  if (layout.cu_altered) throw LayoutError("gate programs start from an unaltered control unit");
  if (layout.lead_cells < 2) throw LayoutError("gate programs need at least 2 lead cells");
}

void require_length(const RegisterLayout& layout, std::size_t half_steps) {
  const std::size_t need = transport_length(layout, half_steps);
  if (layout.chain_length() < need) {
    throw LayoutError("chain of " + std::to_string(layout.chain_length()) +
                      " cells is too short; transport needs " + std::to_string(need));
  }
}

}  // namespace

const std::vector<PulseClass>& standard_alphabet() {
  static const std::vector<PulseClass> alphabet{kA0, kA1, make_class(Sublattice::B, -2), kB0,
                                                kB1};
  return alphabet;
}

PulseProgram encode_zero_at_edge() {
  auto p = make_pi_program("encode0", {kEdgeLo, kB0});
  p.notes.push_back({"literal", "encode-zero " + join({kEdgeLo, kB0})});
  return p;
}

PulseProgram encode_one_at_edge() {
  const auto& r = encode_one_reconstruction();
  auto p = make_pi_program("encode1", r.classes);
  p.notes = r.notes;
  return p;
}

PulseProgram encode_one_from_ground() {
  PulseProgram p = encode_zero_at_edge();
  p.name = "encode1-full";
  p.append(encode_one_at_edge());
  return p;
}

PulseProgram swap_shift(std::size_t pairs) {
  return make_pi_program("shift" + std::to_string(pairs), half_steps(0, 2 * pairs));
}

PulseProgram swap_half_steps(std::size_t from, std::size_t to) {
  return make_pi_program("swap", half_steps(from, std::max(from, to)));
}

std::vector<PulseClass> one_qubit_update() { return gate_reconstruction().classes; }

PulseProgram one_qubit_gate(const OneCellUnitary& u) {
  const auto& r = gate_reconstruction();
  PulseProgram p = make_pi_program("gate1", half_steps(0, 3));
  p.append(make_pi_program("", r.classes));
  p.append(Pulse::unitary(kA1, u));
  p.append(make_pi_program("", reversed(r.classes)));
  p.append(make_pi_program("", reversed(half_steps(0, 3))));
  p.notes = r.notes;
  return p;
}

std::vector<PulseClass> cnot_update() { return cnot_reconstruction().classes; }

PulseProgram cnot_extension() {
  const auto& r = cnot_reconstruction();
  auto classes = r.classes;
  classes.push_back(kA1);
  PulseProgram p = make_pi_program("cnot-ext", classes);
  p.notes = r.notes;
  return p;
}

std::size_t cu_settled_stage(const RegisterLayout& layout, std::size_t qubit) {
  if (qubit >= layout.qubit_count) throw LayoutError("qubit index out of range");
  return 4 * (layout.qubit_count - 1 - qubit);
}

std::size_t stimulus_stage(const RegisterLayout& layout, std::size_t qubit) {
  return cu_settled_stage(layout, qubit) + 4;
}

std::size_t transport_length(const RegisterLayout& layout, std::size_t half_steps) {
  std::size_t last_end = layout.lead_cells;
  if (layout.qubit_count > 0) last_end = layout.qubit_start(layout.qubit_count - 1) + 4;
  return std::max(layout.min_length(), last_end + half_steps + 4);
}

PulseProgram gate_on_qubit(const RegisterLayout& layout, std::size_t target,
                           const OneCellUnitary& u) {
  require_cu(layout);
  const std::size_t stage = cu_settled_stage(layout, target);
  require_length(layout, stage + 3);
  const PulseProgram approach = swap_half_steps(0, stage);
  PulseProgram p = approach;
  p.name = "gate1-q" + std::to_string(target);
  p.append(one_qubit_gate(u));
  p.append(reverse_program(approach));
  p.notes.push_back({"layout", "CU brought to 3 cells right of qubit " + std::to_string(target) +
                                   " by " + std::to_string(stage) + " SWAP half-steps"});
  return p;
}

PulseProgram cnot_adjacent(const RegisterLayout& layout, std::size_t target,
                           std::size_t control) {
  require_cu(layout);
  if (control != target + 1 || control >= layout.qubit_count) {
    throw LayoutError("CNOT needs the target immediately left of the control");
  }
  const std::size_t fire = stimulus_stage(layout, control);
  const std::size_t mid = fire + 3;
  require_length(layout, mid + 2);

  PulseProgram approach = swap_half_steps(0, fire);
  approach.append(Pulse::pi(kA1));
  approach.append(swap_half_steps(fire, mid));

  const auto& r = cnot_reconstruction();
  PulseProgram p = approach;
  p.name = "cnot-q" + std::to_string(target) + "-q" + std::to_string(control);
  p.append(cnot_extension());
  p.append(make_pi_program("", reversed(r.classes)));
  p.append(reverse_program(approach));
  p.notes.push_back({"layout", "stimulus after " + std::to_string(fire) +
                                   " half-steps, extension after " + std::to_string(mid)});
  return p;
}

PulseProgram cu_stimulus(const RegisterLayout& layout, std::size_t qubit,
                         std::size_t total_half_steps) {
  layout.validate();
  if (!layout.cu_present) throw LayoutError("stimulus needs a control unit");
  const std::size_t fire = stimulus_stage(layout, qubit);
  if (total_half_steps < fire) throw LayoutError("stimulus fires after the requested run ends");
  require_length(layout, total_half_steps);
  PulseProgram p = swap_half_steps(0, fire);
  p.name = "cu-stimulus";
  p.append(Pulse::pi(kA1));
  p.append(swap_half_steps(fire, total_half_steps));
  return p;
}

// ---------------------------------------------------------------------------

namespace {

using Factory = std::function<PulseProgram()>;

struct Builtin {
  BuiltinInfo info;
  Factory make;
};

const std::vector<Builtin>& builtins() {
  static const std::vector<Builtin> table = [] {
    const double h = 1.0 / std::sqrt(2.0);
    std::vector<Builtin> t{
        {{"encode0", "Zero block at the left edge of a ground chain"}, encode_zero_at_edge},
        {{"encode1", "edge Zero block to One"}, encode_one_at_edge},
        {{"encode1-full", "ground chain to One block at the left edge"}, encode_one_from_ground},
        {{"shift1", "one SWAP pair"}, [] { return swap_shift(1); }},
        {{"shift2", "two SWAP pairs"}, [] { return swap_shift(2); }},
        {{"gate-id", "17-pulse gate with U = identity"},
         [] { return one_qubit_gate(OneCellUnitary::from_ground_column(1.0, 0.0)); }},
        {{"gate-x", "17-pulse gate with U column (0, 1)"},
         [] { return one_qubit_gate(OneCellUnitary::from_ground_column(0.0, 1.0)); }},
        {{"gate-h", "17-pulse gate with U column (1/sqrt2, 1/sqrt2)"},
         [h] { return one_qubit_gate(OneCellUnitary::from_ground_column(h, h)); }},
        {{"cnot-ext", "9-pulse CNOT extension"}, cnot_extension},
    };
    for (auto& b : t) {
      auto make = b.make;
      auto name = b.info.name;
      b.make = [make, name] {
        auto p = make();
        p.name = name;
        return p;
      };
    }
    return t;
  }();
  return table;
}

}  // namespace

const std::vector<BuiltinInfo>& builtin_programs() {
  static const std::vector<BuiltinInfo> infos = [] {
    std::vector<BuiltinInfo> out;
    for (const auto& b : builtins()) out.push_back(b.info);
    return out;
  }();
  return infos;
}

PulseProgram builtin_program(std::string_view name) {
  for (const auto& b : builtins()) {
    if (b.info.name == name) return b.make();
  }
  throw std::out_of_range("unknown built-in program '" + std::string(name) + "'");
}

}  // namespace afqc

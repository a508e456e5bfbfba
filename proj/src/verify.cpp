#include "afqc/verify.hpp"

#include <cmath>
#include <cstdio>
#include <random>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "afqc/programs.hpp"

namespace afqc {

namespace {

std::string support_str(const SparseQuantumState& s) {
  std::string out;
  for (const auto& [c, a] : s.terms()) {
    if (!out.empty()) out += " + ";
    out += format_config(c);
  }
  return out;
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

}  // namespace

bool VerificationReport::passed() const {
  for (const auto& c : checks) {
    if (!c.passed) return false;
  }
  return !checks.empty();
}

std::string VerificationReport::text() const {
  std::ostringstream out;
  out << (passed() ? "PASS " : "FAIL ") << suite << " " << program << "\n";
  for (const auto& c : checks) {
    out << "  [" << (c.passed ? "pass" : "FAIL") << "] " << c.name;
    if (!c.detail.empty()) out << ": " << c.detail;
    out << "\n";
  }
  for (const auto& n : notes) {
    if (n.kind != "literal") out << "  note " << n.kind << ": " << n.detail << "\n";
  }
  if (first_failing_step) {
    out << "  first failing step " << *first_failing_step << "\n";
    for (const auto& t : trace) out << "    " << t << "\n";
  }
  return out.str();
}

VerificationReport verify_program(const PulseProgram& program, const SparseQuantumState& start,
                                  const Expectation& expect) {
  VerificationReport report;
  report.program = program.name;
  report.notes = program.notes;

  SparseQuantumState state = start;
  std::size_t next_expected = 0;
  bool run_ok = true;
  try {
    run_program(program, state, [&](std::size_t step, const Pulse& p, const SparseQuantumState& s) {
      report.trace.push_back("step " + std::to_string(step) + " " + p.label() + " " +
                             support_str(s));
      while (next_expected < expect.step_configs.size() &&
             expect.step_configs[next_expected].first == step) {
        const auto& want = expect.step_configs[next_expected].second;
        if (!report.first_failing_step && (s.size() != 1 || s.terms().begin()->first != want)) {
          report.first_failing_step = step;
        }
        ++next_expected;
      }
    });
  } catch (const std::exception& e) {
    run_ok = false;
    report.checks.push_back({"run", false, e.what()});
  }
  if (run_ok) report.checks.push_back({"run", true, ""});

  if (!expect.step_configs.empty()) {
    report.checks.push_back({"trajectory", run_ok && !report.first_failing_step,
                             report.first_failing_step
                                 ? "diverges at step " + std::to_string(*report.first_failing_step)
                                 : ""});
  }
  if (expect.pulse_count) {
    const bool ok = program.size() == *expect.pulse_count;
    report.checks.push_back({"pulse count", ok,
                             std::to_string(program.size()) + " pulses, expected " +
                                 std::to_string(*expect.pulse_count)});
  }
  if (!run_ok) return report;

  const double drift = std::abs(state.norm_squared() - start.norm_squared());
  report.checks.push_back({"norm", drift <= expect.norm_tol, "drift " + fmt(drift)});

  if (expect.final_configs) {
    std::vector<ChainConfig> want = *expect.final_configs;
    std::sort(want.begin(), want.end());
    want.erase(std::unique(want.begin(), want.end()), want.end());
    std::vector<ChainConfig> got;
    for (const auto& kv : state.terms()) got.push_back(kv.first);
    report.checks.push_back({"final configs", got == want, support_str(state)});
  }
  if (!expect.probabilities.empty()) {
    const auto probs = state.probabilities();
    bool ok = true;
    std::string detail;
    for (const auto& [config, p] : expect.probabilities) {
      auto it = probs.find(config);
      const double got = it == probs.end() ? 0.0 : it->second;
      if (std::abs(got - p) > expect.probability_tol) ok = false;
      if (!detail.empty()) detail += ", ";
      detail += fmt(got);
    }
    report.checks.push_back({"probabilities", ok, detail});
  }
  if (expect.cu_layout) {
    bool ok = true;
    for (const auto& [config, amp] : state.terms()) {
      const auto reading = decode_register(config, *expect.cu_layout, expect.cu_half_steps);
      if (!reading.cu || reading.cu->role != BlockRole::ControlUnit) ok = false;
    }
    report.checks.push_back({"cu restored", ok, ""});
  }
  for (const auto& [name, pred] : expect.predicates) {
    const std::string why = pred(state);
    report.checks.push_back({name, why.empty(), why});
  }
  return report;
}

// ---------------------------------------------------------------------------
// Suites

namespace {

ChainConfig shifted_block(std::size_t n, std::size_t start, int bit) {
  RegisterLayout l;
  l.qubit_count = 1;
  l.cu_present = false;
  l.lead_cells = start;
  l.length = n;
  return encode_register(std::vector<int>{bit}, l);
}

StatePredicate register_reads(RegisterLayout layout, std::size_t half_steps,
                              std::vector<BlockRole> qubits, BlockRole cu) {
  return [=](const SparseQuantumState& s) -> std::string {
    for (const auto& [config, amp] : s.terms()) {
      const auto r = decode_register(config, layout, half_steps);
      for (std::size_t k = 0; k < qubits.size(); ++k) {
        if (r.qubits[k].role != qubits[k]) {
          return "qubit " + std::to_string(k) + " reads " + std::string(to_string(r.qubits[k].role));
        }
      }
      if (layout.cu_present && (!r.cu || r.cu->role != cu)) {
        return "cu reads " + std::string(to_string(r.cu ? r.cu->role : BlockRole::Destroyed));
      }
      if (!r.clean()) return std::to_string(r.stray.size()) + " stray excitations";
    }
    return "";
  };
}

std::vector<VerificationReport> encode_suite() {
  std::vector<VerificationReport> out;
  {
    Expectation e;
    e.final_configs = {{parse_config("duududud")}};
    e.step_configs = {{1, parse_config("ddududud")}, {2, parse_config("duududud")}};
    e.pulse_count = 2;
    out.push_back(verify_program(encode_zero_at_edge(),
                                 SparseQuantumState::from_basis(ChainConfig::ground(8)), e));
  }
  {
    Expectation e;
    e.final_configs = {{parse_config("duuud")}};
    out.push_back(verify_program(encode_zero_at_edge(),
                                 SparseQuantumState::from_basis(ChainConfig::ground(5)), e));
  }
  {
    Expectation e;
    e.final_configs = {{parse_config("udduudud")}};
    e.pulse_count = 3;
    out.push_back(verify_program(encode_one_at_edge(),
                                 SparseQuantumState::from_basis(parse_config("duududud")), e));
  }
  {
    Expectation e;
    e.final_configs = {{parse_config("udduudud")}};
    e.pulse_count = 5;
    out.push_back(verify_program(encode_one_from_ground(),
                                 SparseQuantumState::from_basis(ChainConfig::ground(8)), e));
  }
  for (auto& r : out) r.suite = "encode";
  return out;
}

// p followed by its reverse must return every random start unchanged.
VerificationReport random_reversal(const std::string& suite, std::mt19937_64& rng,
                                   bool with_unitaries) {
  std::uniform_int_distribution<std::size_t> len(8, 24);
  std::uniform_int_distribution<std::size_t> plen(1, 20);
  std::uniform_int_distribution<int> cls(0, 9);
  std::uniform_real_distribution<double> angle(0.0, 6.283185307179586);
  std::bernoulli_distribution coin(0.5);
  const auto classes = all_classes(false);

  const std::size_t n = len(rng);
  std::vector<Orientation> spins(n);
  for (auto& s : spins) s = coin(rng) ? Orientation::Up : Orientation::Down;
  const ChainConfig start(spins);

  PulseProgram p{suite + "-random", {}, {}};
  const std::size_t count = plen(rng);
  bool used_unitary = false;
  for (std::size_t i = 0; i < count; ++i) {
    const PulseClass c = classes[static_cast<std::size_t>(cls(rng))];
    if (with_unitaries && !used_unitary && coin(rng)) {
      const double th = angle(rng), ph = angle(rng);
      p.pulses.push_back(Pulse::unitary(
          c, OneCellUnitary::from_ground_column(std::cos(th / 2),
                                                std::polar(std::sin(th / 2), ph))));
      used_unitary = true;
    } else {
      p.pulses.push_back(Pulse::pi(c));
    }
  }
  p.append(reverse_program(p));

  SparseQuantumState s0 = SparseQuantumState::from_basis(start, StateOptions{1u << 14, 1e-14});
  Expectation e;
  e.final_configs = {{start}};
  e.probabilities = {{start, 1.0}};
  e.probability_tol = 1e-10;
  return verify_program(p, s0, e);
}

std::vector<VerificationReport> shift_suite(std::mt19937_64& rng) {
  std::vector<VerificationReport> out;
  {
    Expectation e;
    e.final_configs = {{shifted_block(12, 4, 1)}};
    out.push_back(verify_program(
        swap_shift(2), SparseQuantumState::from_basis(shifted_block(12, 0, 1)), e));
  }
  for (int bit : {0, 1}) {
    for (std::size_t pairs = 1; pairs <= 4; ++pairs) {
      Expectation e;
      e.final_configs = {{shifted_block(24, 2 + 2 * pairs, bit)}};
      auto p = swap_shift(pairs);
      p.name += bit ? "-one" : "-zero";
      out.push_back(verify_program(
          p, SparseQuantumState::from_basis(shifted_block(24, 2, bit)), e));
    }
  }
  out.push_back(random_reversal("shift", rng, false));
  for (auto& r : out) r.suite = "shift";
  return out;
}

std::vector<VerificationReport> cu_suite() {
  std::vector<VerificationReport> out;
  const std::vector<int> bits{1, 0, 1};
  RegisterLayout layout = RegisterLayout::for_gates(3, 24, 4);
  const ChainConfig start = encode_register(bits, layout);
  {
    // Unaltered CU passes every qubit.
    Expectation e;
    e.predicates.push_back(
        {"cu transparent",
         register_reads(layout, 16, {BlockRole::One, BlockRole::Zero, BlockRole::One},
                        BlockRole::ControlUnit)});
    auto p = swap_half_steps(0, 16);
    p.name = "cu-passage";
    out.push_back(verify_program(p, SparseQuantumState::from_basis(start), e));
  }
  {
    Expectation e;
    e.predicates.push_back(
        {"cu altered, zero absorbed",
         register_reads(layout, 24, {BlockRole::One, BlockRole::Ground, BlockRole::One},
                        BlockRole::ControlUnitAltered)});
    out.push_back(verify_program(cu_stimulus(layout, 1, 24),
                                 SparseQuantumState::from_basis(start), e));
  }
  {
    RegisterLayout one = RegisterLayout::for_gates(1, 8, 4);
    one.cu_altered = true;
    Expectation e;
    e.predicates.push_back({"altered cu passes one",
                            register_reads(one, 8, {BlockRole::One}, BlockRole::ControlUnitAltered)});
    auto p = swap_half_steps(0, 8);
    p.name = "altered-passage";
    out.push_back(verify_program(p, SparseQuantumState::from_basis(encode_register(std::vector<int>{1}, one)), e));
  }
  {
    RegisterLayout one = RegisterLayout::for_gates(1, 8, 4);
    Expectation e;
    e.predicates.push_back({"stimulus leaves one alone",
                            register_reads(one, 8, {BlockRole::One}, BlockRole::ControlUnit)});
    out.push_back(verify_program(cu_stimulus(one, 0, 8),
                                 SparseQuantumState::from_basis(encode_register(std::vector<int>{1}, one)), e));
  }
  for (auto& r : out) r.suite = "cu";
  return out;
}

std::vector<VerificationReport> gate1_suite(std::mt19937_64& rng) {
  std::vector<VerificationReport> out;
  const double h = 1.0 / std::sqrt(2.0);
  const auto ux = OneCellUnitary::from_ground_column(0.0, 1.0);
  const auto uh = OneCellUnitary::from_ground_column(h, h);
  {
    Expectation e;
    e.pulse_count = 17;
    RegisterLayout l = RegisterLayout::for_gates(1, 16, 4);
    const ChainConfig one = encode_register(std::vector<int>{1}, l);
    const ChainConfig zero = encode_register(std::vector<int>{0}, l);
    e.final_configs = {{one, zero}};
    e.probabilities = {{one, 0.5}, {zero, 0.5}};
    e.cu_layout = l;
    out.push_back(verify_program(one_qubit_gate(uh), SparseQuantumState::from_basis(one), e));
  }
  const std::size_t k = 2;
  const RegisterLayout l = RegisterLayout::for_gates(k, 4 * k + 12, 4);
  for (int b0 : {0, 1}) {
    for (int b1 : {0, 1}) {
      const std::vector<int> bits{b0, b1};
      for (std::size_t t = 0; t < k; ++t) {
        auto flipped = bits;
        flipped[t] ^= 1;
        Expectation e;
        e.final_configs = {{encode_register(flipped, l)}};
        auto p = gate_on_qubit(l, t, ux);
        p.name += "-x-" + std::to_string(b0) + std::to_string(b1);
        out.push_back(
            verify_program(p, SparseQuantumState::from_basis(encode_register(bits, l)), e));
      }
    }
  }
  out.push_back(random_reversal("gate1", rng, true));
  for (auto& r : out) r.suite = "gate1";
  return out;
}

std::vector<VerificationReport> cnot_suite() {
  std::vector<VerificationReport> out;
  const RegisterLayout l = RegisterLayout::for_gates(2, 24, 4);
  for (int t : {0, 1}) {
    for (int c : {0, 1}) {
      Expectation e;
      e.final_configs = {{encode_register(std::vector<int>{t ^ c, c}, l)}};
      auto p = cnot_adjacent(l, 0, 1);
      p.name += "-" + std::to_string(t) + std::to_string(c);
      out.push_back(verify_program(
          p, SparseQuantumState::from_basis(encode_register(std::vector<int>{t, c}, l)), e));
    }
  }
  {
    Expectation e;
    e.pulse_count = 9;
    const ChainConfig g = ChainConfig::ground(8);
    e.final_configs = {{g}};
    out.push_back(verify_program(cnot_extension(), SparseQuantumState::from_basis(g), e));
  }
  for (auto& r : out) r.suite = "cnot";
  return out;
}

}  // namespace

std::vector<std::string> suite_names() { return {"encode", "shift", "cu", "gate1", "cnot", "all"}; }

std::vector<VerificationReport> run_suite(std::string_view name, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  if (name == "encode") return encode_suite();
  if (name == "shift") return shift_suite(rng);
  if (name == "cu") return cu_suite();
  if (name == "gate1") return gate1_suite(rng);
  if (name == "cnot") return cnot_suite();
  if (name == "all") {
    std::vector<VerificationReport> all;
    for (auto&& part : {encode_suite(), shift_suite(rng), cu_suite(), gate1_suite(rng),
                        cnot_suite()}) {
      all.insert(all.end(), part.begin(), part.end());
    }
    return all;
  }
  throw std::invalid_argument("unknown suite '" + std::string(name) + "'");
}

std::string reports_text(const std::vector<VerificationReport>& reports) {
  std::string out;
  std::size_t passed = 0;
  for (const auto& r : reports) {
    out += r.text();
    passed += r.passed() ? 1 : 0;
  }
  out += std::to_string(passed) + "/" + std::to_string(reports.size()) + " passed\n";
  return out;
}

std::string reports_json(const std::vector<VerificationReport>& reports) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& r : reports) {
    nlohmann::json checks = nlohmann::json::array();
    for (const auto& c : r.checks) {
      checks.push_back({{"name", c.name}, {"passed", c.passed}, {"detail", c.detail}});
    }
    nlohmann::json notes = nlohmann::json::array();
    for (const auto& n : r.notes) notes.push_back({{"kind", n.kind}, {"detail", n.detail}});
    nlohmann::json j{{"suite", r.suite},
                     {"program", r.program},
                     {"passed", r.passed()},
                     {"checks", checks},
                     {"provenance", notes}};
    j["first_failing_step"] =
        r.first_failing_step ? nlohmann::json(*r.first_failing_step) : nlohmann::json(nullptr);
    arr.push_back(j);
  }
  return arr.dump(2) + "\n";
}

}  // namespace afqc

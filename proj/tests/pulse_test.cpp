#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <random>

#include "afqc/programs.hpp"
#include "afqc/pulse.hpp"

using namespace afqc;

TEST(Pulse, Labels) {
  EXPECT_EQ(Pulse::pi(make_class(Sublattice::A, -1)).label(), "pi(A,-1/2)");
  EXPECT_EQ(Pulse::unitary(make_class(Sublattice::A, 2), OneCellUnitary::flip()).label(), "U(A,1)");
  EXPECT_THROW(Pulse::unitary(make_class(Sublattice::A, 0), OneCellUnitary(2.0, 0.0, 0.0, 1.0)),
               std::invalid_argument);
}

TEST(Script, ParsesCommentsAndBlankLines) {
  const auto p = parse_script("# encode\n\nPI A -1/2  # first\nPI B 0\n", "x");
  ASSERT_EQ(p.size(), 2u);
  EXPECT_EQ(p.pulses[0].cls, make_class(Sublattice::A, -1));
  EXPECT_EQ(p.pulses[1].cls, make_class(Sublattice::B, 0));
}

TEST(Script, EmptyProgram) {
  EXPECT_EQ(parse_script("", "empty").size(), 0u);
  EXPECT_EQ(parse_script("# nothing\n", "empty").size(), 0u);
}

TEST(Script, ErrorsCarryLineNumbers) {
  auto line_of = [](const char* text) {
    try {
      parse_script(text, "bad");
    } catch (const ScriptError& e) {
      return e.line();
    }
    return std::size_t{0};
  };
  EXPECT_EQ(line_of("PI A 0\nPI Q 0\n"), 2u);
  EXPECT_EQ(line_of("PI A 0\nPI A 0\n\nPI A 3/2\n"), 4u);
  EXPECT_EQ(line_of("ROT A 0\n"), 1u);
  EXPECT_EQ(line_of("PI A\n"), 1u);
  EXPECT_EQ(line_of("PI A 0 extra\n"), 1u);
  EXPECT_EQ(line_of("U A 1 1 0 1 0\n"), 1u);
  EXPECT_EQ(line_of("U A 1 1 0 zero 0\n"), 1u);
  EXPECT_THROW(parse_script("PI A 0", ""), std::invalid_argument);
}

TEST(Script, BuiltinsRoundTrip) {
  for (const auto& info : builtin_programs()) {
    const auto p = builtin_program(info.name);
    const auto back = parse_script(format_script(p), p.name);
    EXPECT_EQ(back.pulses, p.pulses) << info.name;
  }
}

TEST(Script, RandomUnitaryRoundTripIsBitExact) {
  std::mt19937_64 rng(21);
  std::normal_distribution<double> n;
  PulseProgram p{"r", {}, {}};
  const auto classes = all_classes();
  for (int i = 0; i < 50; ++i) {
    Amplitude a(n(rng), n(rng)), b(n(rng), n(rng));
    const double r = std::sqrt(std::norm(a) + std::norm(b));
    p.append(Pulse::unitary(classes[rng() % classes.size()],
                            OneCellUnitary::from_ground_column(a / r, b / r)));
  }
  EXPECT_EQ(parse_script(format_script(p), "r").pulses, p.pulses);
}

TEST(Script, LoadNamesFromStem) {
  const auto path = std::filesystem::temp_directory_path() / "afqc_pulse_test_prog.pulse";
  std::ofstream(path) << "PI A 0\nPI B 0\n";
  const auto p = load_script(path);
  EXPECT_EQ(p.name, "afqc_pulse_test_prog");
  EXPECT_EQ(p.size(), 2u);
  std::filesystem::remove(path);
}

TEST(Reverse, AdjointsAndOrder) {
  const double s = 1.0 / std::sqrt(2.0);
  const auto u = OneCellUnitary::from_ground_column(s, Amplitude(0, s));
  PulseProgram p{"g", {Pulse::pi(make_class(Sublattice::A, 0)), Pulse::unitary(make_class(Sublattice::B, 0), u)}, {}};
  const auto r = reverse_program(p);
  EXPECT_EQ(r.name, "g-reversed");
  ASSERT_EQ(r.size(), 2u);
  EXPECT_EQ(r.pulses[0].u, u.adjoint());
  EXPECT_EQ(r.pulses[1], p.pulses[0]);
}

TEST(Run, ProgramThenReverseIsIdentity) {
  std::mt19937_64 rng(31);
  const auto classes = all_classes();
  for (int trial = 0; trial < 200; ++trial) {
    std::string raw(4 + rng() % 20, 'd');
    for (auto& ch : raw) ch = rng() & 1 ? 'u' : 'd';
    const auto start = parse_config(raw);
    PulseProgram p{"r", {}, {}};
    for (std::size_t k = rng() % 21; k > 0; --k) p.append(Pulse::pi(classes[rng() % classes.size()]));
    EXPECT_EQ(run_classical(reverse_program(p), run_classical(p, start)), start);
  }
}

TEST(Run, TraceSeesEveryStep) {
  const auto p = encode_zero_at_edge();
  auto s = SparseQuantumState::from_basis(ChainConfig::ground(8));
  std::vector<std::string> seen;
  run_program(p, s, [&](std::size_t k, const Pulse& pulse, const SparseQuantumState& st) {
    seen.push_back(std::to_string(k) + pulse.label() + format_config(st.terms().begin()->first));
  });
  EXPECT_EQ(seen, (std::vector<std::string>{"1pi(A,-1/2)ddududud", "2pi(B,0)duududud"}));
}

TEST(Run, ClassicalRejectsUnitary) {
  PulseProgram p{"u", {Pulse::unitary(make_class(Sublattice::A, 0), OneCellUnitary::flip())}, {}};
  EXPECT_THROW(run_classical(p, ChainConfig::ground(4)), std::invalid_argument);
}

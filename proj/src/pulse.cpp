#include "afqc/pulse.hpp"

#include <algorithm>
#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace afqc {

Pulse Pulse::unitary(PulseClass cls, const OneCellUnitary& u) {
  if (!u.is_unitary()) throw std::invalid_argument("pulse matrix is not unitary");
  return Pulse{Kind::Unitary, cls, u};
}

std::string Pulse::label() const {
  return (kind == Kind::Pi ? "pi(" : "U(") + cls.str() + ")";
}

bool PulseProgram::has_deviation() const {
  return std::any_of(notes.begin(), notes.end(),
                     [](const ProvenanceNote& n) { return n.kind != "literal"; });
}

PulseProgram& PulseProgram::append(const PulseProgram& other) {
  pulses.insert(pulses.end(), other.pulses.begin(), other.pulses.end());
  for (const auto& n : other.notes) {
    if (std::find(notes.begin(), notes.end(), n) == notes.end()) notes.push_back(n);
  }
  return *this;
}

PulseProgram& PulseProgram::append(const Pulse& p) {
  pulses.push_back(p);
  return *this;
}

PulseProgram make_pi_program(std::string name, const std::vector<PulseClass>& classes) {
  PulseProgram p{std::move(name), {}, {}};
  p.pulses.reserve(classes.size());
  for (auto c : classes) p.pulses.push_back(Pulse::pi(c));
  return p;
}

// ---------------------------------------------------------------------------
// Script text

namespace {

std::vector<std::string_view> split_ws(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    std::size_t j = i;
    while (j < line.size() && line[j] != ' ' && line[j] != '\t' && line[j] != '\r') ++j;
    if (j > i) out.push_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

double parse_real(std::string_view tok, std::size_t lineno) {
  std::string s(tok);
  char* end = nullptr;
  errno = 0;
  const double v = std::strtod(s.c_str(), &end);
  if (end != s.c_str() + s.size() || errno == ERANGE || !std::isfinite(v)) {
    throw ScriptError(lineno, "invalid number '" + s + "'");
  }
  return v;
}

std::string real_str(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

PulseProgram parse_script(std::string_view text, std::string name) {
  if (name.empty()) throw std::invalid_argument("program name must not be empty");
  PulseProgram program{std::move(name), {}, {}};
  std::size_t lineno = 0;
  while (!text.empty()) {
    ++lineno;
    const auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);

    const auto tok = split_ws(line);
    if (tok.empty()) continue;

    PulseClass cls;
    if (tok.size() < 3) throw ScriptError(lineno, "expected '<PI|U> <sublattice> <m>'");
    try {
      cls = PulseClass{parse_sublattice(tok[1]), NeighborSum::parse(tok[2])};
    } catch (const ConfigError& e) {
      throw ScriptError(lineno, e.what());
    }
    if (tok[0] == "PI") {
      if (tok.size() != 3) throw ScriptError(lineno, "PI takes exactly two operands");
      program.pulses.push_back(Pulse::pi(cls));
    } else if (tok[0] == "U") {
      if (tok.size() != 7) throw ScriptError(lineno, "U takes <class> <re_a> <im_a> <re_b> <im_b>");
      const Amplitude a{parse_real(tok[3], lineno), parse_real(tok[4], lineno)};
      const Amplitude b{parse_real(tok[5], lineno), parse_real(tok[6], lineno)};
      try {
        program.pulses.push_back(Pulse::unitary(cls, OneCellUnitary::from_ground_column(a, b)));
      } catch (const std::invalid_argument& e) {
        throw ScriptError(lineno, e.what());
      }
    } else {
      throw ScriptError(lineno, "unknown pulse kind '" + std::string(tok[0]) + "'");
    }
  }
  return program;
}

PulseProgram load_script(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_script(ss.str(), path.stem().string());
}

std::string format_script(const PulseProgram& program) {
  std::string out = "# " + program.name + "\n";
  for (const auto& n : program.notes) out += "# " + n.kind + ": " + n.detail + "\n";
  for (const auto& p : program.pulses) {
    const std::string cls = std::string(1, to_char(p.cls.target)) + " " + p.cls.m.str();
    if (p.kind == Pulse::Kind::Pi) {
      out += "PI " + cls + "\n";
      continue;
    }
    if (!p.u.is_column_completion()) {
      throw std::invalid_argument("unitary on " + p.cls.str() +
                                  " has no ground-column script form");
    }
    const Amplitude a = p.u.ground_to_ground();
    const Amplitude b = p.u.ground_to_excited();
    out += "U " + cls + " " + real_str(a.real()) + " " + real_str(a.imag()) + " " +
           real_str(b.real()) + " " + real_str(b.imag()) + "\n";
  }
  return out;
}

PulseProgram reverse_program(const PulseProgram& program) {
  PulseProgram out{program.name + "-reversed", {}, program.notes};
  out.pulses.reserve(program.size());
  for (auto it = program.pulses.rbegin(); it != program.pulses.rend(); ++it) {
    Pulse p = *it;
    if (p.kind == Pulse::Kind::Unitary) p.u = p.u.adjoint();
    out.pulses.push_back(p);
  }
  return out;
}

void run_program(const PulseProgram& program, SparseQuantumState& state, const TraceFn& trace) {
  std::size_t step = 0;
  for (const auto& p : program.pulses) {
    if (p.kind == Pulse::Kind::Pi) {
      state.apply_pi(p.cls);
    } else {
      state.apply_unitary(p.cls, p.u);
    }
    ++step;
    if (trace) trace(step, p, state);
  }
}

ChainConfig run_classical(const PulseProgram& program, ChainConfig config) {
  const ChainGeometry geometry(config.size(), config.dopant());
  std::vector<ChainConfig::Word> up(config.words().begin(), config.words().end());
  for (const auto& p : program.pulses) {
    if (p.kind != Pulse::Kind::Pi) {
      throw std::invalid_argument("classical run cannot apply unitary " + p.label());
    }
    geometry.apply_pi(up, p.cls);
  }
  return ChainConfig(config.size(), std::move(up), config.dopant());
}

ChainConfig run_classes(const std::vector<PulseClass>& classes, ChainConfig config) {
  const ChainGeometry geometry(config.size(), config.dopant());
  std::vector<ChainConfig::Word> up(config.words().begin(), config.words().end());
  for (auto c : classes) geometry.apply_pi(up, c);
  return ChainConfig(config.size(), std::move(up), config.dopant());
}

}  // namespace afqc

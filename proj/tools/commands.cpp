#include "commands.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <stdexcept>

#include <CLI11.hpp>

#include "afqc/physics.hpp"
#include "afqc/programs.hpp"
#include "afqc/pulse.hpp"
#include "afqc/register.hpp"
#include "afqc/search.hpp"
#include "afqc/verify.hpp"

#ifndef AFQC_MATERIALS_FILE
#define AFQC_MATERIALS_FILE "data/materials.json"
#endif

namespace afqc::cli {

namespace {

namespace fs = std::filesystem;

// Raised for bad option combinations that CLI11 cannot express.
class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class NotFound : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Globals {
  bool arrows = false;
  std::string trace = "none";
  std::uint64_t seed = 1;
  std::size_t max_terms = StateOptions{}.max_terms;
};

std::string num(double v, int digits = 15) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, v);
  return buf;
}

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw NotFound("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text(const std::string& path, const std::string& text, std::ostream& out) {
  if (path == "-") {
    out << text;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot write " + path);
  f << text;
}

std::string render(const SparseQuantumState& s, const Globals& g) {
  const ConfigStyle style = g.arrows ? ConfigStyle::Arrows : ConfigStyle::Raw;
  if (s.size() == 1 && g.trace != "full") return format_config(s.terms().begin()->first, style);
  std::string out;
  for (const auto& [c, a] : s.terms()) {
    if (!out.empty()) out += " + ";
    if (g.trace == "full") {
      out += "(" + num(a.real(), 12) + "," + num(a.imag(), 12) + ")";
    } else {
      out += num(std::norm(a), 12) + ":";
    }
    out += format_config(c, style);
  }
  return out;
}

PulseProgram resolve_program(const std::string& ref) {
  if (fs::is_regular_file(ref)) return load_script(ref);
  try {
    return builtin_program(ref);
  } catch (const std::out_of_range&) {
    throw UsageError("'" + ref + "' is neither a script file nor a built-in program");
  }
}

std::vector<int> parse_bits(const std::string& text) {
  std::vector<int> bits;
  for (char ch : text) {
    if (ch != '0' && ch != '1') throw UsageError("register bits must be 0 or 1: '" + text + "'");
    bits.push_back(ch - '0');
  }
  return bits;
}

struct LayoutOpts {
  bool no_cu = false;
  bool altered = false;
  std::size_t lead = 0;
  std::size_t length = 0;
  std::size_t cu_spacer = 3;

  void add(CLI::App* app) {
    app->add_flag("--no-cu", no_cu, "Omit the control unit");
    app->add_flag("--altered-cu", altered, "Place an altered control unit");
    app->add_option("--lead", lead, "Ground cells before the first qubit");
    app->add_option("--length", length, "Chain length (0: minimum)");
    app->add_option("--cu-spacer", cu_spacer, "Ground cells between last qubit and CU (odd)");
  }

  RegisterLayout layout(std::size_t qubits) const {
    RegisterLayout l;
    l.qubit_count = qubits;
    l.cu_present = !no_cu;
    l.cu_altered = altered;
    l.lead_cells = lead;
    l.length = length;
    l.cu_spacer = cu_spacer;
    l.validate();
    return l;
  }
};

// ---- run ----

struct RunOpts {
  std::string program;
  std::string config;
  std::string config_file;
  std::string reg;
  LayoutOpts layout;
  std::string emit_script;
  std::string dump;
  bool list = false;
};

int cmd_run(const RunOpts& o, const Globals& g, std::ostream& out) {
  if (o.list) {
    for (const auto& b : builtin_programs()) out << b.name << "\t" << b.description << "\n";
    return kOk;
  }
  if (o.program.empty()) throw UsageError("run: a program name or script path is required");
  const int sources = !o.config.empty() + !o.config_file.empty() + !o.reg.empty();
  if (sources != 1) throw UsageError("run: give exactly one of --config, --config-file, --register");

  const PulseProgram program = resolve_program(o.program);
  if (!o.emit_script.empty()) write_text(o.emit_script, format_script(program), out);

  StateOptions so;
  so.max_terms = g.max_terms;
  SparseQuantumState state = [&] {
    if (!o.config.empty()) return SparseQuantumState::from_basis(parse_config(o.config), so);
    if (!o.reg.empty()) {
      const auto bits = parse_bits(o.reg);
      return SparseQuantumState::from_basis(encode_register(bits, o.layout.layout(bits.size())),
                                            so);
    }
    std::istringstream in(read_file(o.config_file));
    std::string first;
    in >> first;
    // A one-token file is a raw config; anything else is a state dump.
    std::string rest;
    if (!(in >> rest)) return SparseQuantumState::from_basis(parse_config(first), so);
    std::istringstream again(read_file(o.config_file));
    return SparseQuantumState::parse_dump(again, so);
  }();

  TraceFn trace;
  if (g.trace != "none") {
    trace = [&](std::size_t step, const Pulse& p, const SparseQuantumState& s) {
      out << "step " << step << " " << p.label() << " " << render(s, g) << "\n";
    };
  }
  run_program(program, state, trace);
  out << "final " << render(state, g) << "\n";

  if (!o.dump.empty()) {
    std::ostringstream ss;
    state.dump(ss);
    write_text(o.dump, ss.str(), out);
  }
  return kOk;
}

// ---- verify ----

struct VerifyOpts {
  std::string suite = "all";
  bool json = false;
};

int cmd_verify(const VerifyOpts& o, const Globals& g, std::ostream& out) {
  const auto names = suite_names();
  if (std::find(names.begin(), names.end(), o.suite) == names.end()) {
    throw UsageError("unknown suite '" + o.suite + "'");
  }
  const auto reports = run_suite(o.suite, g.seed);
  out << (o.json ? reports_json(reports) + "\n" : reports_text(reports));
  for (const auto& r : reports) {
    if (!r.passed()) return kNotFound;
  }
  return kOk;
}

// ---- search ----

struct SearchOpts {
  std::string start;
  std::string goal;
  std::size_t max_len = 6;
  std::string out;
  std::string alphabet = "all";
  std::size_t node_cap = SearchOptions{}.node_cap;
};

int cmd_search(const SearchOpts& o, std::ostream& out, std::ostream& err) {
  const ChainConfig start = parse_config(o.start);
  const ChainConfig goal = parse_config(o.goal);
  if (start.size() != goal.size() || start.dopant() != goal.dopant()) {
    throw UsageError("search: start and goal must share length and dopant");
  }
  std::vector<PulseClass> allowed;
  if (o.alphabet == "standard") allowed = standard_alphabet();
  SearchOptions so;
  so.node_cap = o.node_cap;
  auto found = find_sequence(start, goal, o.max_len, allowed, so);
  if (!found) {
    err << "no sequence of length <= " << o.max_len << " found\n";
    return kNotFound;
  }
  write_text(o.out.empty() ? "-" : o.out, format_script(*found), out);
  return kOk;
}

// ---- physics ----

struct PhysicsOpts {
  std::string material;
  std::string quantity;
  std::optional<double> T;
  std::optional<double> T_from;
  std::optional<double> T_to;
  std::size_t points = 10;
  double B = 3.5;
  std::optional<double> eps0;
  std::optional<double> eps0_over_J;
  double psi = 0.0;
  double N = 1.0;
  std::string site = "A";
  std::string m = "0";
  std::string materials = AFQC_MATERIALS_FILE;
};

std::vector<double> temperatures(const PhysicsOpts& o) {
  if (o.T && (o.T_from || o.T_to)) throw UsageError("physics: --T and a sweep are exclusive");
  if (o.T) return {*o.T};
  if (!o.T_from || !o.T_to) throw UsageError("physics: this quantity needs --T or --T-from/--T-to");
  if (!(*o.T_from > 0.0) || !(*o.T_to > 0.0)) throw UsageError("physics: temperatures must be > 0");
  if (o.points < 1) throw UsageError("physics: --points must be >= 1");
  std::vector<double> out;
  const double lo = std::log(*o.T_from), hi = std::log(*o.T_to);
  for (std::size_t i = 0; i < o.points; ++i) {
    const double f = o.points == 1 ? 0.0 : static_cast<double>(i) / (o.points - 1);
    out.push_back(std::exp(lo + f * (hi - lo)));
  }
  return out;
}

int cmd_physics(const PhysicsOpts& o, std::ostream& out, std::ostream& err) {
  using namespace physics;
  const auto all = load_materials(o.materials);
  MaterialParams mat;
  try {
    mat = find_material(all, o.material);
  } catch (const UnknownMaterial& e) {
    throw NotFound(e.what());
  }
  SpinWaveModel model{mat, std::nullopt, o.psi};
  if (o.eps0 && o.eps0_over_J) throw UsageError("physics: --eps0 and --eps0-over-J are exclusive");
  if (o.eps0) model.epsilon0_override = *o.eps0;
  if (o.eps0_over_J) model.epsilon0_override = *o.eps0_over_J * mat.J_ex;

  const std::string& q = o.quantity;
  if (q == "bmin") {
    out << "bmin_T\t" << num(minimum_ordering_field(mat)) << "\n";
  } else if (q == "tns" || q == "tni") {
    const auto t = critical_temperatures(mat);
    out << q << "_K\t" << num(q == "tns" ? t.T_NS : t.T_NI) << "\n";
  } else if (q == "freq") {
    out << "class\tfreq_Hz\n";
    for (const auto& cls : all_classes(false)) {
      out << cls.str() << "\t" << num(frequency_of_class(cls, mat, o.B)) << "\n";
    }
  } else if (q == "p" || q == "p-asym") {
    const auto method = q == "p" ? FluctuationMethod::Integral : FluctuationMethod::Asymptotic;
    out << "T_K\t" << q << "\n";
    for (double T : temperatures(o)) out << num(T) << "\t" << num(thermal_fluctuation(model, T, method)) << "\n";
  } else if (q == "magnetization") {
    out << "T_K\tM_J_per_T\n";
    for (double T : temperatures(o)) {
      out << num(T) << "\t";
      try {
        out << num(sublattice_magnetization(model, T, o.N)) << "\n";
      } catch (const OrderedPhaseViolation& e) {
        out << "NA\n";
        err << "T=" << num(T) << ": " << e.what() << "\n";
      }
    }
  } else if (q == "t2") {
    out << "T_K\trate_per_s\tT2_s\n";
    for (double T : temperatures(o)) {
      const auto d = t2_decoherence(model, T);
      out << num(T) << "\t" << num(d.rate) << "\t" << (d.T2 ? num(*d.T2) : "inf") << "\n";
    }
  } else if (q == "polarization") {
    const Sublattice s = parse_sublattice(o.site);
    const NeighborSum m = NeighborSum::parse(o.m);
    out << "T_K\tratio\texcited_fraction\n";
    for (double T : temperatures(o)) {
      const auto p = polarization_check(mat, o.B, T, s, m);
      out << num(T) << "\t" << num(p.ratio) << "\t" << num(p.excited_fraction) << "\n";
    }
  } else {
    throw UsageError("unknown quantity '" + q + "'");
  }
  return kOk;
}

// ---- encode ----

struct EncodeOpts {
  std::string bits;
  std::string decode;
  std::size_t qubits = 0;
  std::size_t half_steps = 0;
  LayoutOpts layout;
};

int cmd_encode(const EncodeOpts& o, const Globals& g, std::ostream& out) {
  const ConfigStyle style = g.arrows ? ConfigStyle::Arrows : ConfigStyle::Raw;
  if (o.decode.empty()) {
    if (o.bits.empty()) throw UsageError("encode: give register bits or --decode");
    const auto bits = parse_bits(o.bits);
    out << format_config(encode_register(bits, o.layout.layout(bits.size())), style) << "\n";
    return kOk;
  }
  if (!o.bits.empty()) throw UsageError("encode: bits and --decode are exclusive");
  const ChainConfig config = parse_config(o.decode);
  RegisterLayout layout = o.layout.layout(o.qubits);
  if (layout.length == 0) layout.length = config.size();
  const auto reading = decode_register(config, layout, o.half_steps);
  for (std::size_t k = 0; k < reading.qubits.size(); ++k) {
    out << "qubit " << k << " " << to_string(reading.qubits[k].role) << " @"
        << reading.qubits[k].start << "\n";
  }
  if (reading.cu) out << "cu " << to_string(reading.cu->role) << " @" << reading.cu->start << "\n";
  if (!reading.clean()) {
    out << "stray";
    for (auto i : reading.stray) out << " " << i;
    out << "\n";
  }
  std::string bits;
  try {
    for (int b : reading.bits()) bits += static_cast<char>('0' + b);
  } catch (const DestroyedQubit&) {
    out << "bits ?\n";
    return kNotFound;
  }
  out << "bits " << bits << "\n";
  return reading.clean() ? kOk : kNotFound;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Antiferromagnetic chain quantum computer simulator", "afqc"};
  app.require_subcommand(1);
  Globals g;
  app.add_flag("--arrows", g.arrows, "Render configurations with arrows");
  app.add_option("--trace", g.trace, "Per-step trace")
      ->check(CLI::IsMember({"none", "steps", "full"}));
  app.add_option("--seed", g.seed, "Seed for randomised checks");
  app.add_option("--max-terms", g.max_terms, "Superposition term cap")->check(CLI::PositiveNumber);

  RunOpts run;
  auto* run_cmd = app.add_subcommand("run", "Run a pulse program on a chain");
  run_cmd->fallthrough();
  run_cmd->add_option("program", run.program, "Built-in name or script path");
  run_cmd->add_option("--config", run.config, "Initial raw configuration");
  run_cmd->add_option("--config-file", run.config_file, "File with a raw config or state dump");
  run_cmd->add_option("--register", run.reg, "Initial register bits, e.g. 101");
  run.layout.add(run_cmd);
  run_cmd->add_option("--emit-script", run.emit_script, "Write the program as a script (- for stdout)");
  run_cmd->add_option("--dump", run.dump, "Write the final state dump (- for stdout)");
  run_cmd->add_flag("--list", run.list, "List built-in programs");

  VerifyOpts verify;
  auto* verify_cmd = app.add_subcommand("verify", "Run a verification suite");
  verify_cmd->fallthrough();
  verify_cmd->add_option("suite", verify.suite, "encode, shift, cu, gate1, cnot or all");
  verify_cmd->add_flag("--json", verify.json, "JSON report");

  SearchOpts search;
  auto* search_cmd = app.add_subcommand("search", "Find a shortest pi-pulse program");
  search_cmd->fallthrough();
  search_cmd->add_option("--start", search.start, "Start configuration")->required();
  search_cmd->add_option("--goal", search.goal, "Goal configuration")->required();
  search_cmd->add_option("--max-len", search.max_len, "Longest program considered");
  search_cmd->add_option("--out", search.out, "Script output path");
  search_cmd->add_option("--alphabet", search.alphabet, "all or standard")
      ->check(CLI::IsMember({"all", "standard"}));
  search_cmd->add_option("--node-cap", search.node_cap, "Visited-state limit");

  PhysicsOpts phys;
  auto* phys_cmd = app.add_subcommand("physics", "Physical estimates for a material preset");
  phys_cmd->fallthrough();
  phys_cmd->add_option("material", phys.material, "Preset name")->required();
  phys_cmd->add_option("quantity", phys.quantity,
                       "bmin, tns, tni, freq, p, p-asym, magnetization, t2, polarization")
      ->required();
  phys_cmd->add_option("--T", phys.T, "Temperature, K");
  phys_cmd->add_option("--T-from", phys.T_from, "Sweep start, K");
  phys_cmd->add_option("--T-to", phys.T_to, "Sweep end, K");
  phys_cmd->add_option("--points", phys.points, "Logarithmic sweep points");
  phys_cmd->add_option("--B", phys.B, "Field, T");
  phys_cmd->add_option("--eps0", phys.eps0, "Spin-wave gap, J");
  phys_cmd->add_option("--eps0-over-J", phys.eps0_over_J, "Spin-wave gap in units of J_ex");
  phys_cmd->add_option("--psi", phys.psi, "Zero-point reduction");
  phys_cmd->add_option("--N", phys.N, "Spins per sublattice");
  phys_cmd->add_option("--site", phys.site, "Sublattice for polarization");
  phys_cmd->add_option("--m", phys.m, "Neighbour sum for polarization");
  phys_cmd->add_option("--materials", phys.materials, "Material preset file");

  EncodeOpts enc;
  auto* enc_cmd = app.add_subcommand("encode", "Encode register bits or decode a configuration");
  enc_cmd->fallthrough();
  enc_cmd->add_option("bits", enc.bits, "Register bits, e.g. 101");
  enc_cmd->add_option("--decode", enc.decode, "Raw configuration to decode");
  enc_cmd->add_option("--qubits", enc.qubits, "Qubit count when decoding");
  enc_cmd->add_option("--half-steps", enc.half_steps, "SWAP half-steps already applied");
  enc.layout.add(enc_cmd);

  std::vector<std::string> argv_store{"afqc"};
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<const char*> argv;
  for (const auto& a : argv_store) argv.push_back(a.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*run_cmd) return cmd_run(run, g, out);
    if (*verify_cmd) return cmd_verify(verify, g, out);
    if (*search_cmd) return cmd_search(search, out, err);
    if (*phys_cmd) return cmd_physics(phys, out, err);
    if (*enc_cmd) return cmd_encode(enc, g, out);
  } catch (const NotFound& e) {
    err << "error: " << e.what() << "\n";
    return kNotFound;
  } catch (const ScriptError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const TermCapExceeded& e) {
    err << "error: " << e.what() << "\n";
    return kResource;
  } catch (const SearchSpaceExceeded& e) {
    err << "error: " << e.what() << "\n";
    return kResource;
  } catch (const physics::QuadratureError& e) {
    err << "error: " << e.what() << "\n";
    return kResource;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kResource;
  }
  return kUsage;
}

}  // namespace afqc::cli

#pragma once

#include <complex>
#include <cstddef>
#include <iosfwd>
#include <map>
#include <stdexcept>
#include <utility>

#include "afqc/chain.hpp"

namespace afqc {

using Amplitude = std::complex<double>;

/// 2x2 matrix in the (ground, excited) basis of one cell. Column j is the
/// image of basis state j.
class OneCellUnitary {
 public:
  OneCellUnitary(Amplitude g2g, Amplitude e2g, Amplitude g2e, Amplitude e2e);

  static OneCellUnitary identity();
  /// Exact off-diagonal flip, no phase.
  static OneCellUnitary flip();
  /// Completes the ground column (a, b) to [[a, -conj(b)], [b, conj(a)]].
  /// Throws std::invalid_argument unless |a|^2 + |b|^2 = 1 within 1e-12.
  static OneCellUnitary from_ground_column(Amplitude a, Amplitude b);

  /// Row r (output), column c (input); 0 = ground, 1 = excited.
  Amplitude at(int r, int c) const { return m_[r][c]; }
  Amplitude ground_to_ground() const { return m_[0][0]; }
  Amplitude ground_to_excited() const { return m_[1][0]; }

  OneCellUnitary adjoint() const;
  bool is_unitary(double tol = 1e-12) const;
  /// True when the matrix has the from_ground_column() shape.
  bool is_column_completion(double tol = 1e-15) const;

  bool operator==(const OneCellUnitary&) const = default;

 private:
  Amplitude m_[2][2];
};

struct StateOptions {
  std::size_t max_terms = 4096;
  double cull = 1e-14;
};

class TermCapExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class StateError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Superposition over chain configurations that share length and dopant.
class SparseQuantumState {
 public:
  using Terms = std::map<ChainConfig, Amplitude>;

  static SparseQuantumState from_basis(const ChainConfig& config, StateOptions options = {});
  /// Build from explicit terms (merged, culled). Throws StateError on mixed
  /// lengths or an empty term list.
  static SparseQuantumState from_terms(const std::vector<std::pair<ChainConfig, Amplitude>>& terms,
                                       StateOptions options = {});

  const Terms& terms() const noexcept { return terms_; }
  std::size_t size() const noexcept { return terms_.size(); }
  std::size_t site_count() const noexcept { return sites_; }
  std::optional<std::size_t> dopant() const noexcept { return dopant_; }
  const StateOptions& options() const noexcept { return options_; }

  /// Permutes basis terms; amplitudes untouched.
  void apply_pi(PulseClass cls);
  /// Applies `u` on every site matching `cls`, independently per term.
  /// Throws TermCapExceeded when the result would exceed max_terms.
  void apply_unitary(PulseClass cls, const OneCellUnitary& u);

  double norm_squared() const;
  std::map<ChainConfig, double> probabilities() const;
  Amplitude amplitude(const ChainConfig& config) const;

  /// `<raw> <re> <im>` per line, config order, 17 significant digits.
  void dump(std::ostream& out) const;
  static SparseQuantumState parse_dump(std::istream& in, StateOptions options = {});

 private:
  SparseQuantumState(std::size_t sites, std::optional<std::size_t> dopant, StateOptions options)
      : sites_(sites), dopant_(dopant), options_(options) {}
  void cull();

  std::size_t sites_ = 0;
  std::optional<std::size_t> dopant_;
  StateOptions options_;
  Terms terms_;
};

/// sum conj(a1) * a2 over shared configs. Throws StateError on length mismatch.
Amplitude overlap(const SparseQuantumState& s1, const SparseQuantumState& s2);

}  // namespace afqc

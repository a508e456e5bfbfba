#include "afqc/quantum_state.hpp"

#include <bit>
#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

namespace afqc {

using Word = ChainConfig::Word;

OneCellUnitary::OneCellUnitary(Amplitude g2g, Amplitude e2g, Amplitude g2e, Amplitude e2e)
    : m_{{g2g, e2g}, {g2e, e2e}} {}

OneCellUnitary OneCellUnitary::identity() { return {1.0, 0.0, 0.0, 1.0}; }

OneCellUnitary OneCellUnitary::flip() { return {0.0, 1.0, 1.0, 0.0}; }

OneCellUnitary OneCellUnitary::from_ground_column(Amplitude a, Amplitude b) {
  const double n = std::norm(a) + std::norm(b);
  if (!std::isfinite(n) || std::abs(n - 1.0) > 1e-12) {
    throw std::invalid_argument("ground column is not normalised: |a|^2+|b|^2 = " +
                                std::to_string(n));
  }
  return {a, -std::conj(b), b, std::conj(a)};
}

OneCellUnitary OneCellUnitary::adjoint() const {
  return {std::conj(m_[0][0]), std::conj(m_[1][0]), std::conj(m_[0][1]), std::conj(m_[1][1])};
}

bool OneCellUnitary::is_unitary(double tol) const {
  // U U^dagger = I
  for (int r = 0; r < 2; ++r) {
    for (int c = 0; c < 2; ++c) {
      Amplitude s = m_[r][0] * std::conj(m_[c][0]) + m_[r][1] * std::conj(m_[c][1]);
      const Amplitude want = r == c ? 1.0 : 0.0;
      if (std::abs(s - want) > tol) return false;
    }
  }
  return true;
}

bool OneCellUnitary::is_column_completion(double tol) const {
  return std::abs(m_[0][1] + std::conj(m_[1][0])) <= tol &&
         std::abs(m_[1][1] - std::conj(m_[0][0])) <= tol;
}

// ---------------------------------------------------------------------------

SparseQuantumState SparseQuantumState::from_basis(const ChainConfig& config,
                                                  StateOptions options) {
  SparseQuantumState s(config.size(), config.dopant(), options);
  s.terms_.emplace(config, Amplitude{1.0, 0.0});
  return s;
}

SparseQuantumState SparseQuantumState::from_terms(
    const std::vector<std::pair<ChainConfig, Amplitude>>& terms, StateOptions options) {
  if (terms.empty()) throw StateError("state needs at least one term");
  const auto& first = terms.front().first;
  SparseQuantumState s(first.size(), first.dopant(), options);
  for (const auto& [config, amp] : terms) {
    if (config.size() != s.sites_ || config.dopant() != s.dopant_) {
      throw StateError("all terms must share chain length and dopant");
    }
    if (!std::isfinite(amp.real()) || !std::isfinite(amp.imag())) {
      throw StateError("non-finite amplitude");
    }
    s.terms_[config] += amp;
  }
  s.cull();
  if (s.terms_.size() > options.max_terms) throw TermCapExceeded("term cap exceeded");
  return s;
}

void SparseQuantumState::cull() {
  std::erase_if(terms_, [&](const auto& kv) { return std::abs(kv.second) < options_.cull; });
}

void SparseQuantumState::apply_pi(PulseClass cls) {
  const ChainGeometry geometry(sites_, dopant_);
  Terms next;
  std::vector<Word> up(geometry.words());
  for (const auto& [config, amp] : terms_) {
    up.assign(config.words().begin(), config.words().end());
    geometry.apply_pi(up, cls);
    next.emplace(ChainConfig(sites_, up, dopant_), amp);
  }
  terms_ = std::move(next);
}

void SparseQuantumState::apply_unitary(PulseClass cls, const OneCellUnitary& u) {
  const ChainGeometry geometry(sites_, dopant_);
  const std::size_t nwords = geometry.words();
  std::vector<Word> mask(nwords);
  Terms next;

  struct Branch {
    std::vector<Word> up;
    Amplitude amp;
  };
  std::vector<Branch> branches, grown;

  for (const auto& [config, amp] : terms_) {
    geometry.match(config.words(), cls, mask);
    branches.clear();
    branches.push_back({std::vector<Word>(config.words().begin(), config.words().end()), amp});

    for (std::size_t w = 0; w < nwords; ++w) {
      for (Word bits = mask[w]; bits != 0; bits &= bits - 1) {
        const int j = std::countr_zero(bits);
        const std::size_t site = w * ChainConfig::kWordBits + static_cast<std::size_t>(j);
        const int g = config.excited(site) ? 1 : 0;
        const Amplitude stay = u.at(g, g);
        const Amplitude move = u.at(1 - g, g);
        grown.clear();
        for (auto& b : branches) {
          if (move != 0.0) {
            Branch flipped{b.up, b.amp * move};
            flipped.up[w] ^= Word{1} << j;
            grown.push_back(std::move(flipped));
          }
          if (stay != 0.0) grown.push_back({std::move(b.up), b.amp * stay});
        }
        if (grown.size() > options_.max_terms) {
          throw TermCapExceeded("unitary on " + cls.str() + " branches beyond " +
                                std::to_string(options_.max_terms) + " terms");
        }
        std::swap(branches, grown);
      }
    }
    for (auto& b : branches) next[ChainConfig(sites_, std::move(b.up), dopant_)] += b.amp;
    if (next.size() > options_.max_terms) {
      throw TermCapExceeded("state exceeds " + std::to_string(options_.max_terms) + " terms");
    }
  }
  terms_ = std::move(next);
  cull();
}

double SparseQuantumState::norm_squared() const {
  double s = 0.0;
  for (const auto& kv : terms_) s += std::norm(kv.second);
  return s;
}

std::map<ChainConfig, double> SparseQuantumState::probabilities() const {
  std::map<ChainConfig, double> out;
  for (const auto& [config, amp] : terms_) out.emplace(config, std::norm(amp));
  return out;
}

Amplitude SparseQuantumState::amplitude(const ChainConfig& config) const {
  auto it = terms_.find(config);
  return it == terms_.end() ? Amplitude{} : it->second;
}

void SparseQuantumState::dump(std::ostream& out) const {
  char buf[96];
  for (const auto& [config, amp] : terms_) {
    std::snprintf(buf, sizeof buf, " %.17g %.17g\n", amp.real(), amp.imag());
    out << format_config(config) << buf;
  }
}

SparseQuantumState SparseQuantumState::parse_dump(std::istream& in, StateOptions options) {
  std::vector<std::pair<ChainConfig, Amplitude>> terms;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line.front() == '#') continue;
    std::istringstream ls(line);
    std::string raw;
    double re = 0.0, im = 0.0;
    if (!(ls >> raw >> re >> im)) {
      throw StateError("line " + std::to_string(lineno) + ": expected '<config> <re> <im>'");
    }
    std::string rest;
    if (ls >> rest) throw StateError("line " + std::to_string(lineno) + ": trailing text");
    try {
      terms.emplace_back(parse_config(raw), Amplitude{re, im});
    } catch (const ConfigError& e) {
      throw StateError("line " + std::to_string(lineno) + ": " + e.what());
    }
  }
  return from_terms(terms, options);
}

Amplitude overlap(const SparseQuantumState& s1, const SparseQuantumState& s2) {
  if (s1.site_count() != s2.site_count()) throw StateError("overlap: chain lengths differ");
  Amplitude sum{};
  auto a = s1.terms().begin();
  auto b = s2.terms().begin();
  while (a != s1.terms().end() && b != s2.terms().end()) {
    if (a->first < b->first) {
      ++a;
    } else if (b->first < a->first) {
      ++b;
    } else {
      sum += std::conj(a->second) * b->second;
      ++a;
      ++b;
    }
  }
  return sum;
}

}  // namespace afqc

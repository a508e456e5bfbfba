#pragma once

// Reference implementations that share no code with the library.

#include <cmath>
#include <cstddef>
#include <functional>
#include <numbers>
#include <optional>
#include <string>
#include <utility>

namespace oracle {

// Site letter: 'A' (even), 'B' (odd) or 'D' (the dopant index).
inline char site_kind(std::size_t i, std::optional<std::size_t> dopant) {
  if (dopant && *dopant == i) return 'D';
  return i % 2 == 0 ? 'A' : 'B';
}

// Class of site i as (letter, doubled neighbour sum), read straight off the string.
inline std::pair<char, int> classify(const std::string& raw, std::size_t i,
                                     std::optional<std::size_t> dopant = std::nullopt) {
  int twice = 0;
  if (i > 0) twice += raw[i - 1] == 'u' ? 1 : -1;
  if (i + 1 < raw.size()) twice += raw[i + 1] == 'u' ? 1 : -1;
  return {site_kind(i, dopant), twice};
}

inline std::string apply_pi(const std::string& raw, char kind, int twice,
                            std::optional<std::size_t> dopant = std::nullopt) {
  std::string out = raw;
  for (std::size_t i = 0; i < raw.size(); ++i) {
    if (classify(raw, i, dopant) == std::make_pair(kind, twice)) out[i] = raw[i] == 'u' ? 'd' : 'u';
  }
  return out;
}

// Composite Simpson rule on n (even) panels.
inline double simpson(const std::function<double(double)>& f, double lo, double hi,
                      std::size_t n) {
  const double h = (hi - lo) / static_cast<double>(n);
  double s = f(lo) + f(hi);
  for (std::size_t k = 1; k < n; ++k) s += (k % 2 ? 4.0 : 2.0) * f(lo + h * k);
  return s * h / 3.0;
}

// Bose-weighted spin-wave occupation in units where J = 1: gap e0, temperature t.
inline double fluctuation(int d, double e0, double t, std::size_t panels = 200000) {
  const double pi = std::numbers::pi;
  const double surface = d == 1 ? 2.0 : d == 2 ? 2.0 * pi : 4.0 * pi;
  auto f = [&](double q) {
    const double e = std::sqrt(e0 * e0 + q * q);
    return surface * std::pow(q, d - 1) / std::expm1(e / t);
  };
  return simpson(f, 0.0, pi, panels) / std::pow(2.0 * pi, d);
}

}  // namespace oracle

#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace afqc {

/// Physical nuclear spin direction along the applied field.
enum class Orientation : std::uint8_t { Down = 0, Up = 1 };

constexpr Orientation operator!(Orientation o) noexcept {
  return o == Orientation::Up ? Orientation::Down : Orientation::Up;
}

/// Site family. D marks a dopant nucleus with its own resonance.
enum class Sublattice : std::uint8_t { A = 0, B = 1, D = 2 };

char to_char(Sublattice s);
Sublattice parse_sublattice(std::string_view token);

/// Orientation of the ground cell state on a sublattice (A: Up, B: Down, D: Up).
constexpr Orientation ground_orientation(Sublattice s) noexcept {
  return s == Sublattice::B ? Orientation::Down : Orientation::Up;
}

/// Sum of neighbour magnetic quantum numbers, held doubled so that the
/// half-integer values stay exact. Valid range: -1, -1/2, 0, +1/2, +1.
class NeighborSum {
 public:
  constexpr NeighborSum() = default;

  static NeighborSum from_twice(int twice);
  static NeighborSum parse(std::string_view token);

  constexpr int twice() const noexcept { return twice_; }
  constexpr double value() const noexcept { return 0.5 * twice_; }
  /// Canonical text: "-1", "-1/2", "0", "1/2", "1".
  std::string str() const;

  constexpr auto operator<=>(const NeighborSum&) const = default;

 private:
  constexpr explicit NeighborSum(int twice) : twice_(twice) {}
  int twice_ = 0;
};

/// Addressing unit of every pulse: which sublattice, which neighbour sum.
/// Ordering is A < B < D, then m ascending.
struct PulseClass {
  Sublattice target = Sublattice::A;
  NeighborSum m;

  constexpr auto operator<=>(const PulseClass&) const = default;

  /// "A,-1/2" style label.
  std::string str() const;
};

PulseClass make_class(Sublattice target, int twice_m);

/// Every class a chain can present, in canonical order.
std::vector<PulseClass> all_classes(bool include_dopant = false);

class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// One classical basis state of the chain. Spins are bit-packed (bit set
/// means Up); padding bits past size() are always zero.
class ChainConfig {
 public:
  using Word = std::uint64_t;
  static constexpr std::size_t kWordBits = 64;

  ChainConfig(std::span<const Orientation> spins,
              std::optional<std::size_t> dopant = std::nullopt);
  /// Build from packed words; bits past `size` must be zero.
  ChainConfig(std::size_t size, std::vector<Word> up_words,
              std::optional<std::size_t> dopant = std::nullopt);

  /// A-sites Up, B-sites Down (the dopant site, if any, Up).
  static ChainConfig ground(std::size_t size,
                            std::optional<std::size_t> dopant = std::nullopt);

  std::size_t size() const noexcept { return size_; }
  std::optional<std::size_t> dopant() const noexcept { return dopant_; }

  Orientation spin(std::size_t i) const;
  Sublattice sublattice(std::size_t i) const;
  /// True when the site's orientation differs from its sublattice ground.
  bool excited(std::size_t i) const;

  ChainConfig with_spin(std::size_t i, Orientation o) const;
  ChainConfig with_flipped(std::size_t i) const;

  std::span<const Word> words() const noexcept { return up_; }
  static std::size_t word_count(std::size_t size) noexcept {
    return (size + kWordBits - 1) / kWordBits;
  }

  /// Lexicographic on the raw text ('d' < 'u'), then dopant position.
  std::strong_ordering operator<=>(const ChainConfig& other) const;
  bool operator==(const ChainConfig& other) const = default;

 private:
  void check_index(std::size_t i) const;

  std::size_t size_ = 0;
  std::vector<Word> up_;
  std::optional<std::size_t> dopant_;
};

/// Resonance class of site `i`: (sublattice, sum of neighbour m), using the
/// physical orientation of the existing neighbours (Up = +1/2).
PulseClass classify_site(const ChainConfig& config, std::size_t i);

/// Synchronous π-pulse: every site whose class under `config` equals `cls`
/// is inverted; all others unchanged.
ChainConfig apply_pi(const ChainConfig& config, PulseClass cls);

/// Bit mask (same packing as words()) of the sites matching `cls`.
std::vector<ChainConfig::Word> class_mask(const ChainConfig& config, PulseClass cls);

/// Site indices matching `cls`, ascending.
std::vector<std::size_t> matching_sites(const ChainConfig& config, PulseClass cls);

enum class ConfigStyle { Raw, Arrows };

/// Raw grammar: ^[ud]+(@k)?$ where k marks the dopant site.
ChainConfig parse_config(std::string_view text);
std::string format_config(const ChainConfig& config, ConfigStyle style = ConfigStyle::Raw);

/// Word-level π kernel shared by ChainConfig and the search engine. Masks are
/// precomputed once per (size, dopant) pair.
class ChainGeometry {
 public:
  ChainGeometry(std::size_t size, std::optional<std::size_t> dopant);

  std::size_t size() const noexcept { return size_; }
  std::size_t words() const noexcept { return words_; }

  /// out = sites matching `cls` given spins `up`. Spans have words() entries.
  void match(std::span<const ChainConfig::Word> up, PulseClass cls,
             std::span<ChainConfig::Word> out) const;
  /// up ^= match(up, cls)
  void apply_pi(std::span<ChainConfig::Word> up, PulseClass cls) const;

 private:
  ChainConfig::Word match_word(std::size_t w, ChainConfig::Word prev, ChainConfig::Word cur,
                               ChainConfig::Word next, PulseClass cls) const;

  std::size_t size_;
  std::size_t words_;
  std::vector<ChainConfig::Word> a_mask_, b_mask_, d_mask_, interior_, ends_;
};

}  // namespace afqc

template <>
struct std::hash<afqc::ChainConfig> {
  std::size_t operator()(const afqc::ChainConfig& c) const noexcept;
};

#include "afqc/chain.hpp"

#include <bit>
#include <charconv>

namespace afqc {

namespace {

using Word = ChainConfig::Word;
constexpr std::size_t kBits = ChainConfig::kWordBits;

constexpr Word bit(std::size_t i) { return Word{1} << (i % kBits); }

}  // namespace

char to_char(Sublattice s) {
  switch (s) {
    case Sublattice::A: return 'A';
    case Sublattice::B: return 'B';
    case Sublattice::D: return 'D';
  }
  return '?';
}

Sublattice parse_sublattice(std::string_view token) {
  if (token == "A") return Sublattice::A;
  if (token == "B") return Sublattice::B;
  if (token == "D") return Sublattice::D;
  throw ConfigError("unknown sublattice '" + std::string(token) + "'");
}

NeighborSum NeighborSum::from_twice(int twice) {
  if (twice < -2 || twice > 2) {
    throw ConfigError("neighbour sum out of range: " + std::to_string(twice) + "/2");
  }
  return NeighborSum(twice);
}

NeighborSum NeighborSum::parse(std::string_view token) {
  if (token == "-1") return NeighborSum(-2);
  if (token == "-1/2" || token == "-0.5") return NeighborSum(-1);
  if (token == "0") return NeighborSum(0);
  if (token == "1/2" || token == "+1/2" || token == "0.5") return NeighborSum(1);
  if (token == "1" || token == "+1") return NeighborSum(2);
  throw ConfigError("invalid neighbour sum '" + std::string(token) + "'");
}

std::string NeighborSum::str() const {
  switch (twice_) {
    case -2: return "-1";
    case -1: return "-1/2";
    case 0: return "0";
    case 1: return "1/2";
    default: return "1";
  }
}

std::string PulseClass::str() const {
  return std::string(1, to_char(target)) + "," + m.str();
}

PulseClass make_class(Sublattice target, int twice_m) {
  return PulseClass{target, NeighborSum::from_twice(twice_m)};
}

std::vector<PulseClass> all_classes(bool include_dopant) {
  std::vector<PulseClass> out;
  for (Sublattice s : {Sublattice::A, Sublattice::B, Sublattice::D}) {
    if (s == Sublattice::D && !include_dopant) continue;
    for (int t = -2; t <= 2; ++t) out.push_back(make_class(s, t));
  }
  return out;
}

// ---------------------------------------------------------------------------
// ChainConfig

ChainConfig::ChainConfig(std::span<const Orientation> spins, std::optional<std::size_t> dopant)
    : size_(spins.size()), up_(word_count(spins.size()), 0), dopant_(dopant) {
  if (size_ < 2) throw ConfigError("chain needs at least 2 sites");
  if (dopant_ && *dopant_ >= size_) throw ConfigError("dopant index out of range");
  for (std::size_t i = 0; i < size_; ++i) {
    if (spins[i] == Orientation::Up) up_[i / kBits] |= bit(i);
  }
}

ChainConfig::ChainConfig(std::size_t size, std::vector<Word> up_words,
                         std::optional<std::size_t> dopant)
    : size_(size), up_(std::move(up_words)), dopant_(dopant) {
  if (size_ < 2) throw ConfigError("chain needs at least 2 sites");
  if (up_.size() != word_count(size_)) throw ConfigError("word count does not match size");
  if (dopant_ && *dopant_ >= size_) throw ConfigError("dopant index out of range");
  if (size_ % kBits != 0 && (up_.back() >> (size_ % kBits)) != 0) {
    throw ConfigError("bits set past the end of the chain");
  }
}

ChainConfig ChainConfig::ground(std::size_t size, std::optional<std::size_t> dopant) {
  std::vector<Orientation> spins(size);
  for (std::size_t i = 0; i < size; ++i) {
    Sublattice s = (dopant && *dopant == i) ? Sublattice::D
                   : (i % 2 == 0)           ? Sublattice::A
                                            : Sublattice::B;
    spins[i] = ground_orientation(s);
  }
  return ChainConfig(spins, dopant);
}

void ChainConfig::check_index(std::size_t i) const {
  if (i >= size_) {
    throw std::out_of_range("site " + std::to_string(i) + " outside chain of " +
                            std::to_string(size_));
  }
}

Orientation ChainConfig::spin(std::size_t i) const {
  check_index(i);
  return (up_[i / kBits] & bit(i)) ? Orientation::Up : Orientation::Down;
}

Sublattice ChainConfig::sublattice(std::size_t i) const {
  check_index(i);
  if (dopant_ && *dopant_ == i) return Sublattice::D;
  return i % 2 == 0 ? Sublattice::A : Sublattice::B;
}

bool ChainConfig::excited(std::size_t i) const {
  return spin(i) != ground_orientation(sublattice(i));
}

ChainConfig ChainConfig::with_spin(std::size_t i, Orientation o) const {
  check_index(i);
  ChainConfig out = *this;
  if (o == Orientation::Up) {
    out.up_[i / kBits] |= bit(i);
  } else {
    out.up_[i / kBits] &= ~bit(i);
  }
  return out;
}

ChainConfig ChainConfig::with_flipped(std::size_t i) const {
  check_index(i);
  ChainConfig out = *this;
  out.up_[i / kBits] ^= bit(i);
  return out;
}

std::strong_ordering ChainConfig::operator<=>(const ChainConfig& other) const {
  const std::size_t common = std::min(size_, other.size_);
  const std::size_t full_words = common / kBits;
  for (std::size_t w = 0; w <= full_words && w < up_.size() && w < other.up_.size(); ++w) {
    Word diff = up_[w] ^ other.up_[w];
    if (w == full_words) {
      const std::size_t rem = common % kBits;
      if (rem == 0) break;
      diff &= (Word{1} << rem) - 1;
    }
    if (diff != 0) {
      const int j = std::countr_zero(diff);
      return (up_[w] >> j) & 1 ? std::strong_ordering::greater : std::strong_ordering::less;
    }
  }
  if (auto c = size_ <=> other.size_; c != 0) return c;
  return dopant_ <=> other.dopant_;
}

// ---------------------------------------------------------------------------
// Geometry and π kernel

ChainGeometry::ChainGeometry(std::size_t size, std::optional<std::size_t> dopant)
    : size_(size),
      words_(ChainConfig::word_count(size)),
      a_mask_(words_, 0),
      b_mask_(words_, 0),
      d_mask_(words_, 0),
      interior_(words_, 0),
      ends_(words_, 0) {
  if (size < 2) throw ConfigError("chain needs at least 2 sites");
  for (std::size_t i = 0; i < size; ++i) {
    const std::size_t w = i / kBits;
    if (dopant && *dopant == i) {
      d_mask_[w] |= bit(i);
    } else if (i % 2 == 0) {
      a_mask_[w] |= bit(i);
    } else {
      b_mask_[w] |= bit(i);
    }
    if (i == 0 || i + 1 == size) {
      ends_[w] |= bit(i);
    } else {
      interior_[w] |= bit(i);
    }
  }
}

Word ChainGeometry::match_word(std::size_t w, Word prev, Word cur, Word next,
                               PulseClass cls) const {
  // Bit i of `left` holds the orientation of site i-1, `right` that of i+1.
  // Missing neighbours read as zero because padding bits are zero.
  const Word left = (cur << 1) | (prev >> (kBits - 1));
  const Word right = (cur >> 1) | (next << (kBits - 1));
  Word m = 0;
  switch (cls.m.twice()) {
    case 2: m = left & right & interior_[w]; break;
    case 0: m = (left ^ right) & interior_[w]; break;
    case -2: m = ~left & ~right & interior_[w]; break;
    case 1: m = (left | right) & ends_[w]; break;
    case -1: m = ~(left | right) & ends_[w]; break;
  }
  switch (cls.target) {
    case Sublattice::A: return m & a_mask_[w];
    case Sublattice::B: return m & b_mask_[w];
    case Sublattice::D: return m & d_mask_[w];
  }
  return 0;
}

void ChainGeometry::match(std::span<const Word> up, PulseClass cls, std::span<Word> out) const {
  for (std::size_t w = 0; w < words_; ++w) {
    const Word prev = w > 0 ? up[w - 1] : 0;
    const Word next = w + 1 < words_ ? up[w + 1] : 0;
    out[w] = match_word(w, prev, up[w], next, cls);
  }
}

void ChainGeometry::apply_pi(std::span<Word> up, PulseClass cls) const {
  Word prev = 0;
  for (std::size_t w = 0; w < words_; ++w) {
    const Word cur = up[w];
    const Word next = w + 1 < words_ ? up[w + 1] : 0;
    up[w] = cur ^ match_word(w, prev, cur, next, cls);
    prev = cur;
  }
}

// ---------------------------------------------------------------------------

PulseClass classify_site(const ChainConfig& config, std::size_t i) {
  const Sublattice s = config.sublattice(i);
  int twice = 0;
  if (i > 0) twice += config.spin(i - 1) == Orientation::Up ? 1 : -1;
  if (i + 1 < config.size()) twice += config.spin(i + 1) == Orientation::Up ? 1 : -1;
  return PulseClass{s, NeighborSum::from_twice(twice)};
}

std::vector<Word> class_mask(const ChainConfig& config, PulseClass cls) {
  ChainGeometry geometry(config.size(), config.dopant());
  std::vector<Word> out(geometry.words());
  geometry.match(config.words(), cls, out);
  return out;
}

ChainConfig apply_pi(const ChainConfig& config, PulseClass cls) {
  ChainGeometry geometry(config.size(), config.dopant());
  std::vector<Word> up(config.words().begin(), config.words().end());
  geometry.apply_pi(up, cls);
  return ChainConfig(config.size(), std::move(up), config.dopant());
}

std::vector<std::size_t> matching_sites(const ChainConfig& config, PulseClass cls) {
  const auto mask = class_mask(config, cls);
  std::vector<std::size_t> sites;
  for (std::size_t w = 0; w < mask.size(); ++w) {
    for (Word x = mask[w]; x != 0; x &= x - 1) {
      sites.push_back(w * kBits + static_cast<std::size_t>(std::countr_zero(x)));
    }
  }
  return sites;
}

ChainConfig parse_config(std::string_view text) {
  std::optional<std::size_t> dopant;
  if (auto at = text.find('@'); at != std::string_view::npos) {
    const std::string_view idx = text.substr(at + 1);
    std::size_t value = 0;
    auto [ptr, ec] = std::from_chars(idx.data(), idx.data() + idx.size(), value);
    if (idx.empty() || ec != std::errc{} || ptr != idx.data() + idx.size()) {
      throw ConfigError("invalid dopant marker '@" + std::string(idx) + "'");
    }
    dopant = value;
    text = text.substr(0, at);
  }
  std::vector<Orientation> spins;
  spins.reserve(text.size());
  for (std::size_t i = 0; i < text.size(); ++i) {
    switch (text[i]) {
      case 'u': spins.push_back(Orientation::Up); break;
      case 'd': spins.push_back(Orientation::Down); break;
      default:
        throw ConfigError("invalid character '" + std::string(1, text[i]) + "' at position " +
                          std::to_string(i));
    }
  }
  if (dopant && *dopant >= spins.size()) {
    throw ConfigError("dopant marker @" + std::to_string(*dopant) + " out of range");
  }
  return ChainConfig(spins, dopant);
}

namespace {

const char* arrow(bool a_parity, Orientation o) {
  if (a_parity) return o == Orientation::Up ? "↑" : "⇓";
  return o == Orientation::Down ? "↓" : "⇑";
}

}  // namespace

std::string format_config(const ChainConfig& config, ConfigStyle style) {
  std::string out;
  const auto dopant = config.dopant();
  if (style == ConfigStyle::Raw) {
    out.reserve(config.size() + 4);
    for (std::size_t i = 0; i < config.size(); ++i) {
      out.push_back(config.spin(i) == Orientation::Up ? 'u' : 'd');
    }
    if (dopant) out += "@" + std::to_string(*dopant);
    return out;
  }
  for (std::size_t i = 0; i < config.size(); ++i) {
    const char* a = arrow(i % 2 == 0, config.spin(i));
    if (dopant && *dopant == i) {
      out += "D(";
      out += a;
      out += ")";
    } else {
      out += a;
    }
  }
  return out;
}

}  // namespace afqc

std::size_t std::hash<afqc::ChainConfig>::operator()(const afqc::ChainConfig& c) const noexcept {
  std::size_t h = c.size() * 0x9E3779B97F4A7C15ULL;
  for (auto w : c.words()) {
    h ^= std::hash<std::uint64_t>{}(w) + 0x9E3779B97F4A7C15ULL + (h << 6) + (h >> 2);
  }
  if (auto d = c.dopant()) h ^= (*d + 1) * 0xC2B2AE3D27D4EB4FULL;
  return h;
}

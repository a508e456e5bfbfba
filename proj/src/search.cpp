#include "afqc/search.hpp"

#include <algorithm>
#include <cstdint>
#include <string>
#include <unordered_set>

namespace afqc {

namespace {

using Word = ChainConfig::Word;

// Fixed-stride node storage; the hash set holds node indices into it.
class Arena {
 public:
  explicit Arena(std::size_t stride) : stride_(stride) {}

  std::size_t size() const { return data_.size() / stride_; }
  std::size_t stride() const { return stride_; }
  const Word* node(std::size_t i) const { return data_.data() + i * stride_; }
  Word* node(std::size_t i) { return data_.data() + i * stride_; }

  std::size_t push_copy(std::size_t from) {
    const std::size_t idx = size();
    data_.resize(data_.size() + stride_);
    std::copy_n(node(from), stride_, node(idx));
    return idx;
  }
  std::size_t push(std::span<const Word> words) {
    const std::size_t idx = size();
    data_.insert(data_.end(), words.begin(), words.end());
    return idx;
  }
  void pop() { data_.resize(data_.size() - stride_); }

 private:
  std::size_t stride_;
  std::vector<Word> data_;
};

struct NodeHash {
  const Arena* arena;
  std::size_t operator()(std::uint32_t i) const noexcept {
    const Word* p = arena->node(i);
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (std::size_t k = 0; k < arena->stride(); ++k) {
      h ^= p[k];
      h *= 0x100000001b3ULL;
      h ^= h >> 29;
    }
    return static_cast<std::size_t>(h);
  }
};

struct NodeEq {
  const Arena* arena;
  bool operator()(std::uint32_t a, std::uint32_t b) const noexcept {
    return std::equal(arena->node(a), arena->node(a) + arena->stride(), arena->node(b));
  }
};

std::vector<PulseClass> normalise(std::vector<PulseClass> allowed, bool has_dopant) {
  if (allowed.empty()) allowed = all_classes(has_dopant);
  std::sort(allowed.begin(), allowed.end());
  allowed.erase(std::unique(allowed.begin(), allowed.end()), allowed.end());
  return allowed;
}

}  // namespace

std::optional<std::vector<PulseClass>> find_joint_sequence(const std::vector<ChainConfig>& starts,
                                                           const JointGoal& goal,
                                                           std::size_t max_len,
                                                           std::vector<PulseClass> allowed,
                                                           SearchOptions options) {
  if (starts.empty()) throw std::invalid_argument("search needs at least one start config");
  const std::size_t n = starts.front().size();
  const auto dopant = starts.front().dopant();
  for (const auto& s : starts) {
    if (s.size() != n || s.dopant() != dopant) {
      throw std::invalid_argument("search configs must share length and dopant");
    }
  }
  allowed = normalise(std::move(allowed), dopant.has_value());

  const ChainGeometry geometry(n, dopant);
  const std::size_t wpc = geometry.words();
  Arena arena(wpc * starts.size());
  {
    std::vector<Word> root;
    for (const auto& s : starts) root.insert(root.end(), s.words().begin(), s.words().end());
    arena.push(root);
  }
  auto view = [&](std::size_t i) {
    return JointState{std::span<const Word>(arena.node(i), arena.stride()), wpc};
  };
  if (goal(view(0))) return std::vector<PulseClass>{};

  if (options.node_cap > UINT32_MAX) options.node_cap = UINT32_MAX;
  std::unordered_set<std::uint32_t, NodeHash, NodeEq> seen(1024, NodeHash{&arena},
                                                           NodeEq{&arena});
  seen.insert(0);
  std::vector<std::uint32_t> parent{0};
  std::vector<std::uint8_t> via{0};

  auto path_to = [&](std::size_t i) {
    std::vector<PulseClass> out;
    while (i != 0) {
      out.push_back(allowed[via[i]]);
      i = parent[i];
    }
    std::reverse(out.begin(), out.end());
    return out;
  };

  std::size_t lo = 0, hi = 1;
  for (std::size_t depth = 0; depth < max_len && lo < hi; ++depth) {
    for (std::size_t i = lo; i < hi; ++i) {
      for (std::size_t c = 0; c < allowed.size(); ++c) {
        const std::size_t idx = arena.push_copy(i);
        Word* w = arena.node(idx);
        for (std::size_t k = 0; k < starts.size(); ++k) {
          geometry.apply_pi(std::span<Word>(w + k * wpc, wpc), allowed[c]);
        }
        if (!seen.insert(static_cast<std::uint32_t>(idx)).second) {
          arena.pop();
          continue;
        }
        parent.push_back(static_cast<std::uint32_t>(i));
        via.push_back(static_cast<std::uint8_t>(c));
        if (goal(view(idx))) return path_to(idx);
        if (arena.size() > options.node_cap) {
          throw SearchSpaceExceeded("search visited more than " +
                                    std::to_string(options.node_cap) + " nodes");
        }
      }
    }
    lo = hi;
    hi = arena.size();
  }
  return std::nullopt;
}

std::optional<PulseProgram> find_sequence(const ChainConfig& start, const ChainConfig& goal,
                                          std::size_t max_len, std::vector<PulseClass> allowed,
                                          SearchOptions options) {
  if (start.size() != goal.size() || start.dopant() != goal.dopant()) {
    throw std::invalid_argument("start and goal must share length and dopant");
  }
  const auto target = goal.words();
  auto found = find_joint_sequence(
      {start},
      [&](const JointState& s) { return std::equal(target.begin(), target.end(), s.words.begin()); },
      max_len, std::move(allowed), options);
  if (!found) return std::nullopt;
  return make_pi_program("search", *found);
}

}  // namespace afqc

#include <gtest/gtest.h>

#include <random>

#include "afqc/chain.hpp"
#include "oracles.hpp"

using namespace afqc;

namespace {

std::string random_raw(std::mt19937_64& rng, std::size_t n) {
  std::string s(n, 'd');
  for (auto& ch : s) ch = (rng() & 1) ? 'u' : 'd';
  return s;
}

std::string raw(const ChainConfig& c) {
  std::string s = format_config(c);
  return s.substr(0, s.find('@'));
}

}  // namespace

TEST(NeighborSum, ParsesAllSpellings) {
  EXPECT_EQ(NeighborSum::parse("-1").twice(), -2);
  EXPECT_EQ(NeighborSum::parse("-1/2").twice(), -1);
  EXPECT_EQ(NeighborSum::parse("-0.5").twice(), -1);
  EXPECT_EQ(NeighborSum::parse("0").twice(), 0);
  EXPECT_EQ(NeighborSum::parse("+1/2").twice(), 1);
  EXPECT_EQ(NeighborSum::parse("0.5").twice(), 1);
  EXPECT_EQ(NeighborSum::parse("1").twice(), 2);
  EXPECT_EQ(NeighborSum::parse("+1").twice(), 2);
  EXPECT_EQ(NeighborSum::from_twice(-1).str(), "-1/2");
  EXPECT_THROW(NeighborSum::parse("3/2"), std::invalid_argument);
  EXPECT_THROW(NeighborSum::parse("x"), std::invalid_argument);
  EXPECT_THROW(NeighborSum::from_twice(3), std::invalid_argument);
}

TEST(PulseClass, CanonicalOrder) {
  auto all = all_classes();
  ASSERT_EQ(all.size(), 10u);
  EXPECT_TRUE(std::is_sorted(all.begin(), all.end()));
  EXPECT_EQ(all.front().str(), "A,-1");
  EXPECT_EQ(all.back().str(), "B,1");
  EXPECT_EQ(all_classes(true).size(), 15u);
}

TEST(ChainConfig, GroundAndParse) {
  auto g = ChainConfig::ground(8);
  EXPECT_EQ(format_config(g), "udududud");
  for (std::size_t i = 0; i < 8; ++i) EXPECT_FALSE(g.excited(i));
  auto c = parse_config("duududud");
  EXPECT_TRUE(c.excited(0));
  EXPECT_TRUE(c.excited(1));
  EXPECT_FALSE(c.excited(2));
  EXPECT_EQ(c.sublattice(1), Sublattice::B);
  EXPECT_THROW(parse_config(""), ConfigError);
  EXPECT_THROW(parse_config("udx"), ConfigError);
  EXPECT_THROW(parse_config("udu@9"), ConfigError);
  EXPECT_THROW(parse_config("u"), ConfigError);
}

TEST(ChainConfig, DopantGround) {
  auto g = ChainConfig::ground(5, 3);
  EXPECT_EQ(format_config(g), "uduuu@3");
  EXPECT_EQ(g.sublattice(3), Sublattice::D);
  EXPECT_EQ(parse_config("uduuu@3"), g);
}

TEST(ChainConfig, Arrows) {
  EXPECT_EQ(format_config(parse_config("duududud"), ConfigStyle::Arrows), "⇓⇑↑↓↑↓↑↓");
  EXPECT_EQ(format_config(parse_config("udduudud"), ConfigStyle::Arrows), "↑↓⇓⇑↑↓↑↓");
}

TEST(ChainConfig, RoundTripLong) {
  std::mt19937_64 rng(7);
  for (std::size_t n : {2u, 63u, 64u, 65u, 130u}) {
    const auto s = random_raw(rng, n);
    EXPECT_EQ(format_config(parse_config(s)), s);
  }
}

TEST(ChainConfig, OrderingFollowsText) {
  EXPECT_LT(parse_config("dduu"), parse_config("dudu"));
  EXPECT_LT(parse_config("uddd"), parse_config("uudd"));
}

TEST(ChainConfig, FlipAndSpin) {
  auto c = ChainConfig::ground(4).with_flipped(2);
  EXPECT_EQ(format_config(c), "uddd");
  EXPECT_EQ(c.spin(2), Orientation::Down);
  EXPECT_THROW(c.spin(4), std::out_of_range);
}

TEST(Classify, MatchesOracleExhaustive) {
  for (std::size_t n = 2; n <= 10; ++n) {
    for (std::uint32_t bits = 0; bits < (1u << n); ++bits) {
      std::string s(n, 'd');
      for (std::size_t i = 0; i < n; ++i) s[i] = (bits >> i) & 1 ? 'u' : 'd';
      const auto c = parse_config(s);
      for (std::size_t i = 0; i < n; ++i) {
        const auto got = classify_site(c, i);
        const auto want = oracle::classify(s, i);
        ASSERT_EQ(to_char(got.target), want.first) << s << " site " << i;
        ASSERT_EQ(got.m.twice(), want.second) << s << " site " << i;
      }
    }
  }
}

TEST(ApplyPi, MatchesOracleRandomLong) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t n = 2 + rng() % 199;
    const auto s = random_raw(rng, n);
    const auto c = parse_config(s);
    for (const auto& cls : all_classes()) {
      ASSERT_EQ(raw(apply_pi(c, cls)), oracle::apply_pi(s, to_char(cls.target), cls.m.twice()))
          << s << " " << cls.str();
    }
  }
}

TEST(ApplyPi, DopantMatchesOracle) {
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 3 + rng() % 90;
    const std::size_t dop = rng() % n;
    const auto s = random_raw(rng, n);
    const auto c = parse_config(s + "@" + std::to_string(dop));
    for (const auto& cls : all_classes(true)) {
      ASSERT_EQ(raw(apply_pi(c, cls)), oracle::apply_pi(s, to_char(cls.target), cls.m.twice(), dop))
          << s << "@" << dop << " " << cls.str();
    }
  }
}

TEST(ApplyPi, InvolutionAndSameSublatticeCommute) {
  std::mt19937_64 rng(17);
  const auto classes = all_classes();
  for (int trial = 0; trial < 500; ++trial) {
    const auto c = parse_config(random_raw(rng, 4 + rng() % 29));
    const auto p = classes[rng() % classes.size()];
    const auto q = classes[rng() % classes.size()];
    EXPECT_EQ(apply_pi(apply_pi(c, p), p), c);
    if (p.target == q.target) EXPECT_EQ(apply_pi(apply_pi(c, p), q), apply_pi(apply_pi(c, q), p));
  }
}

TEST(ApplyPi, EncodeZeroSteps) {
  auto c = ChainConfig::ground(8);
  c = apply_pi(c, make_class(Sublattice::A, -1));
  EXPECT_EQ(format_config(c), "ddududud");
  c = apply_pi(c, make_class(Sublattice::B, 0));
  EXPECT_EQ(format_config(c), "duududud");
}

TEST(Masks, AgreeWithMatchingSites) {
  std::mt19937_64 rng(19);
  for (int trial = 0; trial < 50; ++trial) {
    const auto c = parse_config(random_raw(rng, 2 + rng() % 149));
    for (const auto& cls : all_classes()) {
      const auto mask = class_mask(c, cls);
      const auto sites = matching_sites(c, cls);
      std::size_t bits = 0;
      for (auto w : mask) bits += static_cast<std::size_t>(__builtin_popcountll(w));
      ASSERT_EQ(bits, sites.size());
      for (auto i : sites) {
        ASSERT_TRUE((mask[i / 64] >> (i % 64)) & 1);
        ASSERT_EQ(classify_site(c, i), cls);
      }
    }
  }
}

TEST(Geometry, WordKernelEqualsConfigPath) {
  std::mt19937_64 rng(23);
  const auto c = parse_config(random_raw(rng, 129));
  ChainGeometry geo(c.size(), std::nullopt);
  for (const auto& cls : all_classes()) {
    std::vector<ChainConfig::Word> w(c.words().begin(), c.words().end());
    geo.apply_pi(w, cls);
    EXPECT_EQ(ChainConfig(c.size(), w), apply_pi(c, cls));
  }
}

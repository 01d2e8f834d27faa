#include <gtest/gtest.h>

#include <random>
#include <set>

#include "critset/corpus.hpp"
#include "critset/search.hpp"
#include "critset/trades.hpp"
#include "oracles.hpp"

namespace critset {
namespace {

LatinSquare xor_square(int n) {
  PartialLatinSquare p(n);
  for (int r = 1; r <= n; ++r)
    for (int c = 1; c <= n; ++c) p.insert({r, c, ((r - 1) ^ (c - 1)) + 1});
  return LatinSquare(p);
}

PartialLatinSquare restrict(const LatinSquare& l, std::initializer_list<std::pair<int, int>> cells) {
  PartialLatinSquare p(l.order());
  for (auto [r, c] : cells) p.insert({r, c, l.at(r, c)});
  return p;
}

TEST(VerifyTrade, CorpusPair) {
  const auto corpus = Corpus::load_default();
  const auto& e = corpus.get("trade3-pair");
  ASSERT_EQ(e.data.size(), 2u);
  EXPECT_TRUE(verify_trade(e.data[0], e.data[1]));
  EXPECT_TRUE(verify_trade(e.data[1], e.data[0]));
  EXPECT_FALSE(verify_trade(e.data[0], e.data[0]));
}

TEST(VerifyTrade, RejectsUnbalancedAndMisshapen) {
  PartialLatinSquare a(3), b(3);
  a.insert({1, 1, 1});
  a.insert({1, 2, 2});
  b.insert({1, 1, 2});
  b.insert({1, 2, 3});
  EXPECT_FALSE(verify_trade(a, b));  // row 1 symbols differ
  PartialLatinSquare c(3);
  c.insert({1, 1, 2});
  c.insert({1, 3, 1});
  EXPECT_FALSE(verify_trade(a, c));  // different shape
  EXPECT_FALSE(verify_trade(PartialLatinSquare(3), PartialLatinSquare(3)));
}

TEST(IsTradeIn, SingleEntriesAreNeverTrades) {
  for (int n = 1; n <= 6; ++n) {
    const auto l = cyclic_square(n);
    for (const auto& t : l.partial().triples()) {
      PartialLatinSquare one(n);
      one.insert(t);
      EXPECT_FALSE(is_trade_in(l, one));
    }
  }
}

TEST(IsTradeIn, IntercalateAndWholeSquare) {
  const auto l = cyclic_square(4);
  EXPECT_TRUE(is_trade_in(l, restrict(l, {{1, 1}, {1, 3}, {3, 1}, {3, 3}})));
  EXPECT_FALSE(is_trade_in(l, restrict(l, {{1, 1}, {1, 2}, {2, 1}, {2, 2}})));
  EXPECT_TRUE(is_trade_in(l, l.partial()));
  EXPECT_FALSE(is_trade_in(l, PartialLatinSquare(4)));
  PartialLatinSquare foreign(4);
  foreign.insert({1, 1, 2});
  try {
    is_trade_in(l, foreign);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::not_subset);
  }
}

TEST(AllTrades, SmallOrders) {
  EXPECT_TRUE(all_trades(cyclic_square(1)).empty());
  const auto two = all_trades(cyclic_square(2));
  ASSERT_EQ(two.size(), 1u);
  EXPECT_EQ(two.front(), cyclic_square(2).partial());
  EXPECT_THROW(all_trades(cyclic_square(5)), Error);
}

TEST(AllTrades, MatchesDifferenceOracle) {
  std::vector<LatinSquare> hosts{cyclic_square(3), cyclic_square(4), xor_square(4)};
  std::mt19937_64 rng(43);
  for (int k = 0; k < 3; ++k) hosts.push_back(random_latin_square(4, rng));
  for (const auto& l : hosts) {
    const auto expected = oracle::trade_masks(l);
    std::set<std::uint32_t> got;
    for (const auto& t : all_trades(l)) got.insert(oracle::mask_of(t));
    EXPECT_EQ(got, expected) << serialize(l);
  }
}

TEST(Intercalates, Counts) {
  EXPECT_EQ(find_intercalates(cyclic_square(1)).size(), 0u);
  EXPECT_EQ(find_intercalates(cyclic_square(2)).size(), 1u);
  EXPECT_EQ(find_intercalates(cyclic_square(3)).size(), 0u);
  EXPECT_EQ(find_intercalates(cyclic_square(4)).size(), 4u);
  EXPECT_EQ(find_intercalates(xor_square(4)).size(), 12u);
}

TEST(Intercalates, AreTrades) {
  for (const auto& l : {cyclic_square(4), xor_square(4), cyclic_square(6), xor_square(8)}) {
    for (const auto& ic : find_intercalates(l)) {
      const auto t = to_trade(ic, l.order());
      EXPECT_TRUE(verify_trade(t));
      EXPECT_TRUE(is_subset(t.interchange, l));
      EXPECT_TRUE(is_trade_in(l, t.interchange));
      EXPECT_TRUE(oracle::is_latin(apply_trade(l, t).partial()));
    }
  }
}

TEST(WitnessTrade, EveryEntryOfOrderFiveCriticalSet) {
  const auto corpus = Corpus::load_default();
  const auto& c = corpus.get("cs5-11").data.front();
  const auto l = complete_unique(c);
  ASSERT_EQ(c.size(), 11);
  for (const auto& t : c.triples()) {
    const auto w = witness_trade(l, c, t);
    EXPECT_TRUE(verify_trade(w)) << to_string(t);
    EXPECT_TRUE(is_subset(w.interchange, l));
    EXPECT_TRUE(w.interchange.contains(t));
    int meets = 0;
    for (const auto& e : w.interchange.triples()) meets += c.contains(e) ? 1 : 0;
    EXPECT_EQ(meets, 1) << to_string(t);
  }
}

TEST(WitnessTrade, Preconditions) {
  const auto corpus = Corpus::load_default();
  const auto& c = corpus.get("cs5-11").data.front();
  const auto l = complete_unique(c);
  auto code = [&](const PartialLatinSquare& set, const Triple& t) {
    try {
      witness_trade(l, set, t);
    } catch (const Error& e) {
      return e.code();
    }
    return Errc::not_found;
  };
  Triple absent{5, 5, l.at(5, 5)};
  EXPECT_FALSE(c.contains(absent));
  EXPECT_EQ(code(c, absent), Errc::precondition);
  // A removable entry has no witness.
  const auto full = l.partial();
  EXPECT_EQ(code(full, {1, 1, l.at(1, 1)}), Errc::precondition);
}

TEST(ApplyTrade, MateSwapsBack) {
  std::mt19937_64 rng(47);
  for (int trial = 0; trial < 40; ++trial) {
    const int n = 3 + trial % 5;
    const auto l = random_latin_square(n, rng);
    const auto c = minimalize_random(l.partial(), rng);
    for (const auto& t : c.triples()) {
      const auto w = witness_trade(l, c, t);
      const auto swapped = apply_trade(l, w);
      EXPECT_TRUE(oracle::is_latin(swapped.partial()));
      EXPECT_FALSE(swapped == l);
      EXPECT_TRUE(is_trade_in(swapped, w.mate));
      EXPECT_EQ(apply_trade(swapped, Trade{w.mate, w.interchange}), l);
      const auto back = trade_between(l, swapped);
      EXPECT_EQ(back.interchange, w.interchange);
      EXPECT_EQ(back.mate, w.mate);
    }
  }
}

}  // namespace
}  // namespace critset

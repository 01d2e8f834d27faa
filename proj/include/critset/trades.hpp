#ifndef CRITSET_TRADES_HPP
#define CRITSET_TRADES_HPP

// Latin interchanges (trades): a partial square I with a disjoint mate I' of
// the same shape whose rows and columns carry the same symbol sets.

#include <cstdint>
#include <string>
#include <vector>

#include "critset/detail/parallel.hpp"
#include "critset/error.hpp"
#include "critset/pls.hpp"
#include "critset/solver.hpp"

namespace critset {

struct Trade {
  PartialLatinSquare interchange;
  PartialLatinSquare mate;
};

inline bool verify_trade(const PartialLatinSquare& interchange, const PartialLatinSquare& mate) {
  if (interchange.order() != mate.order()) return false;
  if (interchange.size() == 0 || interchange.size() != mate.size()) return false;
  const int n = interchange.order();
  for (int r = 1; r <= n; ++r) {
    for (int c = 1; c <= n; ++c) {
      const int a = interchange.at(r, c);
      const int b = mate.at(r, c);
      if ((a == 0) != (b == 0)) return false;  // shape
      if (a != 0 && a == b) return false;      // disjoint
    }
  }
  for (int k = 1; k <= n; ++k) {
    if (interchange.row_symbols(k) != mate.row_symbols(k)) return false;
    if (interchange.col_symbols(k) != mate.col_symbols(k)) return false;
  }
  return true;
}

inline bool verify_trade(const Trade& t) { return verify_trade(t.interchange, t.mate); }

/// (L \ I) ∪ I'
inline LatinSquare apply_trade(const LatinSquare& l, const Trade& t) {
  PartialLatinSquare out = difference(l, t.interchange);
  for (const auto& e : t.mate.triples()) out.insert(e);
  return LatinSquare(std::move(out));
}

/// True iff I ⊆ L has a disjoint mate that swaps into L. Decided by asking the
/// solver for a completion of L \ I that differs from L on every cell of I.
inline bool is_trade_in(const LatinSquare& l, const PartialLatinSquare& interchange) {
  if (!is_subset(interchange, l)) throw Error(Errc::not_subset, "interchange is not contained in L");
  if (interchange.size() == 0) return false;
  CompletionSolver solver(difference(l, interchange));
  for (const auto& t : interchange.triples()) solver.forbid(t.row, t.col, t.symbol);
  return solver.count(1).count > 0;
}

/// Cell-wise difference between two squares of the same order as a trade in `a`.
inline Trade trade_between(const LatinSquare& a, const LatinSquare& b) {
  if (a.order() != b.order()) throw Error(Errc::order_mismatch, "squares have different orders");
  PartialLatinSquare left(a.order()), right(a.order());
  for (int r = 1; r <= a.order(); ++r) {
    for (int c = 1; c <= a.order(); ++c) {
      if (a.at(r, c) != b.at(r, c)) {
        left.insert({r, c, a.at(r, c)});
        right.insert({r, c, b.at(r, c)});
      }
    }
  }
  return {std::move(left), std::move(right)};
}

/// A trade I ⊆ L with I ∩ C = {t}: the difference between L and the first
/// other completion of C \ {t}.
inline Trade witness_trade(const LatinSquare& l, const PartialLatinSquare& c, const Triple& t) {
  if (!is_subset(c, l)) throw Error(Errc::precondition, "C is not contained in L");
  if (!c.contains(t)) throw Error(Errc::precondition, to_string(t) + " is not an entry of C");
  const auto whole = enumerate_completions(c, 2);
  if (whole.size() != 1) throw Error(Errc::precondition, "C is not uniquely completable");
  if (!(whole.front() == l)) throw Error(Errc::precondition, "C completes to a square other than L");
  for (const auto& other : enumerate_completions(c.without_entry(t), 2)) {
    if (!(other == l)) return trade_between(l, other);
  }
  throw Error(Errc::precondition,
              "C \\ {" + to_string(t) + "} is still uniquely completable, so no witness exists");
}

inline constexpr int kMaxTradeEnumerationOrder = 4;

namespace detail {

inline PartialLatinSquare restrict_to_mask(const LatinSquare& l, std::uint64_t mask) {
  PartialLatinSquare out(l.order());
  const int n = l.order();
  for (int idx = 0; idx < n * n; ++idx) {
    if (mask >> idx & 1) out.insert({idx / n + 1, idx % n + 1, l.at(idx / n + 1, idx % n + 1)});
  }
  return out;
}

}  // namespace detail

/// Every trade contained in L, ordered by row-major cell bitmask (bit 0 = cell (1,1)).
inline std::vector<PartialLatinSquare> all_trades(const LatinSquare& l) {
  if (l.order() > kMaxTradeEnumerationOrder) {
    throw Error(Errc::capability, "trade enumeration is limited to order " +
                                      std::to_string(kMaxTradeEnumerationOrder) +
                                      "; use witness-based checks for larger squares");
  }
  const int cells = l.order() * l.order();
  const std::size_t subsets = std::size_t{1} << cells;
  const auto hits = detail::parallel_map(subsets, [&](std::size_t mask) {
    return mask != 0 && is_trade_in(l, detail::restrict_to_mask(l, mask));
  });
  std::vector<PartialLatinSquare> out;
  for (std::size_t mask = 1; mask < subsets; ++mask) {
    if (hits[mask]) out.push_back(detail::restrict_to_mask(l, mask));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Intercalates

/// A 2x2 subsquare: rows {row1,row2}, cols {col1,col2}; (row1,col1) holds symbol1.
struct Intercalate {
  int row1, row2, col1, col2, symbol1, symbol2;

  friend auto operator<=>(const Intercalate&, const Intercalate&) = default;
};

inline std::vector<Intercalate> find_intercalates(const LatinSquare& l) {
  std::vector<Intercalate> out;
  const int n = l.order();
  for (int r1 = 1; r1 <= n; ++r1)
    for (int r2 = r1 + 1; r2 <= n; ++r2)
      for (int c1 = 1; c1 <= n; ++c1)
        for (int c2 = c1 + 1; c2 <= n; ++c2) {
          const int a = l.at(r1, c1), b = l.at(r1, c2);
          if (l.at(r2, c1) == b && l.at(r2, c2) == a) out.push_back({r1, r2, c1, c2, a, b});
        }
  return out;
}

inline Trade to_trade(const Intercalate& ic, int order) {
  PartialLatinSquare i(order), mate(order);
  i.insert({ic.row1, ic.col1, ic.symbol1});
  i.insert({ic.row1, ic.col2, ic.symbol2});
  i.insert({ic.row2, ic.col1, ic.symbol2});
  i.insert({ic.row2, ic.col2, ic.symbol1});
  mate.insert({ic.row1, ic.col1, ic.symbol2});
  mate.insert({ic.row1, ic.col2, ic.symbol1});
  mate.insert({ic.row2, ic.col1, ic.symbol1});
  mate.insert({ic.row2, ic.col2, ic.symbol2});
  return {std::move(i), std::move(mate)};
}

}  // namespace critset

#endif  // CRITSET_TRADES_HPP

#ifndef CRITSET_CRITICALITY_HPP
#define CRITSET_CRITICALITY_HPP

// Criticality decisions and the structural checks that hold for every
// critical set: the trade characterization, the conditions on rows with one
// or more holes, the line-count guard and the union-count identity
//   sum_{i,j} |R_i ∪ C_j| = n^3 - sum_k (n - |E_k|)^2.

#include <algorithm>
#include <bit>
#include <cstdint>
#include <numeric>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "critset/detail/parallel.hpp"
#include "critset/error.hpp"
#include "critset/pls.hpp"
#include "critset/solver.hpp"
#include "critset/trades.hpp"

namespace critset {

struct CriticalityReport {
  bool is_uc = false;
  bool is_critical = false;
  std::vector<Triple> removable_entries;  ///< entries whose removal keeps unique completability
  std::optional<LatinSquare> completion;  ///< set iff is_uc
};

inline CriticalityReport analyze(const PartialLatinSquare& c) {
  CriticalityReport report;
  auto found = enumerate_completions(c, 2);
  report.is_uc = found.size() == 1;
  if (!report.is_uc) return report;
  report.completion = std::move(found.front());
  const auto entries = c.triples();
  const auto removable = detail::parallel_map(entries.size(), [&](std::size_t i) {
    return is_uniquely_completable(c.without_entry(entries[i]));
  });
  for (std::size_t i = 0; i < entries.size(); ++i) {
    if (removable[i]) report.removable_entries.push_back(entries[i]);
  }
  report.is_critical = report.removable_entries.empty();
  return report;
}

inline bool is_critical(const PartialLatinSquare& c) { return analyze(c).is_critical; }

/// Greedy descent to a critical subset, trying entries in `removal_order`.
/// One pass suffices: an entry that cannot be removed from a set cannot be
/// removed from any of its subsets either.
inline PartialLatinSquare minimalize(const PartialLatinSquare& c, std::span<const Triple> removal_order) {
  if (!is_uniquely_completable(c)) {
    throw Error(Errc::precondition, "minimalize needs a uniquely completable set");
  }
  PartialLatinSquare current = c;
  for (const auto& t : removal_order) {
    if (!current.contains(t)) continue;
    auto smaller = current.without_entry(t);
    if (is_uniquely_completable(smaller)) current = std::move(smaller);
  }
  return current;
}

/// Row-major removal order.
inline PartialLatinSquare minimalize(const PartialLatinSquare& c) {
  const auto order = c.triples();
  return minimalize(c, order);
}

/// Uniformly shuffled removal order drawn from `rng`.
template <class Rng>
PartialLatinSquare minimalize_random(const PartialLatinSquare& c, Rng& rng) {
  auto order = c.triples();
  std::shuffle(order.begin(), order.end(), rng);
  return minimalize(c, order);
}

// ---------------------------------------------------------------------------
// Structural checks

struct CheckResult {
  bool applicable = false;              ///< the hypothesis held somewhere
  std::vector<std::string> violations;  ///< empty iff the check passed
  std::vector<std::string> notes;       ///< informational, never affect pass()

  bool pass() const noexcept { return violations.empty(); }
};

namespace detail {

inline std::string cells_of(const PartialLatinSquare& p) {
  std::string out = "{";
  for (const auto& t : p.triples()) {
    if (out.size() > 1) out += ' ';
    out += to_string(t);
  }
  return out + "}";
}

inline int overlap(const PartialLatinSquare& a, const PartialLatinSquare& b) {
  int n = 0;
  for (const auto& t : a.triples()) n += b.contains(t) ? 1 : 0;
  return n;
}

inline const LatinSquare& require_critical(const CriticalityReport& report) {
  if (!report.is_critical) {
    throw Error(Errc::precondition, "the check applies to critical sets only");
  }
  return *report.completion;
}

}  // namespace detail

/// C is critical in L iff (1) C meets every trade in L and (2) each entry of C
/// is the sole intersection of some trade with C. Part (1) needs the full
/// trade list and is only run for order <= 4.
inline CheckResult check_trade_characterization(const PartialLatinSquare& c, const LatinSquare& l) {
  if (!is_subset(c, l)) throw Error(Errc::not_subset, "C is not contained in L");
  CheckResult out;
  out.applicable = true;
  std::optional<std::vector<PartialLatinSquare>> trades;
  if (l.order() <= kMaxTradeEnumerationOrder) {
    trades = all_trades(l);
    for (const auto& i : *trades) {
      if (detail::overlap(i, c) == 0) {
        out.violations.push_back("part 1: trade " + detail::cells_of(i) + " avoids C");
        break;
      }
    }
  } else {
    out.notes.push_back("part 1 skipped: order " + std::to_string(l.order()) +
                        " is above the trade enumeration limit");
  }
  for (const auto& t : c.triples()) {
    bool witnessed = false;
    try {
      const Trade w = witness_trade(l, c, t);
      const auto meets = detail::overlap(w.interchange, c);
      if (!verify_trade(w) || !is_subset(w.interchange, l) || meets != 1 || !w.interchange.contains(t)) {
        out.violations.push_back("part 2: witness for " + to_string(t) + " fails its postconditions");
      }
      witnessed = true;
    } catch (const Error& e) {
      if (e.code() != Errc::precondition) throw;
      out.violations.push_back("part 2: no witness trade for " + to_string(t) + " (" + e.what() + ")");
    }
    if (trades) {
      const bool listed = std::any_of(trades->begin(), trades->end(), [&](const auto& i) {
        return i.contains(t) && detail::overlap(i, c) == 1;
      });
      if (listed != witnessed) {
        out.violations.push_back("part 2: trade list and witness search disagree on " + to_string(t));
      }
    }
  }
  return out;
}

/// A row of a critical set with exactly one hole: the hole's symbol is absent
/// from C and the hole's column is empty.
inline CheckResult check_single_hole_rows(const PartialLatinSquare& c, const CriticalityReport& report) {
  const LatinSquare& l = detail::require_critical(report);
  const int n = c.order();
  const auto sets = line_sets(c);
  CheckResult out;
  for (int i = 1; i <= n; ++i) {
    if (static_cast<int>(sets.row_size(i)) != n - 1) continue;
    out.applicable = true;
    int j = 1;
    while (c.at(i, j) != 0) ++j;
    const int k = l.at(i, j);
    if (sets.symbol_size(k) != 0) {
      out.violations.push_back("row " + std::to_string(i) + ": missing symbol " + std::to_string(k) +
                               " occurs " + std::to_string(sets.symbol_size(k)) + " times in C");
    }
    if (sets.col_size(j) != 0) {
      out.violations.push_back("row " + std::to_string(i) + ": column " + std::to_string(j) +
                               " of the hole is not empty");
    }
  }
  return out;
}

inline CheckResult check_single_hole_rows(const PartialLatinSquare& c) {
  return check_single_hole_rows(c, analyze(c));
}

/// For a row with holes at columns c_1..c_m holding e_1..e_m in L:
///  (1) every filled column of the row has some e_y below or above it in L \ C;
///  (2) every filled symbol of the row sits in L \ C in some hole column.
inline CheckResult check_multi_hole_rows(const PartialLatinSquare& c, const LatinSquare& l,
                                        const CriticalityReport& report) {
  detail::require_critical(report);
  if (!is_subset(c, l)) throw Error(Errc::not_subset, "C is not contained in L");
  const int n = c.order();
  CheckResult out;
  for (int i = 1; i <= n; ++i) {
    std::vector<int> holes, filled;
    SymbolMask hole_symbols = 0;
    for (int col = 1; col <= n; ++col) {
      if (c.at(i, col) == 0) {
        holes.push_back(col);
        hole_symbols |= SymbolMask{1} << (l.at(i, col) - 1);
      } else {
        filled.push_back(col);
      }
    }
    if (holes.empty() || filled.empty()) continue;
    out.applicable = true;
    for (int x : filled) {
      bool found = false;
      for (int r = 1; r <= n && !found; ++r) {
        found = r != i && c.at(r, x) == 0 && (hole_symbols >> (l.at(r, x) - 1) & 1);
      }
      if (!found) {
        out.violations.push_back("row " + std::to_string(i) + " part 1: column " + std::to_string(x) +
                                 " holds every hole symbol of the row inside C");
      }
    }
    for (int x : filled) {
      const int e = c.at(i, x);
      bool found = false;
      for (int hc : holes) {
        for (int r = 1; r <= n && !found; ++r) found = l.at(r, hc) == e && c.at(r, hc) == 0;
      }
      if (!found) {
        out.violations.push_back("row " + std::to_string(i) + " part 2: symbol " + std::to_string(e) +
                                 " is in C in every hole column");
      }
    }
  }
  return out;
}

inline CheckResult check_multi_hole_rows(const PartialLatinSquare& c, const LatinSquare& l) {
  return check_multi_hole_rows(c, l, analyze(c));
}

inline CheckResult check_multi_hole_rows(const PartialLatinSquare& c) {
  const auto report = analyze(c);
  detail::require_critical(report);
  return check_multi_hole_rows(c, *report.completion, report);
}

/// No row, column or symbol of a critical set can be complete.
inline CheckResult line_count_guard(const PartialLatinSquare& c) {
  const int n = c.order();
  const auto sets = line_sets(c);
  CheckResult out;
  out.applicable = true;
  for (int k = 1; k <= n; ++k) {
    if (static_cast<int>(sets.row_size(k)) >= n) out.violations.push_back("row " + std::to_string(k) + " is full");
    if (static_cast<int>(sets.col_size(k)) >= n) out.violations.push_back("column " + std::to_string(k) + " is full");
    if (static_cast<int>(sets.symbol_size(k)) >= n) {
      out.violations.push_back("symbol " + std::to_string(k) + " occurs " + std::to_string(n) + " times");
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Union statistics

struct UnionStats {
  int order = 0;
  std::vector<std::vector<int>> x;  ///< x[i-1][j-1] = |R_i ∪ C_j|
  std::vector<int> f;               ///< f[k-1] = n - 2 - |E_k|, may be negative
  std::int64_t lhs_sum = 0;         ///< sum of x
  std::int64_t rhs_sum = 0;         ///< n^3 - sum_k (n - |E_k|)^2
  int max_x_on_empty = -1;          ///< largest x over empty cells, -1 if none

  std::int64_t residual() const noexcept { return lhs_sum - rhs_sum; }
};

inline UnionStats union_stats(const PartialLatinSquare& c) {
  const int n = c.order();
  UnionStats s;
  s.order = n;
  s.x.assign(static_cast<std::size_t>(n), std::vector<int>(static_cast<std::size_t>(n), 0));
  for (int i = 1; i <= n; ++i) {
    for (int j = 1; j <= n; ++j) {
      const int x = std::popcount(c.row_symbols(i) | c.col_symbols(j));
      s.x[static_cast<std::size_t>(i - 1)][static_cast<std::size_t>(j - 1)] = x;
      s.lhs_sum += x;
      if (c.at(i, j) == 0) s.max_x_on_empty = std::max(s.max_x_on_empty, x);
    }
  }
  const auto sets = line_sets(c);
  const std::int64_t n64 = n;
  s.rhs_sum = n64 * n64 * n64;
  for (int k = 1; k <= n; ++k) {
    const auto e = static_cast<std::int64_t>(sets.symbol_size(k));
    s.f.push_back(n - 2 - static_cast<int>(e));
    s.rhs_sum -= (n64 - e) * (n64 - e);
  }
  return s;
}

struct EmptinessProfile {
  bool has_empty_row = false;
  bool has_empty_col = false;
  bool has_missing_symbol = false;

  friend bool operator==(const EmptinessProfile&, const EmptinessProfile&) = default;
};

inline EmptinessProfile emptiness_profile(const PartialLatinSquare& c) {
  const auto sets = line_sets(c);
  EmptinessProfile p;
  for (int k = 1; k <= c.order(); ++k) {
    p.has_empty_row |= sets.row_size(k) == 0;
    p.has_empty_col |= sets.col_size(k) == 0;
    p.has_missing_symbol |= sets.symbol_size(k) == 0;
  }
  return p;
}

}  // namespace critset

#endif  // CRITSET_CRITICALITY_HPP

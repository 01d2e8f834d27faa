#ifndef CRITSET_SEARCH_HPP
#define CRITSET_SEARCH_HPP

// Largest and smallest critical sets: an exact census for orders <= 4 and
// seeded greedy descent for larger squares. Also the corpus verifier.

#include <algorithm>
#include <array>
#include <bit>
#include <cstdint>
#include <map>
#include <mutex>
#include <numeric>
#include <optional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "critset/bounds.hpp"
#include "critset/corpus.hpp"
#include "critset/criticality.hpp"
#include "critset/detail/parallel.hpp"
#include "critset/error.hpp"
#include "critset/pls.hpp"
#include "critset/solver.hpp"
#include "critset/trades.hpp"

namespace critset {

enum class SearchMode { exact, greedy };

inline const char* to_string(SearchMode m) { return m == SearchMode::exact ? "exact" : "greedy"; }

struct SearchResult {
  int order = 0;
  int best_size = 0;
  PartialLatinSquare witness{1};  ///< a critical set of best_size
  LatinSquare host = cyclic_square(1);
  SearchMode mode = SearchMode::exact;
  std::uint64_t squares_examined = 0;
  std::uint64_t subsets_examined = 0;
  std::uint64_t seed = 0;
  /// exact: (square, critical set) pairs per size, index = size.
  std::vector<std::uint64_t> size_histogram;
  /// exact: isotopy classes among the examined squares.
  int isotopy_classes = 0;
  /// greedy: terminal critical-set size of each restart.
  std::vector<int> run_sizes;
};

inline constexpr int kMaxExhaustiveOrder = 4;

namespace detail {

using CellMask = std::uint32_t;  // bit (r-1)*n + (c-1); n <= 4 fits in 16 bits

inline PartialLatinSquare restrict_cells(const LatinSquare& l, CellMask mask) {
  return restrict_to_mask(l, mask);
}

/// Critical subsets of one square, computed from the other squares of its order.
/// S ⊆ L is uniquely completable iff S meets the difference mask between L and
/// every other Latin square L' of the order.
struct SquareCensus {
  std::vector<std::uint64_t> histogram;  // index = size
  std::optional<CellMask> largest;       // lexicographically least among the largest
  std::optional<CellMask> smallest;      // lexicographically least among the smallest
};

inline CellMask difference_mask(const LatinSquare& a, const LatinSquare& b) {
  const int n = a.order();
  CellMask m = 0;
  for (int idx = 0; idx < n * n; ++idx) {
    if (a.partial().cells()[static_cast<std::size_t>(idx)] != b.partial().cells()[static_cast<std::size_t>(idx)]) {
      m |= CellMask{1} << idx;
    }
  }
  return m;
}

/// non_uc[S] for every subset S of the n^2 cells of squares[host].
inline std::vector<bool> non_uc_table(const std::vector<LatinSquare>& squares, std::size_t host) {
  const int cells = squares[host].order() * squares[host].order();
  const CellMask all = (CellMask{1} << cells) - 1;
  std::vector<bool> non_uc(std::size_t{1} << cells, false);
  for (std::size_t b = 0; b < squares.size(); ++b) {
    if (b != host) non_uc[all & ~difference_mask(squares[host], squares[b])] = true;
  }
  // Close downward: subsets of a non-UC set are non-UC.
  for (int bit = 0; bit < cells; ++bit) {
    for (CellMask s = 0; s <= all; ++s) {
      if ((s >> bit & 1) && non_uc[s]) non_uc[s ^ (CellMask{1} << bit)] = true;
    }
  }
  return non_uc;
}

inline bool mask_less(const LatinSquare& l, CellMask a, CellMask b) {
  return restrict_cells(l, a) < restrict_cells(l, b);
}

inline SquareCensus census_of(const std::vector<LatinSquare>& squares, std::size_t host) {
  const LatinSquare& l = squares[host];
  const int cells = l.order() * l.order();
  const auto non_uc = non_uc_table(squares, host);
  SquareCensus out;
  out.histogram.assign(static_cast<std::size_t>(cells) + 1, 0);
  const CellMask all = (CellMask{1} << cells) - 1;
  for (CellMask s = 0; s <= all; ++s) {
    if (non_uc[s]) continue;
    bool critical = true;
    for (CellMask rest = s; rest && critical; rest &= rest - 1) {
      critical = non_uc[s ^ (rest & -rest)];
    }
    if (!critical) continue;
    const int size = std::popcount(s);
    ++out.histogram[static_cast<std::size_t>(size)];
    if (!out.largest || size > std::popcount(*out.largest) ||
        (size == std::popcount(*out.largest) && mask_less(l, s, *out.largest))) {
      out.largest = s;
    }
    if (!out.smallest || size < std::popcount(*out.smallest) ||
        (size == std::popcount(*out.smallest) && mask_less(l, s, *out.smallest))) {
      out.smallest = s;
    }
  }
  return out;
}

/// Symbol-normalized minimum over all row and column permutations.
inline std::vector<std::uint8_t> isotopy_canonical(const LatinSquare& l) {
  const int n = l.order();
  std::vector<int> rows(static_cast<std::size_t>(n)), cols(static_cast<std::size_t>(n));
  std::vector<std::uint8_t> best, cur(static_cast<std::size_t>(n * n));
  std::iota(rows.begin(), rows.end(), 1);
  do {
    std::iota(cols.begin(), cols.end(), 1);
    do {
      std::array<int, kMaxOrder + 1> relabel{};
      for (int c = 0; c < n; ++c) relabel[static_cast<std::size_t>(l.at(rows[0], cols[static_cast<std::size_t>(c)]))] = c + 1;
      for (int r = 0; r < n; ++r) {
        for (int c = 0; c < n; ++c) {
          cur[static_cast<std::size_t>(r * n + c)] = static_cast<std::uint8_t>(
              relabel[static_cast<std::size_t>(l.at(rows[static_cast<std::size_t>(r)], cols[static_cast<std::size_t>(c)]))]);
        }
      }
      if (best.empty() || cur < best) best = cur;
    } while (std::next_permutation(cols.begin(), cols.end()));
  } while (std::next_permutation(rows.begin(), rows.end()));
  return best;
}

struct Census {
  std::vector<LatinSquare> squares;
  std::vector<SquareCensus> per_square;
  int isotopy_classes = 0;
};

inline const Census& census(int n) {
  static std::mutex mutex;
  static std::map<int, Census> cache;
  std::lock_guard lock(mutex);
  if (auto it = cache.find(n); it != cache.end()) return it->second;
  Census c;
  c.squares = all_latin_squares(n);
  c.per_square = parallel_map(c.squares.size(), [&](std::size_t i) { return census_of(c.squares, i); });
  const auto canon = parallel_map(c.squares.size(), [&](std::size_t i) { return isotopy_canonical(c.squares[i]); });
  c.isotopy_classes = static_cast<int>(std::set(canon.begin(), canon.end()).size());
  return cache.emplace(n, std::move(c)).first->second;
}

inline void require_exhaustive_order(int n) {
  if (n < 1 || n > kMaxExhaustiveOrder) {
    throw Error(Errc::capability, "exhaustive search supports orders 1.." +
                                      std::to_string(kMaxExhaustiveOrder) + ", got " + std::to_string(n));
  }
}

inline SearchResult exhaustive(int n, bool largest) {
  require_exhaustive_order(n);
  const Census& c = census(n);
  SearchResult out;
  out.order = n;
  out.mode = SearchMode::exact;
  out.squares_examined = c.squares.size();
  out.subsets_examined = c.squares.size() << (n * n);
  out.isotopy_classes = c.isotopy_classes;
  out.size_histogram.assign(static_cast<std::size_t>(n * n) + 1, 0);
  std::optional<std::size_t> best_host;
  std::optional<PartialLatinSquare> best;
  for (std::size_t i = 0; i < c.squares.size(); ++i) {
    const auto& sc = c.per_square[i];
    for (std::size_t k = 0; k < sc.histogram.size(); ++k) out.size_histogram[k] += sc.histogram[k];
    const auto mask = largest ? sc.largest : sc.smallest;
    if (!mask) continue;
    auto cand = restrict_cells(c.squares[i], *mask);
    const bool better = !best || (largest ? cand.size() > best->size() : cand.size() < best->size()) ||
                        (cand.size() == best->size() && cand < *best);
    if (better) {
      best = std::move(cand);
      best_host = i;
    }
  }
  out.best_size = best->size();
  out.witness = *best;
  out.host = c.squares[*best_host];
  return out;
}

}  // namespace detail

/// Exact lcs(n) over every Latin square of order n <= 4.
inline SearchResult exhaustive_lcs(int n) { return detail::exhaustive(n, true); }

/// Exact scs(n) over every Latin square of order n <= 4.
inline SearchResult exhaustive_scs(int n) { return detail::exhaustive(n, false); }

/// Every critical subset of L (order <= 4), ordered by cell bitmask.
inline std::vector<PartialLatinSquare> all_critical_sets(const LatinSquare& l) {
  detail::require_exhaustive_order(l.order());
  const auto& c = detail::census(l.order());
  const auto it = std::find(c.squares.begin(), c.squares.end(), l);
  const auto non_uc = detail::non_uc_table(c.squares, static_cast<std::size_t>(it - c.squares.begin()));
  std::vector<PartialLatinSquare> out;
  const detail::CellMask all = (detail::CellMask{1} << (l.order() * l.order())) - 1;
  for (detail::CellMask s = 0; s <= all; ++s) {
    if (non_uc[s]) continue;
    bool critical = true;
    for (auto rest = s; rest && critical; rest &= rest - 1) critical = non_uc[s ^ (rest & -rest)];
    if (critical) out.push_back(detail::restrict_cells(l, s));
  }
  return out;
}

/// Seeds the generator for one restart from the run seed and the restart index.
inline std::mt19937_64 restart_rng(std::uint64_t seed, std::uint64_t restart) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(restart), static_cast<std::uint32_t>(restart >> 32)};
  return std::mt19937_64(seq);
}

/// Best critical set over `restarts` random-order greedy descents from L.
/// Ties go to the lexicographically least witness, so the result does not
/// depend on the worker count.
inline SearchResult greedy_large(const LatinSquare& l, int restarts, std::uint64_t seed) {
  if (restarts < 1) throw Error(Errc::precondition, "restarts must be at least 1");
  const auto runs = detail::parallel_map(static_cast<std::size_t>(restarts), [&](std::size_t r) {
    auto rng = restart_rng(seed, r);
    return minimalize_random(l.partial(), rng);
  });
  SearchResult out;
  out.order = l.order();
  out.mode = SearchMode::greedy;
  out.seed = seed;
  out.host = l;
  out.squares_examined = 1;
  out.subsets_examined = 0;
  const PartialLatinSquare* best = nullptr;
  for (const auto& c : runs) {
    out.run_sizes.push_back(c.size());
    out.subsets_examined += static_cast<std::uint64_t>(l.order() * l.order());
    if (!best || c.size() > best->size() || (c.size() == best->size() && c < *best)) best = &c;
  }
  out.witness = *best;
  out.best_size = best->size();
  return out;
}

/// A Latin square built by random row-major backtracking. Not uniform.
template <class Rng>
LatinSquare random_latin_square(int n, Rng& rng) {
  PartialLatinSquare p(n);
  std::vector<std::array<int, kMaxOrder>> order(static_cast<std::size_t>(n * n));
  std::vector<int> next(static_cast<std::size_t>(n * n), 0);
  auto shuffle_cell = [&](int idx) {
    auto& o = order[static_cast<std::size_t>(idx)];
    std::iota(o.begin(), o.begin() + n, 1);
    std::shuffle(o.begin(), o.begin() + n, rng);
    next[static_cast<std::size_t>(idx)] = 0;
  };
  int idx = 0;
  shuffle_cell(0);
  while (idx < n * n) {
    const int r = idx / n + 1, c = idx % n + 1;
    bool placed = false;
    auto& k = next[static_cast<std::size_t>(idx)];
    while (k < n && !placed) {
      const int s = order[static_cast<std::size_t>(idx)][static_cast<std::size_t>(k++)];
      const auto bit = SymbolMask{1} << (s - 1);
      if (!(p.row_symbols(r) & bit) && !(p.col_symbols(c) & bit)) {
        p.insert({r, c, s});
        placed = true;
      }
    }
    if (placed) {
      if (++idx < n * n) shuffle_cell(idx);
    } else {
      --idx;  // backtrack
      p.erase({idx / n + 1, idx % n + 1, p.at(idx / n + 1, idx % n + 1)});
    }
  }
  return LatinSquare(std::move(p));
}

inline std::string render_report(const SearchResult& r) {
  std::ostringstream os;
  os << "order " << r.order << '\n'
     << "mode " << to_string(r.mode) << '\n'
     << "best_size " << r.best_size << '\n'
     << "squares_examined " << r.squares_examined << '\n'
     << "subsets_examined " << r.subsets_examined << '\n';
  if (r.mode == SearchMode::exact) {
    os << "isotopy_classes " << r.isotopy_classes << '\n' << "critical_sets_by_size";
    for (std::size_t k = 0; k < r.size_histogram.size(); ++k) {
      if (r.size_histogram[k]) os << ' ' << k << ':' << r.size_histogram[k];
    }
    os << '\n';
  } else {
    os << "seed " << r.seed << '\n' << "restarts " << r.run_sizes.size() << '\n';
    std::map<int, int> sizes;
    for (int s : r.run_sizes) ++sizes[s];
    os << "runs_by_size";
    for (const auto& [s, k] : sizes) os << ' ' << s << ':' << k;
    os << '\n';
  }
  os << "# witness\n" << serialize(r.witness) << "# host\n" << serialize(r.host);
  return os.str();
}

// ---------------------------------------------------------------------------
// Corpus verification

struct EntryVerification {
  std::string name;
  EntryKind kind = EntryKind::critical_set;
  int size = 0;
  std::optional<EmptinessProfile> profile;
  std::vector<std::string> checks;    ///< predicates that held
  std::vector<std::string> failures;  ///< "entry: predicate: detail"

  bool passed() const noexcept { return failures.empty(); }
};

struct CorpusReport {
  std::vector<EntryVerification> entries;

  bool all_passed() const {
    return std::all_of(entries.begin(), entries.end(), [](const auto& e) { return e.passed(); });
  }
};

inline EntryVerification verify_entry(const Corpus& corpus, const CorpusEntry& entry) {
  EntryVerification v;
  v.name = entry.name;
  v.kind = entry.kind;
  v.size = entry.data.front().size();
  auto check = [&](bool ok, const std::string& predicate, const std::string& detail = {}) {
    if (ok) v.checks.push_back(predicate);
    else v.failures.push_back(entry.name + ": " + predicate + (detail.empty() ? "" : ": " + detail));
  };
  const auto& p = entry.data.front();
  check(p.size() == entry.claimed_size, "size " + std::to_string(entry.claimed_size),
        "found " + std::to_string(p.size()));
  switch (entry.kind) {
    case EntryKind::latin_square:
    case EntryKind::completion:
      check(p.is_complete(), "latin square");
      break;
    case EntryKind::trade_pair:
      check(verify_trade(entry.data[0], entry.data[1]), "disjoint mutually balanced pair");
      break;
    case EntryKind::critical_set: {
      const auto report = analyze(p);
      check(report.is_uc, "uniquely completable");
      check(report.is_critical, "critical",
            std::to_string(report.removable_entries.size()) + " removable entries");
      const int n = p.order();
      if (n >= 2) {
        check(p.size() <= theorem_bound(n), "size <= n^2-3n+3");
      }
      const auto stats = union_stats(p);
      check(stats.residual() == 0, "union identity", "residual " + std::to_string(stats.residual()));
      check(line_count_guard(p).pass(), "line count guard");
      if (report.is_critical) {
        check(stats.max_x_on_empty <= n - 1, "x <= n-1 on empty cells");
        const auto l31 = check_single_hole_rows(p, report);
        check(l31.pass(), std::string("single-hole rows") + (l31.applicable ? "" : " [not applicable]"),
              l31.violations.empty() ? "" : l31.violations.front());
        const auto l32 = check_multi_hole_rows(p, *report.completion, report);
        check(l32.pass(), std::string("multi-hole rows") + (l32.applicable ? "" : " [not applicable]"),
              l32.violations.empty() ? "" : l32.violations.front());
        if (auto stored = corpus.completion_of(entry.name)) {
          check(*stored == *report.completion, "stored completion matches solver");
        }
      }
      v.profile = emptiness_profile(p);
      for (const auto& claim : entry.claims) {
        if (claim == "critical") continue;  // checked above
        if (claim == "empty-row") check(v.profile->has_empty_row, "empty row");
        else if (claim == "empty-col") check(v.profile->has_empty_col, "empty column");
        else if (claim == "missing-symbol") check(v.profile->has_missing_symbol, "missing symbol");
        else if (claim == "no-missing-symbol") check(!v.profile->has_missing_symbol, "every symbol present");
        else check(false, "claim '" + claim + "'", "unknown claim");
      }
      break;
    }
  }
  return v;
}

inline CorpusReport verify_corpus(const Corpus& corpus) {
  CorpusReport out;
  for (const auto& name : corpus.list()) out.entries.push_back(verify_entry(corpus, corpus.get(name)));
  return out;
}

inline CorpusReport verify_corpus() { return verify_corpus(Corpus::load_default()); }

}  // namespace critset

#endif  // CRITSET_SEARCH_HPP

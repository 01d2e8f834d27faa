#ifndef CRITSET_SOLVER_HPP
#define CRITSET_SOLVER_HPP

// Completion counting and enumeration for partial Latin squares.
//
// Search state is a row-major grid plus per-row and per-column used-symbol
// masks. Every node runs forced-move propagation to a fixpoint:
//   - a cell with one candidate symbol is filled,
//   - a symbol with one legal cell in a row (or column) is placed there,
// and fails as soon as a cell has no candidate or a row/column has no room
// for a missing symbol. Those are the three Latin constraints (cell, row-symbol,
// column-symbol) so propagation never removes a completion.

#include <array>
#include <bit>
#include <cstdint>
#include <optional>
#include <vector>

#include "critset/error.hpp"
#include "critset/pls.hpp"

namespace critset {

struct CompletionCount {
  std::uint64_t count = 0;
  bool capped = false;  ///< search stopped at the cap, so count == cap
};

class CompletionSolver {
 public:
  explicit CompletionSolver(const PartialLatinSquare& p)
      : order_(p.order()), full_(full_mask(p.order())) {
    forbidden_.fill(0);
    root_.grid.fill(0);
    root_.row_used.fill(0);
    root_.col_used.fill(0);
    root_.empty = order_ * order_;
    for (const auto& t : p.triples()) place(root_, (t.row - 1) * order_ + (t.col - 1), t.symbol - 1);
  }

  /// Excludes `symbol` from an empty cell (row, col). A filled cell holding a
  /// forbidden symbol makes the instance infeasible.
  void forbid(int row, int col, int symbol) {
    const int idx = (row - 1) * order_ + (col - 1);
    forbidden_[static_cast<std::size_t>(idx)] |= SymbolMask{1} << (symbol - 1);
    if (root_.grid[static_cast<std::size_t>(idx)] == symbol) infeasible_ = true;
  }

  CompletionCount count(std::uint64_t cap) {
    if (cap == 0) throw Error(Errc::precondition, "completion cap must be at least 1");
    cap_ = cap;
    found_ = 0;
    if (!infeasible_) count_from(root_);
    return {found_, found_ >= cap_};
  }

  /// Completions in lexicographic order of their row-major symbol sequence.
  std::vector<LatinSquare> enumerate(std::size_t limit) {
    std::vector<LatinSquare> out;
    if (limit == 0 || infeasible_) return out;
    enumerate_from(root_, limit, out);
    return out;
  }

  /// Forced-move closure, or nullopt when propagation reaches a contradiction.
  std::optional<PartialLatinSquare> propagate() {
    if (infeasible_) return std::nullopt;
    State s = root_;
    if (!propagate(s)) return std::nullopt;
    return to_partial(s);
  }

 private:
  struct State {
    std::array<std::uint8_t, kMaxOrder * kMaxOrder> grid;  // 0 = empty, else symbol
    std::array<SymbolMask, kMaxOrder> row_used;
    std::array<SymbolMask, kMaxOrder> col_used;
    int empty;
  };

  SymbolMask candidates(const State& s, int idx) const {
    return full_ & ~s.row_used[static_cast<std::size_t>(idx / order_)] &
           ~s.col_used[static_cast<std::size_t>(idx % order_)] &
           ~forbidden_[static_cast<std::size_t>(idx)];
  }

  void place(State& s, int idx, int sym0) const {
    const auto bit = SymbolMask{1} << sym0;
    s.grid[static_cast<std::size_t>(idx)] = static_cast<std::uint8_t>(sym0 + 1);
    s.row_used[static_cast<std::size_t>(idx / order_)] |= bit;
    s.col_used[static_cast<std::size_t>(idx % order_)] |= bit;
    --s.empty;
  }

  // Places every symbol of `unique` into the one cell of the line that admits it.
  bool place_hidden(State& s, SymbolMask unique, int first, int stride) const {
    while (unique) {
      const int sym0 = std::countr_zero(unique);
      unique &= unique - 1;
      const auto bit = SymbolMask{1} << sym0;
      bool placed = false;
      for (int k = 0, idx = first; k < order_; ++k, idx += stride) {
        if (s.grid[static_cast<std::size_t>(idx)] == 0 && (candidates(s, idx) & bit)) {
          place(s, idx, sym0);
          placed = true;
          break;
        }
      }
      // Another hidden single took the only cell.
      if (!placed) return false;
    }
    return true;
  }

  // Scans one line (row or column) for missing symbols with zero or one home.
  bool scan_line(State& s, int first, int stride, SymbolMask used, bool& changed) const {
    SymbolMask once = 0, twice = 0;
    for (int k = 0, idx = first; k < order_; ++k, idx += stride) {
      if (s.grid[static_cast<std::size_t>(idx)] != 0) continue;
      const auto cand = candidates(s, idx);
      twice |= once & cand;
      once |= cand;
    }
    const SymbolMask missing = full_ & ~used;
    if (missing & ~once) return false;
    const SymbolMask unique = once & ~twice & missing;
    if (unique) {
      changed = true;
      return place_hidden(s, unique, first, stride);
    }
    return true;
  }

  bool propagate(State& s) const {
    const int cells = order_ * order_;
    bool changed = true;
    while (changed && s.empty > 0) {
      changed = false;
      for (int idx = 0; idx < cells; ++idx) {
        if (s.grid[static_cast<std::size_t>(idx)] != 0) continue;
        const auto cand = candidates(s, idx);
        if (cand == 0) return false;
        if ((cand & (cand - 1)) == 0) {
          place(s, idx, std::countr_zero(cand));
          changed = true;
        }
      }
      for (int r = 0; r < order_; ++r) {
        if (!scan_line(s, r * order_, 1, s.row_used[static_cast<std::size_t>(r)], changed)) return false;
      }
      for (int c = 0; c < order_; ++c) {
        if (!scan_line(s, c, order_, s.col_used[static_cast<std::size_t>(c)], changed)) return false;
      }
    }
    return true;
  }

  // Minimum-remaining-candidates cell, ties broken by row-major position.
  int pick_mrv(const State& s) const {
    int best = -1, best_count = kMaxOrder + 1;
    for (int idx = 0; idx < order_ * order_; ++idx) {
      if (s.grid[static_cast<std::size_t>(idx)] != 0) continue;
      const int k = std::popcount(candidates(s, idx));
      if (k < best_count) {
        best = idx;
        best_count = k;
        if (k <= 2) break;
      }
    }
    return best;
  }

  void count_from(const State& start) {
    State s = start;
    if (!propagate(s)) return;
    if (s.empty == 0) {
      ++found_;
      return;
    }
    const int idx = pick_mrv(s);
    auto cand = candidates(s, idx);
    while (cand && found_ < cap_) {
      const int sym0 = std::countr_zero(cand);
      cand &= cand - 1;
      State child = s;
      place(child, idx, sym0);
      count_from(child);
    }
  }

  // Branching on the first empty cell keeps output in lexicographic order:
  // propagation only fills cells that are identical across the subtree.
  void enumerate_from(const State& start, std::size_t limit, std::vector<LatinSquare>& out) const {
    State s = start;
    if (!propagate(s)) return;
    if (s.empty == 0) {
      out.emplace_back(to_partial(s));
      return;
    }
    int idx = 0;
    while (s.grid[static_cast<std::size_t>(idx)] != 0) ++idx;
    auto cand = candidates(s, idx);
    while (cand && out.size() < limit) {
      const int sym0 = std::countr_zero(cand);
      cand &= cand - 1;
      State child = s;
      place(child, idx, sym0);
      enumerate_from(child, limit, out);
    }
  }

  PartialLatinSquare to_partial(const State& s) const {
    PartialLatinSquare p(order_);
    for (int idx = 0; idx < order_ * order_; ++idx) {
      if (int v = s.grid[static_cast<std::size_t>(idx)]; v != 0) {
        p.insert({idx / order_ + 1, idx % order_ + 1, v});
      }
    }
    return p;
  }

  int order_;
  SymbolMask full_;
  State root_;
  std::array<SymbolMask, kMaxOrder * kMaxOrder> forbidden_;
  bool infeasible_ = false;
  std::uint64_t cap_ = 0;
  std::uint64_t found_ = 0;
};

inline constexpr std::uint64_t kUniquenessCap = 2;

inline CompletionCount count_completions(const PartialLatinSquare& p, std::uint64_t cap) {
  return CompletionSolver(p).count(cap);
}

inline bool is_uniquely_completable(const PartialLatinSquare& p) {
  return count_completions(p, kUniquenessCap).count == 1;
}

inline std::vector<LatinSquare> enumerate_completions(const PartialLatinSquare& p,
                                                      std::size_t limit) {
  return CompletionSolver(p).enumerate(limit);
}

/// The unique completion of `p`; throws NotUniqueError with the count otherwise.
inline LatinSquare complete_unique(const PartialLatinSquare& p) {
  auto found = enumerate_completions(p, 2);
  if (found.size() != 1) throw NotUniqueError(found.size());
  return std::move(found.front());
}

inline std::optional<PartialLatinSquare> propagate(const PartialLatinSquare& p) {
  return CompletionSolver(p).propagate();
}

/// All Latin squares of the given order, lexicographically ordered.
inline std::vector<LatinSquare> all_latin_squares(int order, std::size_t limit = 1'000'000) {
  return enumerate_completions(PartialLatinSquare(order), limit);
}

}  // namespace critset

#endif  // CRITSET_SOLVER_HPP

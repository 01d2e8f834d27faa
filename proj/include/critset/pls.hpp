#ifndef CRITSET_PLS_HPP
#define CRITSET_PLS_HPP

// Partial Latin squares: the carrier type for everything else in critset.
//
// Rows, columns and symbols are 1-indexed at every public interface. Cells are
// stored row-major with 0 marking an empty cell.

#include <algorithm>
#include <array>
#include <bit>
#include <cctype>
#include <compare>
#include <cstdint>
#include <iomanip>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "critset/error.hpp"

namespace critset {

inline constexpr int kMaxOrder = 16;

/// Bit (s - 1) set means symbol s is present.
using SymbolMask = std::uint32_t;

inline constexpr SymbolMask full_mask(int order) {
  return order >= 32 ? ~SymbolMask{0} : (SymbolMask{1} << order) - 1;
}

/// One filled cell (row, col; symbol).
struct Triple {
  int row = 0;
  int col = 0;
  int symbol = 0;

  friend auto operator<=>(const Triple&, const Triple&) = default;
};

inline std::string to_string(const Triple& t) {
  return "(" + std::to_string(t.row) + "," + std::to_string(t.col) + ";" +
         std::to_string(t.symbol) + ")";
}

class PartialLatinSquare {
 public:
  explicit PartialLatinSquare(int order) : order_(order) {
    if (order < 1 || order > kMaxOrder) {
      throw Error(Errc::invalid_order,
                  "order must be in 1.." + std::to_string(kMaxOrder) + ", got " +
                      std::to_string(order));
    }
    cells_.assign(static_cast<std::size_t>(order * order), 0);
    row_used_.assign(static_cast<std::size_t>(order), 0);
    col_used_.assign(static_cast<std::size_t>(order), 0);
  }

  static PartialLatinSquare from_triples(int order, std::span<const Triple> triples) {
    PartialLatinSquare p(order);
    for (const auto& t : triples) p.insert(t);
    return p;
  }

  int order() const noexcept { return order_; }
  int size() const noexcept { return size_; }
  bool is_complete() const noexcept { return size_ == order_ * order_; }

  /// Symbol at (row, col), or 0 for an empty cell.
  int at(int row, int col) const {
    check_cell(row, col);
    return cells_[index(row, col)];
  }

  bool contains(const Triple& t) const {
    return in_range(t) && cells_[index(t.row, t.col)] == t.symbol;
  }

  SymbolMask row_symbols(int row) const { return row_used_.at(static_cast<std::size_t>(row - 1)); }
  SymbolMask col_symbols(int col) const { return col_used_.at(static_cast<std::size_t>(col - 1)); }

  void insert(const Triple& t) {
    if (!in_range(t)) {
      throw Error(Errc::out_of_range, to_string(t) + " outside order " + std::to_string(order_));
    }
    const auto bit = SymbolMask{1} << (t.symbol - 1);
    if (cells_[index(t.row, t.col)] != 0) {
      throw Error(Errc::cell_conflict, "cell (" + std::to_string(t.row) + "," +
                                           std::to_string(t.col) + ") already filled");
    }
    if (row_used_[static_cast<std::size_t>(t.row - 1)] & bit) {
      throw Error(Errc::row_conflict, "symbol " + std::to_string(t.symbol) + " already in row " +
                                          std::to_string(t.row));
    }
    if (col_used_[static_cast<std::size_t>(t.col - 1)] & bit) {
      throw Error(Errc::column_conflict, "symbol " + std::to_string(t.symbol) +
                                             " already in column " + std::to_string(t.col));
    }
    cells_[index(t.row, t.col)] = static_cast<std::uint8_t>(t.symbol);
    row_used_[static_cast<std::size_t>(t.row - 1)] |= bit;
    col_used_[static_cast<std::size_t>(t.col - 1)] |= bit;
    ++size_;
  }

  void erase(const Triple& t) {
    if (!contains(t)) throw Error(Errc::missing_entry, to_string(t) + " is not an entry");
    const auto bit = SymbolMask{1} << (t.symbol - 1);
    cells_[index(t.row, t.col)] = 0;
    row_used_[static_cast<std::size_t>(t.row - 1)] &= ~bit;
    col_used_[static_cast<std::size_t>(t.col - 1)] &= ~bit;
    --size_;
  }

  PartialLatinSquare with_entry(const Triple& t) const {
    auto copy = *this;
    copy.insert(t);
    return copy;
  }

  PartialLatinSquare without_entry(const Triple& t) const {
    auto copy = *this;
    copy.erase(t);
    return copy;
  }

  /// Entries in row-major order.
  std::vector<Triple> triples() const {
    std::vector<Triple> out;
    out.reserve(static_cast<std::size_t>(size_));
    for (int r = 1; r <= order_; ++r) {
      for (int c = 1; c <= order_; ++c) {
        if (int s = cells_[index(r, c)]; s != 0) out.push_back({r, c, s});
      }
    }
    return out;
  }

  /// Row-major cell values, 0 for empty.
  std::span<const std::uint8_t> cells() const noexcept { return cells_; }

  friend bool operator==(const PartialLatinSquare& a, const PartialLatinSquare& b) {
    return a.order_ == b.order_ && a.cells_ == b.cells_;
  }

  /// Lexicographic on (order, row-major cell values).
  friend bool operator<(const PartialLatinSquare& a, const PartialLatinSquare& b) {
    if (a.order_ != b.order_) return a.order_ < b.order_;
    return a.cells_ < b.cells_;
  }

 private:
  std::size_t index(int row, int col) const {
    return static_cast<std::size_t>((row - 1) * order_ + (col - 1));
  }
  bool in_range(const Triple& t) const {
    return t.row >= 1 && t.row <= order_ && t.col >= 1 && t.col <= order_ && t.symbol >= 1 &&
           t.symbol <= order_;
  }
  void check_cell(int row, int col) const {
    if (row < 1 || row > order_ || col < 1 || col > order_) {
      throw Error(Errc::out_of_range, "cell (" + std::to_string(row) + "," + std::to_string(col) +
                                          ") outside order " + std::to_string(order_));
    }
  }

  int order_;
  int size_ = 0;
  std::vector<std::uint8_t> cells_;
  std::vector<SymbolMask> row_used_;
  std::vector<SymbolMask> col_used_;
};

/// A partial Latin square with all n^2 cells filled.
class LatinSquare {
 public:
  explicit LatinSquare(PartialLatinSquare cells) : cells_(std::move(cells)) {
    if (!cells_.is_complete()) {
      throw Error(Errc::precondition, "Latin square needs " +
                                          std::to_string(cells_.order() * cells_.order()) +
                                          " entries, got " + std::to_string(cells_.size()));
    }
  }

  int order() const noexcept { return cells_.order(); }
  int at(int row, int col) const { return cells_.at(row, col); }
  const PartialLatinSquare& partial() const noexcept { return cells_; }

  friend bool operator==(const LatinSquare&, const LatinSquare&) = default;
  friend bool operator<(const LatinSquare& a, const LatinSquare& b) { return a.cells_ < b.cells_; }

 private:
  PartialLatinSquare cells_;
};

/// Back-circulant square: cell (i, j) holds ((i + j - 2) mod n) + 1.
inline LatinSquare cyclic_square(int order) {
  PartialLatinSquare p(order);
  for (int r = 1; r <= order; ++r)
    for (int c = 1; c <= order; ++c) p.insert({r, c, ((r + c - 2) % order) + 1});
  return LatinSquare(std::move(p));
}

/// R_i, C_j and E_k of a partial square, each sorted ascending.
struct LineSets {
  std::vector<std::vector<int>> rows;
  std::vector<std::vector<int>> cols;
  std::vector<std::vector<std::pair<int, int>>> positions;

  std::size_t row_size(int row) const { return rows.at(static_cast<std::size_t>(row - 1)).size(); }
  std::size_t col_size(int col) const { return cols.at(static_cast<std::size_t>(col - 1)).size(); }
  std::size_t symbol_size(int symbol) const {
    return positions.at(static_cast<std::size_t>(symbol - 1)).size();
  }
};

inline LineSets line_sets(const PartialLatinSquare& p) {
  const auto n = static_cast<std::size_t>(p.order());
  LineSets out{std::vector<std::vector<int>>(n), std::vector<std::vector<int>>(n),
               std::vector<std::vector<std::pair<int, int>>>(n)};
  for (const auto& t : p.triples()) {
    out.rows[static_cast<std::size_t>(t.row - 1)].push_back(t.symbol);
    out.cols[static_cast<std::size_t>(t.col - 1)].push_back(t.symbol);
    out.positions[static_cast<std::size_t>(t.symbol - 1)].emplace_back(t.row, t.col);
  }
  for (auto& v : out.rows) std::sort(v.begin(), v.end());
  for (auto& v : out.cols) std::sort(v.begin(), v.end());
  return out;
}

// ---------------------------------------------------------------------------
// Conjugates

enum class Role { row = 0, col = 1, symbol = 2 };

/// Slot k of the conjugate triple takes the coordinate playing role perm[k]
/// in the original, so {col, row, symbol} is the transpose.
using RolePermutation = std::array<Role, 3>;

inline constexpr RolePermutation kIdentityRoles{Role::row, Role::col, Role::symbol};

inline std::array<RolePermutation, 6> all_role_permutations() {
  return {{{Role::row, Role::col, Role::symbol},
           {Role::row, Role::symbol, Role::col},
           {Role::col, Role::row, Role::symbol},
           {Role::col, Role::symbol, Role::row},
           {Role::symbol, Role::row, Role::col},
           {Role::symbol, Role::col, Role::row}}};
}

inline RolePermutation inverse(const RolePermutation& perm) {
  RolePermutation inv{};
  for (int k = 0; k < 3; ++k) inv[static_cast<std::size_t>(perm[static_cast<std::size_t>(k)])] = static_cast<Role>(k);
  return inv;
}

inline PartialLatinSquare conjugate(const PartialLatinSquare& p, const RolePermutation& perm) {
  PartialLatinSquare out(p.order());
  for (const auto& t : p.triples()) {
    const std::array<int, 3> coord{t.row, t.col, t.symbol};
    out.insert({coord[static_cast<std::size_t>(perm[0])], coord[static_cast<std::size_t>(perm[1])],
                coord[static_cast<std::size_t>(perm[2])]});
  }
  return out;
}

inline LatinSquare conjugate(const LatinSquare& l, const RolePermutation& perm) {
  return LatinSquare(conjugate(l.partial(), perm));
}

inline bool is_subset(const PartialLatinSquare& c, const PartialLatinSquare& l) {
  if (c.order() != l.order()) {
    throw Error(Errc::order_mismatch, "orders " + std::to_string(c.order()) + " and " +
                                          std::to_string(l.order()) + " differ");
  }
  const auto a = c.cells();
  const auto b = l.cells();
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] != 0 && a[i] != b[i]) return false;
  }
  return true;
}

inline bool is_subset(const PartialLatinSquare& c, const LatinSquare& l) {
  return is_subset(c, l.partial());
}

/// Entries of `l` at cells where `c` is empty.
inline PartialLatinSquare difference(const LatinSquare& l, const PartialLatinSquare& c) {
  PartialLatinSquare out(l.order());
  for (const auto& t : l.partial().triples()) {
    if (c.at(t.row, t.col) == 0) out.insert(t);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Text format: order line, then n rows of n integers, 0 = empty, '#' comments.

namespace detail {

struct LineCursor {
  std::string_view text;
  std::size_t pos = 0;
  int line_no = 0;

  /// Next non-blank, non-comment line, or false at end of input.
  bool next(std::string_view& line) {
    while (pos < text.size()) {
      auto end = text.find('\n', pos);
      if (end == std::string_view::npos) end = text.size();
      auto raw = text.substr(pos, end - pos);
      pos = end + 1;
      ++line_no;
      auto first = raw.find_first_not_of(" \t\r");
      if (first == std::string_view::npos || raw[first] == '#') continue;
      line = raw.substr(first);
      return true;
    }
    return false;
  }
};

inline std::vector<std::string_view> tokens(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    auto start = i;
    while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    if (i > start) out.push_back(line.substr(start, i - start));
  }
  return out;
}

inline bool to_int(std::string_view tok, int& value) {
  if (tok.empty() || tok.size() > 6) return false;
  value = 0;
  for (char ch : tok) {
    if (ch < '0' || ch > '9') return false;
    value = value * 10 + (ch - '0');
  }
  return true;
}

[[noreturn]] inline void parse_fail(int line_no, const std::string& what) {
  throw Error(Errc::parse_error, "line " + std::to_string(line_no) + ": " + what);
}

inline PartialLatinSquare parse_grid(LineCursor& cur, std::string_view order_line) {
  auto head = tokens(order_line);
  int order = 0;
  if (head.size() != 1 || !to_int(head[0], order)) {
    parse_fail(cur.line_no, "expected the order on its own line");
  }
  if (order < 1 || order > kMaxOrder) {
    parse_fail(cur.line_no, "order " + std::to_string(order) + " outside 1.." +
                                std::to_string(kMaxOrder));
  }
  PartialLatinSquare p(order);
  for (int r = 1; r <= order; ++r) {
    std::string_view line;
    if (!cur.next(line)) parse_fail(cur.line_no, "missing row " + std::to_string(r));
    auto toks = tokens(line);
    if (static_cast<int>(toks.size()) != order) {
      parse_fail(cur.line_no, "row " + std::to_string(r) + " has " + std::to_string(toks.size()) +
                                  " entries, expected " + std::to_string(order));
    }
    for (int c = 1; c <= order; ++c) {
      const std::string cell = "cell (" + std::to_string(r) + "," + std::to_string(c) + ")";
      int v = 0;
      if (!to_int(toks[static_cast<std::size_t>(c - 1)], v)) {
        parse_fail(cur.line_no, cell + ": '" + std::string(toks[static_cast<std::size_t>(c - 1)]) +
                                    "' is not a non-negative integer");
      }
      if (v > order) {
        parse_fail(cur.line_no, cell + ": symbol " + std::to_string(v) + " outside 0.." +
                                    std::to_string(order));
      }
      if (v == 0) continue;
      try {
        p.insert({r, c, v});
      } catch (const Error& e) {
        parse_fail(cur.line_no, cell + ": " + e.what());
      }
    }
  }
  return p;
}

}  // namespace detail

/// Parses every grid in `text`, in order.
inline std::vector<PartialLatinSquare> parse_many(std::string_view text) {
  detail::LineCursor cur{text};
  std::vector<PartialLatinSquare> out;
  std::string_view line;
  while (cur.next(line)) out.push_back(detail::parse_grid(cur, line));
  return out;
}

inline PartialLatinSquare parse(std::string_view text) {
  detail::LineCursor cur{text};
  std::string_view line;
  if (!cur.next(line)) throw Error(Errc::parse_error, "empty input");
  auto p = detail::parse_grid(cur, line);
  if (cur.next(line)) detail::parse_fail(cur.line_no, "unexpected content after the grid");
  return p;
}

/// Rows are right-aligned to the width of the largest symbol.
inline std::string serialize(const PartialLatinSquare& p) {
  const int width = p.order() >= 10 ? 2 : 1;
  std::ostringstream os;
  os << p.order() << '\n';
  for (int r = 1; r <= p.order(); ++r) {
    for (int c = 1; c <= p.order(); ++c) {
      if (c > 1) os << ' ';
      os << std::setw(width) << p.at(r, c);
    }
    os << '\n';
  }
  return os.str();
}

inline std::string serialize(const LatinSquare& l) { return serialize(l.partial()); }

}  // namespace critset

#endif  // CRITSET_PLS_HPP

#ifndef CRITSET_BOUNDS_HPP
#define CRITSET_BOUNDS_HPP

// Closed-form bounds on the largest critical set lcs(n) and the table of
// known values for orders 1..10.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_bin_float.hpp>

#include "critset/error.hpp"

namespace critset {

namespace detail {

inline void require_positive_order(std::int64_t n) {
  if (n < 1) throw Error(Errc::invalid_order, "order must be at least 1, got " + std::to_string(n));
}

/// floor(sqrt(v)) exactly.
inline std::uint64_t isqrt(std::uint64_t v) {
  auto r = static_cast<std::uint64_t>(std::sqrt(static_cast<long double>(v)));
  while (r > 0 && r * r > v) --r;
  while ((r + 1) * (r + 1) <= v) ++r;
  return r;
}

}  // namespace detail

/// n^2 - n.
inline std::int64_t curran_van_rees(std::int64_t n) {
  detail::require_positive_order(n);
  return n * n - n;
}

/// n^2 - 3n + 3: no critical set of order n is larger.
inline std::int64_t theorem_bound(std::int64_t n) {
  detail::require_positive_order(n);
  return n * n - 3 * n + 3;
}

/// floor(n^2 - n^{3/2}) = n^2 - ceil(sqrt(n^3)), exact for n <= 2^21.
inline std::int64_t conjecture_one(std::int64_t n) {
  detail::require_positive_order(n);
  if (n > (std::int64_t{1} << 21)) throw Error(Errc::out_of_range, "n^3 overflows 64 bits");
  const auto cube = static_cast<std::uint64_t>(n) * static_cast<std::uint64_t>(n) * static_cast<std::uint64_t>(n);
  auto root = detail::isqrt(cube);
  if (root * root != cube) ++root;
  return n * n - static_cast<std::int64_t>(root);
}

/// 4^k - 3^k, the known lower bound on lcs(2^k).
inline std::int64_t stinson_van_rees_lower(int k) {
  if (k < 0 || k > 30) throw Error(Errc::out_of_range, "k must be in 0..30, got " + std::to_string(k));
  std::int64_t four = 1, three = 1;
  for (int i = 0; i < k; ++i) {
    four *= 4;
    three *= 3;
  }
  return four - three;
}

/// floor((1 - (3/4)^{log2 n}) n^2). Since (3/4)^{log2 n} n^2 = 3^{log2 n},
/// this is n^2 - ceil(3^{log2 n}). The long double estimate is accepted only
/// when it is far from an integer; otherwise it is redone in 50 digits.
inline std::int64_t conjecture_two(std::int64_t n) {
  detail::require_positive_order(n);
  if (n > (std::int64_t{1} << 30)) throw Error(Errc::out_of_range, "order too large");
  const long double y = std::exp2(std::log2(static_cast<long double>(n)) * std::log2(3.0L));
  const long double frac = y - std::floor(y);
  std::int64_t ceil_y = 0;
  if (frac > 1e-9L && frac < 1 - 1e-9L) {
    ceil_y = static_cast<std::int64_t>(std::ceil(y));
  } else {
    // Near an integer (always the case for powers of two, where y = 3^k).
    using Big = boost::multiprecision::cpp_bin_float_50;
    const Big big = boost::multiprecision::pow(Big(3), boost::multiprecision::log2(Big(n)));
    const Big nearest = boost::multiprecision::round(big);
    const Big snapped = boost::multiprecision::abs(big - nearest) < Big("1e-30") ? nearest : boost::multiprecision::ceil(big);
    ceil_y = snapped.convert_to<std::int64_t>();
  }
  return n * n - ceil_y;
}

struct KnownLcs {
  int value;
  bool is_exact;  ///< false: the value is a lower bound
};

/// Published lcs(n) for n = 1..10; orders 7..10 carry lower bounds only.
inline KnownLcs known_lcs(int n) {
  static constexpr KnownLcs table[] = {{0, true},  {1, true},   {3, true},   {7, true},   {11, true},
                                       {18, true}, {25, false}, {37, false}, {44, false}, {57, false}};
  if (n < 1 || n > 10) throw Error(Errc::unknown_order, "no recorded lcs value for order " + std::to_string(n));
  return table[n - 1];
}

struct BoundsRow {
  int n = 0;
  std::optional<KnownLcs> known;  ///< empty beyond order 10
  std::int64_t theorem = 0;
  std::int64_t conj1 = 0;
  std::int64_t conj2 = 0;
};

inline std::vector<BoundsRow> bounds_table(int n_max) {
  std::vector<BoundsRow> rows;
  for (int n = 1; n <= n_max; ++n) {
    BoundsRow row{n, std::nullopt, theorem_bound(n), conjecture_one(n), conjecture_two(n)};
    if (n <= 10) row.known = known_lcs(n);
    rows.push_back(row);
  }
  return rows;
}

inline std::string known_cell(const BoundsRow& row) {
  if (!row.known) return "?";
  return (row.known->is_exact ? "" : "≥") + std::to_string(row.known->value);
}

/// Aligned plain-text table.
inline std::string render_text(const std::vector<BoundsRow>& rows) {
  const char* headers[] = {"n", "lcs", "n^2-3n+3", "floor(n^2-n^1.5)", "conj2"};
  std::vector<std::vector<std::string>> cells;
  for (const auto& r : rows) {
    cells.push_back({std::to_string(r.n), known_cell(r), std::to_string(r.theorem),
                     std::to_string(r.conj1), std::to_string(r.conj2)});
  }
  // Width in code points so the two-byte-wide "≥" aligns.
  auto width = [](const std::string& s) {
    std::size_t w = 0;
    for (unsigned char ch : s) w += (ch & 0xC0) != 0x80 ? 1 : 0;
    return w;
  };
  std::size_t widths[5];
  for (int k = 0; k < 5; ++k) {
    widths[k] = width(headers[k]);
    for (const auto& row : cells) widths[k] = std::max(widths[k], width(row[static_cast<std::size_t>(k)]));
  }
  std::ostringstream os;
  auto emit = [&](auto get) {
    for (int k = 0; k < 5; ++k) {
      const std::string s = get(k);
      if (k > 0) os << " | ";
      os << std::string(widths[k] - width(s), ' ') << s;
    }
    os << '\n';
  };
  emit([&](int k) { return std::string(headers[k]); });
  for (int k = 0; k < 5; ++k) {
    if (k > 0) os << "-+-";
    os << std::string(widths[k], '-');
  }
  os << '\n';
  for (const auto& row : cells) emit([&](int k) { return row[static_cast<std::size_t>(k)]; });
  return os.str();
}

/// CSV with a header line; lcs_exact is 1, 0, or empty when unknown.
inline std::string render_csv(const std::vector<BoundsRow>& rows) {
  std::ostringstream os;
  os << "n,lcs,lcs_exact,theorem_bound,conjecture_one,conjecture_two\n";
  for (const auto& r : rows) {
    os << r.n << ',';
    if (r.known) os << r.known->value << ',' << (r.known->is_exact ? 1 : 0);
    else os << ',';
    os << ',' << r.theorem << ',' << r.conj1 << ',' << r.conj2 << '\n';
  }
  return os.str();
}

}  // namespace critset

#endif  // CRITSET_BOUNDS_HPP

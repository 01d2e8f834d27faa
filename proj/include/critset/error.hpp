#ifndef CRITSET_ERROR_HPP
#define CRITSET_ERROR_HPP

#include <cstdint>
#include <stdexcept>
#include <string>

namespace critset {

enum class Errc {
  invalid_order,
  out_of_range,
  cell_conflict,
  row_conflict,
  column_conflict,
  missing_entry,
  order_mismatch,
  parse_error,
  not_unique,
  not_subset,
  precondition,
  capability,
  unknown_order,
  not_found,
};

inline const char* to_string(Errc code) {
  switch (code) {
    case Errc::invalid_order: return "invalid-order";
    case Errc::out_of_range: return "out-of-range";
    case Errc::cell_conflict: return "cell-conflict";
    case Errc::row_conflict: return "row-conflict";
    case Errc::column_conflict: return "column-conflict";
    case Errc::missing_entry: return "missing-entry";
    case Errc::order_mismatch: return "order-mismatch";
    case Errc::parse_error: return "parse-error";
    case Errc::not_unique: return "not-unique";
    case Errc::not_subset: return "not-subset";
    case Errc::precondition: return "precondition";
    case Errc::capability: return "capability";
    case Errc::unknown_order: return "unknown-order";
    case Errc::not_found: return "not-found";
  }
  return "unknown";
}

/// Every failure raised by the library carries one of the codes above.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

/// Raised by complete_unique(); count() is 0 (no completion) or 2 (at least two).
class NotUniqueError : public Error {
 public:
  explicit NotUniqueError(std::uint64_t count)
      : Error(Errc::not_unique, count == 0 ? "partial square has no completion"
                                           : "partial square has at least 2 completions"),
        count_(count) {}

  std::uint64_t count() const noexcept { return count_; }

 private:
  std::uint64_t count_;
};

}  // namespace critset

#endif  // CRITSET_ERROR_HPP

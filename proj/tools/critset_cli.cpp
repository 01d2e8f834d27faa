// critset: command-line access to the critical-set toolkit.
//
// Exit status: 0 success, 1 predicate false, 2 usage or input error.

#include <chrono>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "critset/critset.hpp"

namespace {

constexpr int kOk = 0;
constexpr int kFalse = 1;
constexpr int kUsage = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

critset::PartialLatinSquare read_pls(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return critset::parse(buf.str());
}

critset::LatinSquare read_latin(const std::string& path) {
  auto p = read_pls(path);
  if (!p.is_complete()) throw UsageError(path + " is not a full Latin square");
  return critset::LatinSquare(std::move(p));
}

critset::Triple parse_entry_arg(const std::string& text) {
  std::istringstream in(text);
  critset::Triple t;
  std::string extra;
  if (!(in >> t.row >> t.col >> t.symbol) || (in >> extra)) {
    throw UsageError("--entry expects \"row col symbol\", got \"" + text + "\"");
  }
  return t;
}

const char* yes_no(bool b) { return b ? "yes" : "no"; }

std::string check_line(const critset::CheckResult& r) {
  if (!r.pass()) return "fail: " + r.violations.front();
  return r.applicable ? "pass" : "pass (not applicable)";
}

// ---------------------------------------------------------------------------

int cmd_verify(const std::string& file, bool expect_critical, bool expect_uc) {
  const auto c = read_pls(file);
  const auto report = critset::analyze(c);
  std::cout << "order " << c.order() << '\n'
            << "size " << c.size() << '\n'
            << "uniquely_completable " << yes_no(report.is_uc) << '\n';
  if (!report.is_uc) {
    const auto count = critset::count_completions(c, 2).count;
    std::cout << "completions " << (count == 0 ? "0" : "at least 2") << '\n'
              << "critical no\n"
              << "verdict not uniquely completable\n";
  } else {
    std::cout << "critical " << yes_no(report.is_critical) << '\n'
              << "removable_entries " << report.removable_entries.size();
    for (const auto& t : report.removable_entries) std::cout << ' ' << critset::to_string(t);
    std::cout << '\n'
              << "verdict " << (report.is_critical ? "critical" : "UC but not minimal") << '\n'
              << "# completion\n"
              << critset::serialize(*report.completion);
  }
  if (expect_critical && !report.is_critical) return kFalse;
  if (expect_uc && !report.is_uc) return kFalse;
  return kOk;
}

int cmd_complete(const std::string& file, std::size_t limit) {
  const auto p = read_pls(file);
  const auto found = critset::enumerate_completions(p, limit);
  std::cout << "count " << found.size();
  if (found.size() == limit) {
    // Distinguish "exactly limit" from "more than limit".
    if (critset::count_completions(p, limit + 1).count > limit) std::cout << " (limit reached)";
  }
  std::cout << '\n';
  for (std::size_t i = 0; i < found.size(); ++i) {
    std::cout << "# completion " << i + 1 << '\n' << critset::serialize(found[i]);
  }
  return kOk;
}

int cmd_stats(const std::string& file) {
  const auto c = read_pls(file);
  const int n = c.order();
  const auto stats = critset::union_stats(c);
  std::cout << "order " << n << '\n' << "size " << c.size() << '\n' << "x\n";
  const int width = n >= 10 ? 2 : 1;
  for (const auto& row : stats.x) {
    for (std::size_t j = 0; j < row.size(); ++j) std::cout << (j ? " " : "") << std::setw(width) << row[j];
    std::cout << '\n';
  }
  std::cout << "f";
  for (int f : stats.f) std::cout << ' ' << f;
  std::cout << '\n'
            << "lhs_sum " << stats.lhs_sum << '\n'
            << "rhs_sum " << stats.rhs_sum << '\n'
            << "residual " << stats.residual() << '\n'
            << "max_x_on_empty_cells " << stats.max_x_on_empty << '\n';
  const auto profile = critset::emptiness_profile(c);
  std::cout << "empty_row " << yes_no(profile.has_empty_row) << '\n'
            << "empty_col " << yes_no(profile.has_empty_col) << '\n'
            << "missing_symbol " << yes_no(profile.has_missing_symbol) << '\n'
            << "line_count_guard " << check_line(critset::line_count_guard(c)) << '\n';
  const auto report = critset::analyze(c);
  if (!report.is_critical) {
    std::cout << "single_hole_rows skipped (not critical)\n"
              << "multi_hole_rows skipped (not critical)\n";
  } else {
    std::cout << "single_hole_rows " << check_line(critset::check_single_hole_rows(c, report)) << '\n'
              << "multi_hole_rows "
              << check_line(critset::check_multi_hole_rows(c, *report.completion, report)) << '\n';
  }
  return stats.residual() == 0 ? kOk : kFalse;
}

int cmd_bounds(int max_n, bool csv) {
  if (max_n < 1) throw UsageError("--max-n must be at least 1");
  const auto rows = critset::bounds_table(max_n);
  std::cout << (csv ? critset::render_csv(rows) : critset::render_text(rows));
  return kOk;
}

int cmd_search(int order, const std::string& mode, const std::string& objective, int restarts,
               std::uint64_t seed, const std::string& host_file) {
  critset::SearchResult result;
  if (mode == "exact") {
    result = objective == "smallest" ? critset::exhaustive_scs(order) : critset::exhaustive_lcs(order);
  } else {
    const auto host = host_file.empty() ? critset::cyclic_square(order) : read_latin(host_file);
    if (host.order() != order) throw UsageError("--host has order " + std::to_string(host.order()));
    result = critset::greedy_large(host, restarts, seed);
  }
  std::cout << critset::render_report(result);
  const auto check = critset::analyze(result.witness);
  const bool ok = check.is_critical && *check.completion == result.host;
  std::cout << "witness_critical " << yes_no(ok) << '\n';
  if (order >= 2) {
    std::cout << "within_bound " << yes_no(result.best_size <= critset::theorem_bound(order)) << " ("
              << critset::theorem_bound(order) << ")\n";
  }
  return ok ? kOk : kFalse;
}

int cmd_intercalates(const std::string& file) {
  const auto l = read_latin(file);
  const auto list = critset::find_intercalates(l);
  std::cout << "count " << list.size() << '\n';
  for (const auto& ic : list) {
    std::cout << "rows " << ic.row1 << ' ' << ic.row2 << " cols " << ic.col1 << ' ' << ic.col2
              << " symbols " << ic.symbol1 << ' ' << ic.symbol2 << '\n';
  }
  return kOk;
}

void print_pair(const critset::Trade& t) {
  const int n = t.interchange.order();
  const int width = n >= 10 ? 2 : 1;
  auto cell = [&](const critset::PartialLatinSquare& p, int r, int c) {
    std::ostringstream os;
    os << std::setw(width);
    if (p.at(r, c)) os << p.at(r, c);
    else os << '.';
    return os.str();
  };
  const int grid_width = n * (width + 1) - 1;
  std::cout << std::left << std::setw(grid_width) << "I" << "   I'" << std::right << '\n';
  for (int r = 1; r <= n; ++r) {
    for (int c = 1; c <= n; ++c) std::cout << (c > 1 ? " " : "") << cell(t.interchange, r, c);
    std::cout << "   ";
    for (int c = 1; c <= n; ++c) std::cout << (c > 1 ? " " : "") << cell(t.mate, r, c);
    std::cout << '\n';
  }
}

int cmd_trades(const std::string& file, const std::string& set_file, const std::string& entry, bool all) {
  const auto l = read_latin(file);
  if (all) {
    const auto trades = critset::all_trades(l);
    std::cout << "count " << trades.size() << '\n';
    for (const auto& t : trades) {
      std::cout << "size " << t.size() << ':';
      for (const auto& e : t.triples()) std::cout << ' ' << critset::to_string(e);
      std::cout << '\n';
    }
    return kOk;
  }
  if (set_file.empty() || entry.empty()) throw UsageError("trades needs --all or both --set and --entry");
  const auto c = read_pls(set_file);
  const auto t = parse_entry_arg(entry);
  if (!c.contains(t)) throw UsageError(critset::to_string(t) + " is not an entry of " + set_file);
  if (!critset::is_subset(c, l)) throw UsageError(set_file + " is not contained in " + file);
  if (!critset::is_uniquely_completable(c.without_entry(t))) {
    const auto trade = critset::witness_trade(l, c, t);
    int meets = 0;
    for (const auto& e : trade.interchange.triples()) meets += c.contains(e) ? 1 : 0;
    std::cout << "trade_size " << trade.interchange.size() << '\n'
              << "intersection_with_set " << meets << ' ' << critset::to_string(t) << '\n'
              << "valid " << yes_no(critset::verify_trade(trade)) << '\n';
    print_pair(trade);
    return kOk;
  }
  std::cout << "no witness: removing " << critset::to_string(t) << " keeps the set uniquely completable\n";
  return kFalse;
}

int cmd_corpus(const std::string& action, const std::string& name) {
  const auto corpus = critset::Corpus::load_default();
  if (action == "list") {
    for (const auto& n : corpus.list()) {
      const auto& e = corpus.get(n);
      std::cout << n << ' ' << critset::to_string(e.kind) << " order " << e.data.front().order() << " size "
                << e.claimed_size << '\n';
    }
    return kOk;
  }
  if (action == "show") {
    if (name.empty()) throw UsageError("corpus show needs a name");
    std::cout << corpus.get(name).text;
    return kOk;
  }
  if (action == "verify-all") {
    const auto report = critset::verify_corpus(corpus);
    for (const auto& e : report.entries) {
      std::cout << (e.passed() ? "PASS " : "FAIL ") << e.name << " (" << critset::to_string(e.kind) << ", size "
                << e.size << ")\n";
      for (const auto& c : e.checks) std::cout << "  ok   " << c << '\n';
      for (const auto& f : e.failures) std::cout << "  FAIL " << f << '\n';
      if (e.profile) {
        std::cout << "  profile empty_row=" << yes_no(e.profile->has_empty_row)
                  << " empty_col=" << yes_no(e.profile->has_empty_col)
                  << " missing_symbol=" << yes_no(e.profile->has_missing_symbol) << '\n';
      }
    }
    return report.all_passed() ? kOk : kFalse;
  }
  throw UsageError("unknown corpus action '" + action + "' (list, show, verify-all)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Critical sets in Latin squares"};
  app.require_subcommand(1);
  bool verbose = false;
  app.add_flag("--verbose", verbose, "Report elapsed time on stderr");

  std::string file, set_file, entry, mode = "exact", objective = "largest", host_file, action, name;
  bool expect_critical = false, expect_uc = false, csv = false, all = false;
  std::size_t limit = 100;
  int max_n = 10, order = 0, restarts = 100;
  std::uint64_t seed = 1;

  auto* verify = app.add_subcommand("verify", "Decide unique completability and criticality");
  verify->add_option("file", file, ".pls file")->required();
  auto* ec = verify->add_flag("--expect-critical", expect_critical, "Exit 1 unless critical");
  verify->add_flag("--expect-uc", expect_uc, "Exit 1 unless uniquely completable")->excludes(ec);

  auto* complete = app.add_subcommand("complete", "Enumerate completions in lexicographic order");
  complete->add_option("file", file, ".pls file")->required();
  complete->add_option("--limit", limit, "Maximum completions to print")->check(CLI::PositiveNumber);

  auto* stats = app.add_subcommand("stats", "Union statistics and row checks");
  stats->add_option("file", file, ".pls file")->required();

  auto* bounds = app.add_subcommand("bounds", "Bounds on the largest critical set");
  bounds->add_option("--max-n", max_n, "Largest order");
  bounds->add_flag("--csv", csv, "CSV output");

  auto* search = app.add_subcommand("search", "Search for large (or small) critical sets");
  search->add_option("--order", order, "Order")->required();
  search->add_option("--mode", mode, "exact or greedy")->check(CLI::IsMember({"exact", "greedy"}));
  search->add_option("--objective", objective, "exact mode: largest or smallest")
      ->check(CLI::IsMember({"largest", "smallest"}));
  search->add_option("--restarts", restarts, "Greedy restarts")->check(CLI::PositiveNumber);
  search->add_option("--seed", seed, "Greedy seed");
  search->add_option("--host", host_file, "Greedy host square (default: cyclic)");

  auto* intercalates = app.add_subcommand("intercalates", "List 2x2 Latin subsquares");
  intercalates->add_option("file", file, ".pls Latin square")->required();

  auto* trades = app.add_subcommand("trades", "Witness trades or the full trade list");
  trades->add_option("file", file, ".pls Latin square")->required();
  trades->add_option("--set", set_file, "Critical set contained in the square");
  trades->add_option("--entry", entry, "\"row col symbol\" of the set");
  trades->add_flag("--all", all, "List every trade (order <= 4)");

  auto* corpus = app.add_subcommand("corpus", "Embedded examples");
  corpus->add_option("action", action, "list, show or verify-all")->required();
  corpus->add_option("name", name, "Entry name for show");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  const auto start = std::chrono::steady_clock::now();
  int status = kUsage;
  try {
    if (*verify) status = cmd_verify(file, expect_critical, expect_uc);
    else if (*complete) status = cmd_complete(file, limit);
    else if (*stats) status = cmd_stats(file);
    else if (*bounds) status = cmd_bounds(max_n, csv);
    else if (*search) status = cmd_search(order, mode, objective, restarts, seed, host_file);
    else if (*intercalates) status = cmd_intercalates(file);
    else if (*trades) status = cmd_trades(file, set_file, entry, all);
    else if (*corpus) status = cmd_corpus(action, name);
  } catch (const std::exception& e) {
    std::cout.flush();
    std::cerr << "error: " << e.what() << '\n';
    status = kUsage;
  }
  if (verbose) {
    const auto ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    std::cerr << "elapsed " << std::fixed << std::setprecision(1) << ms << " ms\n";
  }
  return status;
}

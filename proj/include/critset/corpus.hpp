#ifndef CRITSET_CORPUS_HPP
#define CRITSET_CORPUS_HPP

// Named example squares stored as .pls files. Metadata lives in header
// comments of the form "# key: value":
//   kind    latin-square | critical-set | trade-pair | completion
//   size    claimed number of entries (trade pairs: per grid)
//   claims  comma-separated, e.g. "critical, empty-row, missing-symbol"
//   of      for completions, the name of the set they complete

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "critset/error.hpp"
#include "critset/pls.hpp"

#ifndef CRITSET_DEFAULT_DATA_DIR
#define CRITSET_DEFAULT_DATA_DIR "data/corpus"
#endif

namespace critset {

enum class EntryKind { latin_square, critical_set, trade_pair, completion };

inline const char* to_string(EntryKind kind) {
  switch (kind) {
    case EntryKind::latin_square: return "latin-square";
    case EntryKind::critical_set: return "critical-set";
    case EntryKind::trade_pair: return "trade-pair";
    case EntryKind::completion: return "completion";
  }
  return "unknown";
}

struct CorpusEntry {
  std::string name;
  EntryKind kind = EntryKind::critical_set;
  std::vector<PartialLatinSquare> data;
  int claimed_size = 0;
  std::vector<std::string> claims;
  std::string completes;  ///< completions only
  std::string text;       ///< the file as stored

  bool claims_has(const std::string& claim) const {
    return std::find(claims.begin(), claims.end(), claim) != claims.end();
  }
};

namespace detail {

inline std::string trim(std::string s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

inline EntryKind parse_kind(const std::string& name, const std::string& value) {
  if (value == "latin-square") return EntryKind::latin_square;
  if (value == "critical-set") return EntryKind::critical_set;
  if (value == "trade-pair") return EntryKind::trade_pair;
  if (value == "completion") return EntryKind::completion;
  throw Error(Errc::parse_error, name + ": unknown kind '" + value + "'");
}

}  // namespace detail

inline CorpusEntry parse_entry(const std::string& name, const std::string& text) {
  CorpusEntry e;
  e.name = name;
  e.text = text;
  std::istringstream in(text);
  std::string line;
  bool has_kind = false;
  while (std::getline(in, line)) {
    line = detail::trim(line);
    if (line.empty() || line[0] != '#') continue;
    const auto colon = line.find(':');
    if (colon == std::string::npos) continue;
    const auto key = detail::trim(line.substr(1, colon - 1));
    const auto value = detail::trim(line.substr(colon + 1));
    if (key == "kind") {
      e.kind = detail::parse_kind(name, value);
      has_kind = true;
    } else if (key == "size") {
      e.claimed_size = std::stoi(value);
    } else if (key == "of") {
      e.completes = value;
    } else if (key == "claims") {
      std::istringstream items(value);
      std::string item;
      while (std::getline(items, item, ',')) {
        if (auto t = detail::trim(item); !t.empty()) e.claims.push_back(t);
      }
    }
  }
  if (!has_kind) throw Error(Errc::parse_error, name + ": missing '# kind:' header");
  try {
    e.data = parse_many(text);
  } catch (const Error& err) {
    throw Error(Errc::parse_error, name + ": " + err.what());
  }
  const std::size_t grids = e.kind == EntryKind::trade_pair ? 2 : 1;
  if (e.data.size() != grids) {
    throw Error(Errc::parse_error, name + ": expected " + std::to_string(grids) + " grid(s), found " +
                                       std::to_string(e.data.size()));
  }
  for (const auto& p : e.data) {
    if (p.size() != e.claimed_size) {
      throw Error(Errc::parse_error, name + ": claimed size " + std::to_string(e.claimed_size) +
                                         " but grid has " + std::to_string(p.size()) + " entries");
    }
  }
  return e;
}

class Corpus {
 public:
  /// Loads every *.pls file in `dir`; names are file stems.
  static Corpus load(const std::filesystem::path& dir) {
    if (!std::filesystem::is_directory(dir)) {
      throw Error(Errc::not_found, "corpus directory " + dir.string() + " does not exist");
    }
    Corpus c;
    for (const auto& file : std::filesystem::directory_iterator(dir)) {
      if (file.path().extension() != ".pls") continue;
      std::ifstream in(file.path(), std::ios::binary);
      std::ostringstream buf;
      buf << in.rdbuf();
      const auto name = file.path().stem().string();
      c.entries_.emplace(name, parse_entry(name, buf.str()));
    }
    return c;
  }

  /// CRITSET_DATA_DIR if set, else the directory baked in at build time.
  static Corpus load_default() {
    if (const char* env = std::getenv("CRITSET_DATA_DIR"); env && *env) return load(env);
    return load(CRITSET_DEFAULT_DATA_DIR);
  }

  /// Catalog names, sorted; derived completions are not listed.
  std::vector<std::string> list() const {
    std::vector<std::string> out;
    for (const auto& [name, e] : entries_) {
      if (e.kind != EntryKind::completion) out.push_back(name);
    }
    return out;
  }

  const CorpusEntry& get(const std::string& name) const {
    auto it = entries_.find(name);
    if (it == entries_.end()) throw Error(Errc::not_found, "no corpus entry named '" + name + "'");
    return it->second;
  }

  /// The stored completion of a critical-set entry, if one is checked in.
  std::optional<LatinSquare> completion_of(const std::string& name) const {
    for (const auto& [stem, e] : entries_) {
      if (e.kind == EntryKind::completion && e.completes == name) return LatinSquare(e.data.front());
    }
    return std::nullopt;
  }

 private:
  std::map<std::string, CorpusEntry> entries_;
};

}  // namespace critset

#endif  // CRITSET_CORPUS_HPP

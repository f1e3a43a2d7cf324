#pragma once

#include <istream>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace easyvoice::textaccel {

class AbbreviationError : public std::runtime_error {
 public:
  AbbreviationError(const std::string& what, std::size_t line = 0) : std::runtime_error(what), line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

// User-defined short forms. Keys are single tokens (no whitespace or
// punctuation) compared case-insensitively.
class AbbreviationTable {
 public:
  AbbreviationTable() = default;

  /// Adds or replaces an abbreviation. Throws AbbreviationError when the
  /// abbreviation is not a single token or the expansion is empty.
  void define(std::string_view abbreviation, std::string_view expansion);

  /// Like define() but rejects a case-insensitive duplicate.
  void insert(std::string_view abbreviation, std::string_view expansion);

  bool erase(std::string_view abbreviation);

  std::optional<std::string_view> lookup(std::string_view token) const;
  std::size_t size() const noexcept { return entries_.size(); }
  bool empty() const noexcept { return entries_.empty(); }

  /// (abbreviation as defined, expansion) pairs, ordered by folded key.
  std::vector<std::pair<std::string, std::string>> entries() const;

 private:
  struct Entry {
    std::string abbreviation;
    std::string expansion;
  };
  std::map<std::string, Entry, std::less<>> entries_;  // folded key
};

/// Replaces every whole token matching an abbreviation with its expansion in
/// a single left-to-right pass. Expansions are never re-scanned.
std::string expand_abbreviations(const AbbreviationTable& table, std::string_view text);

/// `abbr<TAB>expansion` lines; `#` lines and blank lines are skipped.
AbbreviationTable load_abbreviations(std::istream& in);
AbbreviationTable load_abbreviations_file(const std::string& path);

/// Rewrites the file atomically (temp file + rename).
void save_abbreviations_file(const AbbreviationTable& table, const std::string& path);

}  // namespace easyvoice::textaccel

#pragma once

#include <cstddef>
#include <cstdint>
#include <istream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace easyvoice::textaccel {

inline constexpr std::size_t kDefaultMaxSuggestions = 8;

struct DictionaryEntry {
  std::string word;
  std::uint64_t frequency = 0;

  friend bool operator==(const DictionaryEntry&, const DictionaryEntry&) = default;
};

class DictionaryError : public std::runtime_error {
 public:
  /// line is 1-based; 0 means "not tied to a source line".
  DictionaryError(const std::string& what, std::size_t line = 0) : std::runtime_error(what), line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

// Frequency-ranked word list for prefix completion. Immutable once built.
//
// Entries are kept sorted by case-folded spelling so that every word sharing
// a prefix sits in one contiguous range; a query ranks only that range.
class FrequencyDictionary {
 public:
  FrequencyDictionary() = default;

  /// Throws DictionaryError on an empty word, whitespace in a word, a
  /// case-insensitive duplicate, or max_suggestions == 0.
  explicit FrequencyDictionary(std::vector<DictionaryEntry> entries,
                               std::size_t max_suggestions = kDefaultMaxSuggestions);

  std::size_t size() const noexcept { return entries_.size(); }
  bool empty() const noexcept { return entries_.empty(); }
  std::size_t max_suggestions() const noexcept { return max_suggestions_; }
  const std::vector<DictionaryEntry>& entries() const noexcept { return entries_; }

  /// Words starting with prefix (ASCII case-insensitive), most frequent
  /// first, ties by folded spelling ascending, at most max_suggestions.
  /// An empty prefix yields the global top words.
  std::vector<std::string> complete(std::string_view prefix) const;

 private:
  std::vector<DictionaryEntry> entries_;  // sorted by folded_
  std::vector<std::string> folded_;
  std::vector<std::size_t> global_top_;  // indices, precomputed for the empty prefix
  std::size_t max_suggestions_ = kDefaultMaxSuggestions;
};

/// Parses `word<TAB>frequency` lines; `#` lines and blank lines are skipped.
FrequencyDictionary load_dictionary(std::istream& in, std::size_t max_suggestions = kDefaultMaxSuggestions);
FrequencyDictionary load_dictionary_file(const std::string& path,
                                         std::size_t max_suggestions = kDefaultMaxSuggestions);

std::vector<std::string> complete(const FrequencyDictionary& dict, std::string_view prefix);

}  // namespace easyvoice::textaccel

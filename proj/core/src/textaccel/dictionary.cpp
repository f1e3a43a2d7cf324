#include "easyvoice/textaccel/dictionary.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <numeric>

#include "easyvoice/textaccel/text_util.hpp"

namespace easyvoice::textaccel {

namespace {

// Strips a trailing CR so files with DOS line endings load.
std::string_view chomp(std::string_view line) {
  if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
  return line;
}

}  // namespace

FrequencyDictionary::FrequencyDictionary(std::vector<DictionaryEntry> entries, std::size_t max_suggestions)
    : max_suggestions_(max_suggestions) {
  if (max_suggestions_ == 0) throw DictionaryError("max_suggestions must be at least 1");
  for (const auto& e : entries) {
    if (e.word.empty()) throw DictionaryError("empty word");
    if (has_space(e.word)) throw DictionaryError("word contains whitespace: '" + e.word + "'");
  }

  std::vector<std::string> keys;
  keys.reserve(entries.size());
  for (const auto& e : entries) keys.push_back(fold_case(e.word));

  std::vector<std::size_t> order(entries.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return keys[a] < keys[b]; });
  for (std::size_t i = 1; i < order.size(); ++i) {
    if (keys[order[i]] == keys[order[i - 1]]) {
      throw DictionaryError("duplicate word: '" + entries[order[i]].word + "'");
    }
  }

  entries_.reserve(entries.size());
  folded_.reserve(entries.size());
  for (auto i : order) {
    entries_.push_back(std::move(entries[i]));
    folded_.push_back(std::move(keys[i]));
  }

  std::vector<std::size_t> all(entries_.size());
  std::iota(all.begin(), all.end(), 0);
  const auto k = std::min(max_suggestions_, all.size());
  std::partial_sort(all.begin(), all.begin() + static_cast<std::ptrdiff_t>(k), all.end(),
                    [this](std::size_t a, std::size_t b) {
                      if (entries_[a].frequency != entries_[b].frequency) {
                        return entries_[a].frequency > entries_[b].frequency;
                      }
                      return a < b;  // index order is folded order
                    });
  all.resize(k);
  global_top_ = std::move(all);
}

std::vector<std::string> FrequencyDictionary::complete(std::string_view prefix) const {
  std::vector<std::string> out;
  if (prefix.empty()) {
    out.reserve(global_top_.size());
    for (auto i : global_top_) out.push_back(entries_[i].word);
    return out;
  }

  const std::string key = fold_case(prefix);
  const auto first = std::lower_bound(folded_.begin(), folded_.end(), key);
  auto last = first;
  while (last != folded_.end() && last->compare(0, key.size(), key) == 0) ++last;

  std::vector<std::size_t> hits(static_cast<std::size_t>(last - first));
  std::iota(hits.begin(), hits.end(), static_cast<std::size_t>(first - folded_.begin()));
  const auto k = std::min(max_suggestions_, hits.size());
  std::partial_sort(hits.begin(), hits.begin() + static_cast<std::ptrdiff_t>(k), hits.end(),
                    [this](std::size_t a, std::size_t b) {
                      if (entries_[a].frequency != entries_[b].frequency) {
                        return entries_[a].frequency > entries_[b].frequency;
                      }
                      return a < b;
                    });
  out.reserve(k);
  for (std::size_t i = 0; i < k; ++i) out.push_back(entries_[hits[i]].word);
  return out;
}

std::vector<std::string> complete(const FrequencyDictionary& dict, std::string_view prefix) {
  return dict.complete(prefix);
}

FrequencyDictionary load_dictionary(std::istream& in, std::size_t max_suggestions) {
  std::vector<DictionaryEntry> entries;
  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    const auto line = chomp(raw);
    if (trim(line).empty() || line.front() == '#') continue;

    const auto tab = line.find('\t');
    const auto where = "line " + std::to_string(line_no) + ": ";
    if (tab == std::string_view::npos) throw DictionaryError(where + "expected word<TAB>frequency", line_no);
    const auto word = line.substr(0, tab);
    const auto count = line.substr(tab + 1);
    if (word.empty() || has_space(word)) throw DictionaryError(where + "invalid word", line_no);

    std::uint64_t freq = 0;
    const auto [ptr, ec] = std::from_chars(count.data(), count.data() + count.size(), freq);
    if (count.empty() || ec != std::errc{} || ptr != count.data() + count.size()) {
      throw DictionaryError(where + "frequency is not a non-negative integer: '" + std::string(count) + "'",
                            line_no);
    }
    entries.push_back({std::string(word), freq});
  }
  return FrequencyDictionary(std::move(entries), max_suggestions);
}

FrequencyDictionary load_dictionary_file(const std::string& path, std::size_t max_suggestions) {
  std::ifstream in(path);
  if (!in) throw DictionaryError("cannot open dictionary file: " + path);
  try {
    return load_dictionary(in, max_suggestions);
  } catch (const DictionaryError& e) {
    throw DictionaryError(path + ": " + e.what(), e.line());
  }
}

}  // namespace easyvoice::textaccel

#include "easyvoice/textaccel/abbreviations.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "easyvoice/textaccel/atomic_file.hpp"
#include "easyvoice/textaccel/text_util.hpp"

namespace easyvoice::textaccel {

namespace {

void validate(std::string_view abbreviation, std::string_view expansion) {
  if (abbreviation.empty()) throw AbbreviationError("empty abbreviation");
  if (std::any_of(abbreviation.begin(), abbreviation.end(), is_delimiter)) {
    throw AbbreviationError("abbreviation must be a single token without whitespace or punctuation: '" +
                            std::string(abbreviation) + "'");
  }
  if (expansion.empty()) throw AbbreviationError("empty expansion for '" + std::string(abbreviation) + "'");
  if (expansion.find('\n') != std::string_view::npos) {
    throw AbbreviationError("expansion for '" + std::string(abbreviation) + "' spans several lines");
  }
}

}  // namespace

void AbbreviationTable::define(std::string_view abbreviation, std::string_view expansion) {
  validate(abbreviation, expansion);
  entries_[fold_case(abbreviation)] = Entry{std::string(abbreviation), std::string(expansion)};
}

void AbbreviationTable::insert(std::string_view abbreviation, std::string_view expansion) {
  validate(abbreviation, expansion);
  auto [it, inserted] =
      entries_.try_emplace(fold_case(abbreviation), Entry{std::string(abbreviation), std::string(expansion)});
  if (!inserted) throw AbbreviationError("duplicate abbreviation: '" + std::string(abbreviation) + "'");
}

bool AbbreviationTable::erase(std::string_view abbreviation) { return entries_.erase(fold_case(abbreviation)) > 0; }

std::optional<std::string_view> AbbreviationTable::lookup(std::string_view token) const {
  const auto it = entries_.find(fold_case(token));
  if (it == entries_.end()) return std::nullopt;
  return std::string_view(it->second.expansion);
}

std::vector<std::pair<std::string, std::string>> AbbreviationTable::entries() const {
  std::vector<std::pair<std::string, std::string>> out;
  out.reserve(entries_.size());
  for (const auto& [key, e] : entries_) out.emplace_back(e.abbreviation, e.expansion);
  return out;
}

std::string expand_abbreviations(const AbbreviationTable& table, std::string_view text) {
  std::string out;
  out.reserve(text.size());
  std::size_t i = 0;
  while (i < text.size()) {
    if (is_delimiter(text[i])) {
      out += text[i++];
      continue;
    }
    std::size_t j = i;
    while (j < text.size() && !is_delimiter(text[j])) ++j;
    const auto token = text.substr(i, j - i);
    if (const auto expansion = table.lookup(token)) {
      out += *expansion;
    } else {
      out += token;
    }
    i = j;
  }
  return out;
}

AbbreviationTable load_abbreviations(std::istream& in) {
  AbbreviationTable table;
  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string_view line = raw;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (trim(line).empty() || line.front() == '#') continue;
    const auto tab = line.find('\t');
    if (tab == std::string_view::npos) {
      throw AbbreviationError("line " + std::to_string(line_no) + ": expected abbreviation<TAB>expansion", line_no);
    }
    try {
      table.insert(line.substr(0, tab), line.substr(tab + 1));
    } catch (const AbbreviationError& e) {
      throw AbbreviationError("line " + std::to_string(line_no) + ": " + e.what(), line_no);
    }
  }
  return table;
}

AbbreviationTable load_abbreviations_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw AbbreviationError("cannot open abbreviation file: " + path);
  try {
    return load_abbreviations(in);
  } catch (const AbbreviationError& e) {
    throw AbbreviationError(path + ": " + e.what(), e.line());
  }
}

void save_abbreviations_file(const AbbreviationTable& table, const std::string& path) {
  std::ostringstream out;
  out << "# abbreviation<TAB>expansion\n";
  for (const auto& [abbr, expansion] : table.entries()) out << abbr << '\t' << expansion << '\n';
  write_file_atomically(path, out.str());
}

}  // namespace easyvoice::textaccel

#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

// Small text helpers shared by the text-side features. Case folding is
// ASCII-only; bytes >= 0x80 (UTF-8 sequences) compare verbatim.
namespace easyvoice::textaccel {

constexpr char ascii_lower(char c) noexcept {
  return (c >= 'A' && c <= 'Z') ? static_cast<char>(c - 'A' + 'a') : c;
}

std::string fold_case(std::string_view s);
bool iequals(std::string_view a, std::string_view b) noexcept;
bool istarts_with(std::string_view s, std::string_view prefix) noexcept;

bool is_space(char c) noexcept;
bool has_space(std::string_view s) noexcept;

/// Token delimiter for abbreviation matching: ASCII whitespace or punctuation.
bool is_delimiter(char c) noexcept;

std::string_view trim(std::string_view s) noexcept;

/// Decodes UTF-8 into code points; invalid bytes decode as U+FFFD.
std::vector<char32_t> utf8_decode(std::string_view s);
std::string utf8_encode(char32_t cp);

/// Byte length of the last UTF-8 code point in s (0 when empty).
std::size_t last_codepoint_length(std::string_view s) noexcept;

}  // namespace easyvoice::textaccel

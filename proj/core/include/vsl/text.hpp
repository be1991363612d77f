#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace vsl::text {

std::string_view trim(std::string_view s);

/// Replace every run of ASCII whitespace with a single space and trim.
std::string collapse_whitespace(std::string_view s);

/// Lowercase (ASCII), trim and collapse inner whitespace.
std::string normalize_answer(std::string_view s);

std::string to_lower_ascii(std::string_view s);

/// Whitespace-delimited words.
std::vector<std::string> split_words(std::string_view s);

std::string join(const std::vector<std::string>& parts, std::string_view sep);

/// Decode UTF-8 into code points. Invalid bytes decode to U+FFFD.
std::u32string utf8_to_u32(std::string_view s);

/// Replace every occurrence of `from` in `s` with `to`.
std::string replace_all(std::string_view s, std::string_view from, std::string_view to);

}  // namespace vsl::text

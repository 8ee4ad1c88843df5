#pragma once

#include <cstddef>
#include <string>
#include <string_view>

namespace raccoon {

// Minimal UTF-8 helpers. Mention offsets are counted in Unicode scalar values,
// so corpus handling needs code-point arithmetic. Invalid bytes decode as
// U+FFFD, consuming one byte.

/// Number of code points in `text`.
std::size_t utf8_length(std::string_view text);

/// Substring by code-point offsets [cp_begin, cp_end). Clamps to the end.
std::string utf8_substring(std::string_view text, std::size_t cp_begin, std::size_t cp_end);

/// Decodes the code point at byte offset `pos` and advances `pos`.
char32_t utf8_decode(std::string_view text, std::size_t& pos);

void utf8_append(std::string& out, char32_t cp);

}  // namespace raccoon

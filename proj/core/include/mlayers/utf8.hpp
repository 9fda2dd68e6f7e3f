#pragma once

#include <cstddef>
#include <string_view>

namespace mlayers::utf8 {

/// Decodes the code point at s[i]; sets len to its byte length (1 for malformed input).
char32_t decode(std::string_view s, std::size_t i, std::size_t& len) noexcept;

inline bool is_greek(char32_t c) noexcept { return c >= 0x0370 && c <= 0x03FF; }

/// Letters, digits, '_', '\'' and Greek letters form identifiers; '\'' only after the first char.
inline bool is_ident_start(char32_t c) noexcept {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_' || is_greek(c);
}
inline bool is_ident_char(char32_t c) noexcept { return is_ident_start(c) || (c >= '0' && c <= '9'); }

/// True when the name lexes as a single identifier or number.
bool is_identifier(std::string_view name) noexcept;

/// Number of code points.
std::size_t length(std::string_view s) noexcept;

}  // namespace mlayers::utf8

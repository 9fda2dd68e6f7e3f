#include "mlayers/utf8.hpp"

namespace mlayers::utf8 {

char32_t decode(std::string_view s, std::size_t i, std::size_t& len) noexcept {
  auto b = static_cast<unsigned char>(s[i]);
  auto cont = [&](std::size_t k) -> char32_t {
    if (i + k >= s.size()) return 0;
    return static_cast<unsigned char>(s[i + k]) & 0x3F;
  };
  if (b < 0x80) {
    len = 1;
    return b;
  }
  if ((b >> 5) == 0x6 && i + 1 < s.size()) {
    len = 2;
    return (static_cast<char32_t>(b & 0x1F) << 6) | cont(1);
  }
  if ((b >> 4) == 0xE && i + 2 < s.size()) {
    len = 3;
    return (static_cast<char32_t>(b & 0x0F) << 12) | (cont(1) << 6) | cont(2);
  }
  if ((b >> 3) == 0x1E && i + 3 < s.size()) {
    len = 4;
    return (static_cast<char32_t>(b & 0x07) << 18) | (cont(1) << 12) | (cont(2) << 6) | cont(3);
  }
  len = 1;
  return b;
}

bool is_identifier(std::string_view name) noexcept {
  if (name.empty()) return false;
  std::size_t i = 0;
  while (i < name.size()) {
    std::size_t len = 0;
    char32_t c = decode(name, i, len);
    if (!is_ident_char(c) && !(i > 0 && c == '\'')) return false;
    i += len;
  }
  return true;
}

std::size_t length(std::string_view s) noexcept {
  std::size_t n = 0;
  for (std::size_t i = 0; i < s.size();) {
    std::size_t len = 0;
    decode(s, i, len);
    i += len;
    ++n;
  }
  return n;
}

}  // namespace mlayers::utf8

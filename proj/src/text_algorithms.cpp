#include "cmpos/text_algorithms.hpp"

#include <cstdint>

#include "cmpos/util.hpp"

namespace cmpos {

namespace {

// Decodes one UTF-8 sequence starting at `i`; returns the codepoint and
// advances `i`. Malformed bytes are passed through as single codepoints so
// normalization never throws on dirty input.
std::uint32_t decode_utf8(std::string_view s, std::size_t& i) {
  unsigned char b = static_cast<unsigned char>(s[i]);
  std::size_t len = 1;
  std::uint32_t cp = b;
  if (b >= 0xF0) {
    len = 4;
    cp = b & 0x07u;
  } else if (b >= 0xE0) {
    len = 3;
    cp = b & 0x0Fu;
  } else if (b >= 0xC0) {
    len = 2;
    cp = b & 0x1Fu;
  }
  if (len == 1 || i + len > s.size()) {
    ++i;
    return b;
  }
  for (std::size_t k = 1; k < len; ++k) {
    unsigned char cont = static_cast<unsigned char>(s[i + k]);
    if ((cont & 0xC0u) != 0x80u) {
      ++i;
      return b;
    }
    cp = (cp << 6) | (cont & 0x3Fu);
  }
  i += len;
  return cp;
}

void encode_utf8(std::uint32_t cp, std::string& out) {
  if (cp < 0x80) {
    out += static_cast<char>(cp);
  } else if (cp < 0x800) {
    out += static_cast<char>(0xC0 | (cp >> 6));
    out += static_cast<char>(0x80 | (cp & 0x3F));
  } else if (cp < 0x10000) {
    out += static_cast<char>(0xE0 | (cp >> 12));
    out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
    out += static_cast<char>(0x80 | (cp & 0x3F));
  } else {
    out += static_cast<char>(0xF0 | (cp >> 18));
    out += static_cast<char>(0x80 | ((cp >> 12) & 0x3F));
    out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
    out += static_cast<char>(0x80 | (cp & 0x3F));
  }
}

bool is_upper_letter(std::uint32_t cp) {
  if (cp >= 'A' && cp <= 'Z') return true;
  // Latin-1 supplement uppercase, minus the multiplication sign.
  return cp >= 0xC0 && cp <= 0xDE && cp != 0xD7;
}

bool is_lower_letter(std::uint32_t cp) {
  if (cp >= 'a' && cp <= 'z') return true;
  // Latin-1 supplement lowercase, minus the division sign.
  return cp >= 0xDF && cp <= 0xFF && cp != 0xF7;
}

}  // namespace

std::string normalize_word(std::string_view surface) {
  std::string out;
  out.reserve(surface.size());
  std::size_t i = 0;
  while (i < surface.size()) {
    std::uint32_t cp = decode_utf8(surface, i);
    if (is_upper_letter(cp)) {
      out += 'A';
    } else if (is_lower_letter(cp)) {
      out += 'a';
    } else if (cp >= '0' && cp <= '9') {
      out += '0';
    } else {
      encode_utf8(cp, out);
    }
  }
  return out;
}

std::string word_class(std::string_view surface) {
  std::string norm = normalize_word(surface);
  std::string out;
  out.reserve(norm.size());
  std::size_t i = 0;
  std::uint32_t prev = 0;
  bool have_prev = false;
  while (i < norm.size()) {
    std::size_t start = i;
    std::uint32_t cp = decode_utf8(norm, i);
    if (!have_prev || cp != prev) {
      out.append(norm, start, i - start);
      prev = cp;
      have_prev = true;
    }
  }
  return out;
}

}  // namespace cmpos

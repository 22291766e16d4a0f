#include "amnlt/text.hpp"

#include <algorithm>
#include <array>
#include <cstdint>

#include "amnlt/error.hpp"

namespace amnlt {

std::vector<char32_t> decode_utf8(std::string_view text) {
  std::vector<char32_t> out;
  out.reserve(text.size());
  std::size_t i = 0;
  std::size_t scalar_index = 0;
  while (i < text.size()) {
    const auto b0 = static_cast<std::uint8_t>(text[i]);
    char32_t cp = 0;
    std::size_t len = 0;
    if (b0 < 0x80) {
      cp = b0;
      len = 1;
    } else if ((b0 & 0xE0) == 0xC0) {
      cp = b0 & 0x1F;
      len = 2;
    } else if ((b0 & 0xF0) == 0xE0) {
      cp = b0 & 0x0F;
      len = 3;
    } else if ((b0 & 0xF8) == 0xF0) {
      cp = b0 & 0x07;
      len = 4;
    } else {
      fail(Errc::InvalidUtf8, "invalid UTF-8 lead byte", scalar_index);
    }
    if (i + len > text.size()) {
      fail(Errc::InvalidUtf8, "truncated UTF-8 sequence", scalar_index);
    }
    for (std::size_t k = 1; k < len; ++k) {
      const auto cont = static_cast<std::uint8_t>(text[i + k]);
      if ((cont & 0xC0) != 0x80) {
        fail(Errc::InvalidUtf8, "invalid UTF-8 continuation byte", scalar_index);
      }
      cp = (cp << 6) | (cont & 0x3F);
    }
    static constexpr char32_t kMinByLen[5] = {0, 0, 0x80, 0x800, 0x10000};
    if (len > 1 && cp < kMinByLen[len]) {
      fail(Errc::InvalidUtf8, "overlong UTF-8 encoding", scalar_index);
    }
    if (cp > 0x10FFFF || (cp >= 0xD800 && cp <= 0xDFFF)) {
      fail(Errc::InvalidUtf8, "code point out of range", scalar_index);
    }
    out.push_back(cp);
    i += len;
    ++scalar_index;
  }
  return out;
}

std::string encode_utf8(char32_t scalar) {
  std::string out;
  if (scalar < 0x80) {
    out.push_back(static_cast<char>(scalar));
  } else if (scalar < 0x800) {
    out.push_back(static_cast<char>(0xC0 | (scalar >> 6)));
    out.push_back(static_cast<char>(0x80 | (scalar & 0x3F)));
  } else if (scalar < 0x10000) {
    out.push_back(static_cast<char>(0xE0 | (scalar >> 12)));
    out.push_back(static_cast<char>(0x80 | ((scalar >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (scalar & 0x3F)));
  } else {
    out.push_back(static_cast<char>(0xF0 | (scalar >> 18)));
    out.push_back(static_cast<char>(0x80 | ((scalar >> 12) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | ((scalar >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (scalar & 0x3F)));
  }
  return out;
}

std::string encode_utf8(const std::vector<char32_t>& scalars) {
  std::string out;
  out.reserve(scalars.size());
  for (char32_t cp : scalars) out += encode_utf8(cp);
  return out;
}

namespace {

struct Composition {
  char32_t base;
  char32_t mark;
  char32_t composed;
};

// Precomposed Latin forms for the combining marks that occur in liturgical
// texts: grave U+0300, acute U+0301, circumflex U+0302, tilde U+0303,
// macron U+0304, diaeresis U+0308, ring U+030A, cedilla U+0327.
constexpr std::array<Composition, 70> kCompositions{{
    {U'A', 0x0300, 0x00C0}, {U'A', 0x0301, 0x00C1}, {U'A', 0x0302, 0x00C2},
    {U'A', 0x0303, 0x00C3}, {U'A', 0x0304, 0x0100}, {U'A', 0x0308, 0x00C4},
    {U'A', 0x030A, 0x00C5},
    {U'C', 0x0327, 0x00C7},
    {U'E', 0x0300, 0x00C8}, {U'E', 0x0301, 0x00C9}, {U'E', 0x0302, 0x00CA},
    {U'E', 0x0304, 0x0112}, {U'E', 0x0308, 0x00CB},
    {U'I', 0x0300, 0x00CC}, {U'I', 0x0301, 0x00CD}, {U'I', 0x0302, 0x00CE},
    {U'I', 0x0304, 0x012A}, {U'I', 0x0308, 0x00CF},
    {U'N', 0x0303, 0x00D1},
    {U'O', 0x0300, 0x00D2}, {U'O', 0x0301, 0x00D3}, {U'O', 0x0302, 0x00D4},
    {U'O', 0x0303, 0x00D5}, {U'O', 0x0304, 0x014C}, {U'O', 0x0308, 0x00D6},
    {U'U', 0x0300, 0x00D9}, {U'U', 0x0301, 0x00DA}, {U'U', 0x0302, 0x00DB},
    {U'U', 0x0304, 0x016A}, {U'U', 0x0308, 0x00DC},
    {U'Y', 0x0301, 0x00DD}, {U'Y', 0x0308, 0x0178},
    {U'a', 0x0300, 0x00E0}, {U'a', 0x0301, 0x00E1}, {U'a', 0x0302, 0x00E2},
    {U'a', 0x0303, 0x00E3}, {U'a', 0x0304, 0x0101}, {U'a', 0x0308, 0x00E4},
    {U'a', 0x030A, 0x00E5},
    {U'c', 0x0327, 0x00E7},
    {U'e', 0x0300, 0x00E8}, {U'e', 0x0301, 0x00E9}, {U'e', 0x0302, 0x00EA},
    {U'e', 0x0304, 0x0113}, {U'e', 0x0308, 0x00EB},
    {U'i', 0x0300, 0x00EC}, {U'i', 0x0301, 0x00ED}, {U'i', 0x0302, 0x00EE},
    {U'i', 0x0304, 0x012B}, {U'i', 0x0308, 0x00EF},
    {U'n', 0x0303, 0x00F1},
    {U'o', 0x0300, 0x00F2}, {U'o', 0x0301, 0x00F3}, {U'o', 0x0302, 0x00F4},
    {U'o', 0x0303, 0x00F5}, {U'o', 0x0304, 0x014D}, {U'o', 0x0308, 0x00F6},
    {U'u', 0x0300, 0x00F9}, {U'u', 0x0301, 0x00FA}, {U'u', 0x0302, 0x00FB},
    {U'u', 0x0304, 0x016B}, {U'u', 0x0308, 0x00FC},
    {U'y', 0x0301, 0x00FD}, {U'y', 0x0308, 0x00FF},
    {U'G', 0x0304, 0x1E20}, {U'g', 0x0304, 0x1E21},
    {U'S', 0x0327, 0x015E}, {U's', 0x0327, 0x015F},
    {U'T', 0x0327, 0x0162}, {U't', 0x0327, 0x0163},
}};

bool compose(char32_t base, char32_t mark, char32_t& out) {
  for (const auto& c : kCompositions) {
    if (c.base == base && c.mark == mark) {
      out = c.composed;
      return true;
    }
  }
  return false;
}

}  // namespace

std::string nfc_normalize(std::string_view text) {
  const std::vector<char32_t> scalars = decode_utf8(text);
  std::vector<char32_t> out;
  out.reserve(scalars.size());
  for (char32_t cp : scalars) {
    char32_t composed = 0;
    if (!out.empty() && compose(out.back(), cp, composed)) {
      out.back() = composed;
    } else {
      out.push_back(cp);
    }
  }
  return encode_utf8(out);
}

std::size_t scalar_count(std::string_view text) {
  return decode_utf8(text).size();
}

}  // namespace amnlt

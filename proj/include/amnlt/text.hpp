#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace amnlt {

// Decodes UTF-8 into Unicode scalar values. Throws Error(InvalidUtf8) on
// malformed bytes, overlong forms, or surrogate code points.
std::vector<char32_t> decode_utf8(std::string_view text);

std::string encode_utf8(char32_t scalar);
std::string encode_utf8(const std::vector<char32_t>& scalars);

// Canonical composition of Latin base letters with trailing combining marks
// (grave/acute/circumflex/tilde/macron/diaeresis/ring/cedilla) into their
// precomposed forms. This is the NFC subset that occurs in chant lyrics;
// sequences outside the table pass through unchanged.
std::string nfc_normalize(std::string_view text);

std::size_t scalar_count(std::string_view text);

}  // namespace amnlt

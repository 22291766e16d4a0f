#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace amnlt {

enum class Errc {
  InvalidUtf8,
  UnbalancedParentheses,
  EmptyMusicGroup,
  EmptyMusicToken,
  StrayMusicPrefix,
  MissingMusicPrefix,
  UnrepresentableToken,
  MalformedXml,
  UnsupportedElement,
  MissingPitchOrOctave,
  MissingNotes,
  MalformedNoteToken,
  EmptyPosteriorgram,
  MalformedPosteriorgram,
  FrameCountMismatch,
  IndexOutOfRange,
  SchemaError,
  DuplicateId,
  UnsupportedConversion,
  IoError,
};

const char* errc_name(Errc code);

// Domain error. `position` is a 0-based offset into the input (Unicode
// scalars for score text, bytes for XML), or npos when the error has no
// text position.
class Error : public std::runtime_error {
 public:
  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

  Error(Errc code, const std::string& message, std::size_t position = npos);

  Errc code() const noexcept { return code_; }
  std::size_t position() const noexcept { return position_; }

 private:
  Errc code_;
  std::size_t position_;
};

[[noreturn]] void fail(Errc code, const std::string& message,
                       std::size_t position = Error::npos);

}  // namespace amnlt

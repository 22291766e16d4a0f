#include "amnlt/error.hpp"

namespace amnlt {

const char* errc_name(Errc code) {
  switch (code) {
    case Errc::InvalidUtf8: return "InvalidUtf8";
    case Errc::UnbalancedParentheses: return "UnbalancedParentheses";
    case Errc::EmptyMusicGroup: return "EmptyMusicGroup";
    case Errc::EmptyMusicToken: return "EmptyMusicToken";
    case Errc::StrayMusicPrefix: return "StrayMusicPrefix";
    case Errc::MissingMusicPrefix: return "MissingMusicPrefix";
    case Errc::UnrepresentableToken: return "UnrepresentableToken";
    case Errc::MalformedXml: return "MalformedXml";
    case Errc::UnsupportedElement: return "UnsupportedElement";
    case Errc::MissingPitchOrOctave: return "MissingPitchOrOctave";
    case Errc::MissingNotes: return "MissingNotes";
    case Errc::MalformedNoteToken: return "MalformedNoteToken";
    case Errc::EmptyPosteriorgram: return "EmptyPosteriorgram";
    case Errc::MalformedPosteriorgram: return "MalformedPosteriorgram";
    case Errc::FrameCountMismatch: return "FrameCountMismatch";
    case Errc::IndexOutOfRange: return "IndexOutOfRange";
    case Errc::SchemaError: return "SchemaError";
    case Errc::DuplicateId: return "DuplicateId";
    case Errc::UnsupportedConversion: return "UnsupportedConversion";
    case Errc::IoError: return "IoError";
  }
  return "UnknownError";
}

namespace {

std::string format_message(Errc code, const std::string& message,
                           std::size_t position) {
  std::string out = errc_name(code);
  if (position != Error::npos) {
    out += " at ";
    out += std::to_string(position);
  }
  out += ": ";
  out += message;
  return out;
}

}  // namespace

Error::Error(Errc code, const std::string& message, std::size_t position)
    : std::runtime_error(format_message(code, message, position)),
      code_(code),
      position_(position) {}

void fail(Errc code, const std::string& message, std::size_t position) {
  throw Error(code, message, position);
}

}  // namespace amnlt

#pragma once

#include <filesystem>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "amnlt/score.hpp"

namespace amnlt {

enum class EncodingKind { PlainGabc, MusicAwareGabc, Pgabc };

const char* encoding_name(EncodingKind kind);
std::optional<EncodingKind> encoding_from_name(std::string_view name);
std::optional<EncodingKind> encoding_from_extension(std::string_view path);
const char* encoding_extension(EncodingKind kind);

// Raw score text tagged with its encoding. make_raw applies NFC
// normalization; parenthesis balance is checked at parse time.
struct RawScoreText {
  EncodingKind encoding;
  std::string text;

  friend bool operator==(const RawScoreText&, const RawScoreText&) = default;
};

RawScoreText make_raw(EncodingKind kind, std::string_view text);

// Reads a one-system score file (UTF-8, LF line endings); one trailing
// newline is stripped before normalization.
RawScoreText read_score_file(const std::filesystem::path& path, EncodingKind kind);

enum class TokenKind { MusicToken, LyricChar, GroupOpen, GroupClose, SyllableBreak };

struct Token {
  TokenKind kind;
  std::string text;

  friend bool operator==(const Token&, const Token&) = default;
};

// Music tokens carried inside parentheses keep their surface form here
// (music-aware tokens include the "<m>" marker), so reassembling the stream
// reproduces the input exactly. SyllableBreak markers are synthetic: one is
// emitted after each GroupClose that has further input behind it.
std::vector<Token> tokenize(const RawScoreText& raw);

// Inverse of tokenize under the encoding's separator rules: pgabc music
// tokens are rejoined with single spaces, everything else concatenates.
std::string detokenize(const std::vector<Token>& tokens, EncodingKind encoding);

// Prefixes every character inside parentheses with the "<m>" marker.
RawScoreText to_music_aware(const RawScoreText& plain);

// Exact inverse of to_music_aware. Throws Error(MissingMusicPrefix) when an
// in-parenthesis character lacks the marker.
RawScoreText from_music_aware(const RawScoreText& music_aware);

inline constexpr std::string_view kMusicPrefix = "<m>";

// Strips one leading "<m>" marker, if present.
std::string_view strip_music_prefix(std::string_view token);

// Reserved token used by syllable-level post-alignment to pad surplus
// syllables; excluded from vocabularies.
inline constexpr std::string_view kPlaceholderToken = "∅";

AlignedScore parse(const RawScoreText& raw);

// Inverse of parse for validate-clean scores. Empty groups serialize to "()"
// so that defective post-alignment output stays visible in files; parse of
// such text reports EmptyMusicGroup.
RawScoreText serialize(const AlignedScore& score, EncodingKind target);

struct Vocabulary {
  std::set<std::string> music_tokens;
  std::set<std::string> lyric_chars;
  std::set<std::string> structural_tokens;
  std::size_t unique_total = 0;
};

// Order- and duplication-independent. Music tokens are counted with the
// "<m>" marker stripped; the surplus-syllable placeholder is skipped.
Vocabulary build_vocabulary(const std::vector<AlignedScore>& corpus);

}  // namespace amnlt

#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace amnlt {

enum class Modality { Music, Lyrics };

// A_j: the run of music tokens performed on one syllable. Kept as a plain
// token list; emptiness is a validation violation rather than a construction
// failure, so that defective alignments produced by post-alignment stay
// representable and visible downstream.
struct MusicGroup {
  std::vector<std::string> tokens;

  friend bool operator==(const MusicGroup&, const MusicGroup&) = default;
};

// l_j. Text may be empty: chant sources contain untexted (melisma) groups.
struct Syllable {
  std::string text;

  friend bool operator==(const Syllable&, const Syllable&) = default;
};

struct ScorePair {
  Syllable syllable;
  MusicGroup group;

  friend bool operator==(const ScorePair&, const ScorePair&) = default;
};

// Ordered (syllable, music group) pairs. The groups partition the music
// sequence structurally: each token instance is owned by exactly one pair,
// so disjointness and full coverage hold by construction.
struct AlignedScore {
  std::vector<ScorePair> pairs;

  friend bool operator==(const AlignedScore&, const AlignedScore&) = default;
};

enum class ViolationRule {
  EmptyGroup,
  EmptyMusicToken,
  MusicTokenHasParenthesis,
  SyllableHasParenthesis,
};

struct Violation {
  std::size_t pair_index;
  ViolationRule rule;
  std::string detail;
};

const char* violation_rule_name(ViolationRule rule);

// Empty result means the score satisfies every invariant. Violations are
// data, not failures.
std::vector<Violation> validate_alignment(const AlignedScore& score);

// a(l_j). Throws Error(IndexOutOfRange) when j is not a pair index.
const MusicGroup& align_of(const AlignedScore& score, std::size_t syllable_index);

// M: group token lists concatenated in pair order.
std::vector<std::string> extract_music(const AlignedScore& score);

// L: syllable texts in pair order.
std::vector<std::string> extract_syllables(const AlignedScore& score);

// One token of the interleaved reading-order stream. The modality tag keeps
// a syllable "f" from ever matching a music token "f" during comparison.
struct TaggedToken {
  Modality modality;
  std::string text;

  friend auto operator<=>(const TaggedToken&, const TaggedToken&) = default;
  friend bool operator==(const TaggedToken&, const TaggedToken&) = default;
};

// Canonical whole-transcription stream: per pair, the syllable token followed
// by its music tokens.
std::vector<TaggedToken> interleave(const AlignedScore& score);

}  // namespace amnlt

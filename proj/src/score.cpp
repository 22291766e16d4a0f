#include "amnlt/score.hpp"

#include "amnlt/error.hpp"

namespace amnlt {

const char* violation_rule_name(ViolationRule rule) {
  switch (rule) {
    case ViolationRule::EmptyGroup: return "EmptyGroup";
    case ViolationRule::EmptyMusicToken: return "EmptyMusicToken";
    case ViolationRule::MusicTokenHasParenthesis: return "MusicTokenHasParenthesis";
    case ViolationRule::SyllableHasParenthesis: return "SyllableHasParenthesis";
  }
  return "UnknownRule";
}

std::vector<Violation> validate_alignment(const AlignedScore& score) {
  std::vector<Violation> violations;
  for (std::size_t i = 0; i < score.pairs.size(); ++i) {
    const ScorePair& pair = score.pairs[i];
    if (pair.group.tokens.empty()) {
      violations.push_back({i, ViolationRule::EmptyGroup,
                            "music group for syllable \"" + pair.syllable.text +
                                "\" is empty"});
    }
    for (const std::string& token : pair.group.tokens) {
      if (token.empty()) {
        violations.push_back({i, ViolationRule::EmptyMusicToken,
                              "music group contains an empty token"});
      } else if (token.find('(') != std::string::npos ||
                 token.find(')') != std::string::npos) {
        violations.push_back({i, ViolationRule::MusicTokenHasParenthesis,
                              "music token \"" + token +
                                  "\" contains a parenthesis"});
      }
    }
    if (pair.syllable.text.find('(') != std::string::npos ||
        pair.syllable.text.find(')') != std::string::npos) {
      violations.push_back({i, ViolationRule::SyllableHasParenthesis,
                            "syllable \"" + pair.syllable.text +
                                "\" contains a parenthesis"});
    }
  }
  return violations;
}

const MusicGroup& align_of(const AlignedScore& score, std::size_t syllable_index) {
  if (syllable_index >= score.pairs.size()) {
    fail(Errc::IndexOutOfRange,
         "syllable index " + std::to_string(syllable_index) +
             " out of range for score with " +
             std::to_string(score.pairs.size()) + " pairs");
  }
  return score.pairs[syllable_index].group;
}

std::vector<std::string> extract_music(const AlignedScore& score) {
  std::vector<std::string> music;
  for (const ScorePair& pair : score.pairs) {
    music.insert(music.end(), pair.group.tokens.begin(), pair.group.tokens.end());
  }
  return music;
}

std::vector<std::string> extract_syllables(const AlignedScore& score) {
  std::vector<std::string> syllables;
  syllables.reserve(score.pairs.size());
  for (const ScorePair& pair : score.pairs) {
    syllables.push_back(pair.syllable.text);
  }
  return syllables;
}

std::vector<TaggedToken> interleave(const AlignedScore& score) {
  std::vector<TaggedToken> stream;
  for (const ScorePair& pair : score.pairs) {
    stream.push_back({Modality::Lyrics, pair.syllable.text});
    for (const std::string& token : pair.group.tokens) {
      stream.push_back({Modality::Music, token});
    }
  }
  return stream;
}

}  // namespace amnlt

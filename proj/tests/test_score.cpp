#include <doctest.h>

#include <random>

#include "amnlt/encoding.hpp"
#include "amnlt/error.hpp"
#include "amnlt/score.hpp"
#include "generators.hpp"

using namespace amnlt;

namespace {

AlignedScore kyrie() {
  return AlignedScore{{{Syllable{"Ky"}, MusicGroup{{"f", "g"}}},
                       {Syllable{"ri"}, MusicGroup{{"e"}}}}};
}

}  // namespace

TEST_CASE("validate_alignment accepts well-formed scores") {
  CHECK(validate_alignment(kyrie()).empty());
  CHECK(validate_alignment(AlignedScore{}).empty());
}

TEST_CASE("validate_alignment reports empty groups") {
  const AlignedScore score{{{Syllable{"Ky"}, MusicGroup{}}}};
  const auto violations = validate_alignment(score);
  REQUIRE(violations.size() == 1);
  CHECK(violations[0].pair_index == 0);
  CHECK(violations[0].rule == ViolationRule::EmptyGroup);
}

TEST_CASE("validate_alignment reports structural character leaks") {
  const AlignedScore score{{{Syllable{"K(y"}, MusicGroup{{"f)"}}}}};
  const auto violations = validate_alignment(score);
  REQUIRE(violations.size() == 2);
  CHECK(violations[0].rule == ViolationRule::MusicTokenHasParenthesis);
  CHECK(violations[1].rule == ViolationRule::SyllableHasParenthesis);
}

TEST_CASE("align_of returns the paired group") {
  const AlignedScore score = kyrie();
  CHECK(align_of(score, 1) == MusicGroup{{"e"}});
  CHECK(align_of(AlignedScore{{{Syllable{"x"}, MusicGroup{{"c"}}}}}, 0) ==
        MusicGroup{{"c"}});
  CHECK_THROWS_AS(align_of(score, 5), Error);
  try {
    align_of(score, 5);
  } catch (const Error& e) {
    CHECK(e.code() == Errc::IndexOutOfRange);
  }
}

TEST_CASE("extract_music concatenates groups in pair order") {
  CHECK(extract_music(kyrie()) == std::vector<std::string>{"f", "g", "e"});
  CHECK(extract_music(AlignedScore{}).empty());
  CHECK(extract_music(AlignedScore{{{Syllable{""}, MusicGroup{{"c"}}}}}) ==
        std::vector<std::string>{"c"});
}

TEST_CASE("extract_syllables projects syllable texts") {
  CHECK(extract_syllables(kyrie()) == std::vector<std::string>{"Ky", "ri"});
  CHECK(extract_syllables(AlignedScore{}).empty());
  CHECK(extract_syllables(AlignedScore{{{Syllable{""}, MusicGroup{{"c"}}}}}) ==
        std::vector<std::string>{""});
}

TEST_CASE("interleave emits syllable-then-music in reading order") {
  const std::vector<TaggedToken> expected{{Modality::Lyrics, "Ky"},
                                          {Modality::Music, "f"},
                                          {Modality::Music, "g"},
                                          {Modality::Lyrics, "ri"},
                                          {Modality::Music, "e"}};
  CHECK(interleave(kyrie()) == expected);
  CHECK(interleave(AlignedScore{}).empty());
  CHECK(interleave(AlignedScore{{{Syllable{""}, MusicGroup{{"c"}}}}}) ==
        std::vector<TaggedToken>{{Modality::Lyrics, ""}, {Modality::Music, "c"}});
}

TEST_CASE("modality tags keep equal texts from matching across modalities") {
  CHECK(TaggedToken{Modality::Lyrics, "f"} != TaggedToken{Modality::Music, "f"});
}

TEST_CASE("projection lengths are consistent on random scores") {
  testing::Rng rng(20240601);
  for (int trial = 0; trial < 200; ++trial) {
    const AlignedScore score = testing::random_score(rng);
    CHECK(extract_syllables(score).size() == score.pairs.size());
    std::size_t total = 0;
    for (std::size_t j = 0; j < score.pairs.size(); ++j) {
      total += align_of(score, j).tokens.size();
    }
    CHECK(extract_music(score).size() == total);
    CHECK(interleave(score).size() ==
          extract_syllables(score).size() + extract_music(score).size());
  }
}

TEST_CASE("groups partition the music sequence by position") {
  testing::Rng rng(20240602);
  for (int trial = 0; trial < 100; ++trial) {
    const AlignedScore score = testing::random_score(rng);
    const std::vector<std::string> music = extract_music(score);
    // Walk the groups and check they tile extract_music without overlap.
    std::size_t cursor = 0;
    for (std::size_t j = 0; j < score.pairs.size(); ++j) {
      for (const std::string& token : align_of(score, j).tokens) {
        REQUIRE(cursor < music.size());
        CHECK(music[cursor] == token);
        ++cursor;
      }
    }
    CHECK(cursor == music.size());
  }
}

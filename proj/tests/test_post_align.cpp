#include <doctest.h>

#include <sstream>

#include "amnlt/error.hpp"
#include "amnlt/metrics.hpp"
#include "amnlt/post_align.hpp"
#include "generators.hpp"

using namespace amnlt;

namespace {

FrameLabels frames_of(std::initializer_list<const char*> labels) {
  FrameLabels frames;
  for (const char* label : labels) {
    if (std::string(label) == "-") {
      frames.labels.push_back(std::nullopt);
    } else {
      frames.labels.push_back(std::string(label));
    }
  }
  return frames;
}

Posteriorgram one_hot(const std::vector<std::string>& vocab,
                      std::initializer_list<int> argmax_classes) {
  Posteriorgram posteriorgram;
  posteriorgram.vocab = vocab;
  const std::size_t columns = vocab.size() + 1;
  for (int cls : argmax_classes) {
    // 0.9 on the argmax class, the remaining 0.1 spread over the others
    std::vector<double> frame(columns, 0.1 / static_cast<double>(columns - 1));
    frame[static_cast<std::size_t>(cls)] = 0.9;
    posteriorgram.frames.push_back(std::move(frame));
  }
  return posteriorgram;
}

}  // namespace

TEST_CASE("ctc_greedy_decode collapses repeats then removes blanks") {
  // classes: 0 = blank, 1 = a, 2 = b
  const Posteriorgram p = one_hot({"a", "b"}, {0, 1, 1, 0, 2});
  const auto [labels, collapsed] = ctc_greedy_decode(p);
  CHECK(labels ==
        frames_of({"-", "a", "a", "-", "b"}));
  CHECK(collapsed == std::vector<std::string>{"a", "b"});
}

TEST_CASE("ctc_greedy_decode on all-blank frames") {
  const Posteriorgram p = one_hot({"a"}, {0, 0, 0});
  const auto [labels, collapsed] = ctc_greedy_decode(p);
  CHECK(collapsed.empty());
  CHECK(labels.frame_count() == 3);
}

TEST_CASE("ctc_greedy_decode keeps blank-separated repeats distinct") {
  const Posteriorgram p = one_hot({"a"}, {1, 0, 1});
  const auto collapsed = ctc_greedy_decode(p).second;
  CHECK(collapsed == std::vector<std::string>{"a", "a"});
}

TEST_CASE("ctc_greedy_decode rejects an empty posteriorgram") {
  Posteriorgram empty;
  empty.vocab = {"a"};
  CHECK_THROWS_AS(ctc_greedy_decode(empty), Error);
}

TEST_CASE("posteriorgram validation") {
  Posteriorgram bad = one_hot({"a", "b"}, {1});
  bad.frames[0][0] = 0.5;  // row no longer sums to 1
  CHECK_THROWS_AS(validate(bad), Error);

  Posteriorgram ragged = one_hot({"a", "b"}, {1});
  ragged.frames[0].pop_back();
  CHECK_THROWS_AS(validate(ragged), Error);
}

TEST_CASE("posteriorgram csv reader") {
  std::istringstream in(
      "blank,f,g\n"
      "0.8,0.1,0.1\n"
      "0.05,0.9,5e-2\n");
  const Posteriorgram p = read_posteriorgram_csv(in);
  CHECK(p.vocab == std::vector<std::string>{"f", "g"});
  REQUIRE(p.frames.size() == 2);
  CHECK(p.frames[1][1] == doctest::Approx(0.9));

  std::istringstream missing_blank("f,g\n0.5,0.5\n");
  CHECK_THROWS_AS(read_posteriorgram_csv(missing_blank), Error);
}

TEST_CASE("frame labels file format") {
  std::istringstream in("Ky\n-\nri\n");
  const FrameLabels labels = read_frame_labels(in);
  CHECK(labels == frames_of({"Ky", "-", "ri"}));
  CHECK(write_frame_labels(labels) == "Ky\n-\nri\n");
}

TEST_CASE("collapse_to_events anchors runs at their first frame") {
  const FrameLabels labels = frames_of({"-", "f", "f", "-", "g", "g", "f"});
  const std::vector<FrameEvent> expected{{"f", 1}, {"g", 4}, {"f", 6}};
  CHECK(collapse_to_events(labels) == expected);
}

TEST_CASE("syllable_align pairs ordinally") {
  const ModalTranscription music{Modality::Music, {{"f", "g"}, {"e"}}};
  const ModalTranscription lyrics{Modality::Lyrics, {{"Ky"}, {"ri"}}};
  const AlignedScore expected{{{Syllable{"Ky"}, MusicGroup{{"f", "g"}}},
                               {Syllable{"ri"}, MusicGroup{{"e"}}}}};
  CHECK(syllable_align(music, lyrics) == expected);

  CHECK(syllable_align(ModalTranscription{Modality::Music, {}},
                       ModalTranscription{Modality::Lyrics, {}}) ==
        AlignedScore{});
}

TEST_CASE("syllable_align appends surplus music groups with empty syllables") {
  const ModalTranscription music{Modality::Music, {{"f"}, {"g"}, {"a"}}};
  const ModalTranscription lyrics{Modality::Lyrics, {{"Ky"}}};
  const AlignedScore expected{{{Syllable{"Ky"}, MusicGroup{{"f"}}},
                               {Syllable{""}, MusicGroup{{"g"}}},
                               {Syllable{""}, MusicGroup{{"a"}}}}};
  CHECK(syllable_align(music, lyrics) == expected);
}

TEST_CASE("syllable_align pads surplus syllables with the placeholder") {
  const ModalTranscription music{Modality::Music, {{"f"}}};
  const ModalTranscription lyrics{Modality::Lyrics, {{"Ky"}, {"ri"}, {"e"}}};
  const AlignedScore aligned = syllable_align(music, lyrics);
  REQUIRE(aligned.pairs.size() == 3);
  CHECK(aligned.pairs[1].group.tokens ==
        std::vector<std::string>{std::string(kPlaceholderToken)});
  CHECK(aligned.pairs[2].syllable.text == "e");
}

TEST_CASE("syllable_align joins multi-token lyric groups into syllables") {
  const ModalTranscription music{Modality::Music, {{"f", "g"}}};
  const ModalTranscription lyrics{Modality::Lyrics, {{"K", "y"}}};
  CHECK(syllable_align(music, lyrics).pairs[0].syllable.text == "Ky");
}

TEST_CASE("syllable_align preserves content") {
  testing::Rng rng(20240614);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t music_groups = testing::pick(rng, 0, 5);
    const std::size_t syllables = testing::pick(rng, 0, 5);
    ModalTranscription music{Modality::Music, {}};
    std::vector<std::string> flat;
    for (std::size_t i = 0; i < music_groups; ++i) {
      std::vector<std::string> group;
      for (std::size_t j = 0; j < testing::pick(rng, 1, 3); ++j) {
        group.push_back(testing::random_music_token(rng, testing::TokenStyle::SingleChar));
      }
      flat.insert(flat.end(), group.begin(), group.end());
      music.groups.push_back(std::move(group));
    }
    ModalTranscription lyrics{Modality::Lyrics, {}};
    std::vector<std::string> syllable_texts;
    for (std::size_t i = 0; i < syllables; ++i) {
      testing::ScoreGenOptions opts;
      opts.allow_empty_syllable = false;
      syllable_texts.push_back(testing::random_syllable(rng, opts));
      lyrics.groups.push_back({syllable_texts.back()});
    }

    const AlignedScore aligned = syllable_align(music, lyrics);

    // Music side: flattened input, plus placeholders for surplus syllables.
    std::vector<std::string> aligned_music = extract_music(aligned);
    std::erase(aligned_music, std::string(kPlaceholderToken));
    CHECK(aligned_music == flat);

    // Lyric side: input syllables, plus empty padding for surplus music.
    const std::vector<std::string> aligned_syllables = extract_syllables(aligned);
    REQUIRE(aligned_syllables.size() >= syllable_texts.size());
    for (std::size_t i = 0; i < syllable_texts.size(); ++i) {
      CHECK(aligned_syllables[i] == syllable_texts[i]);
    }
    for (std::size_t i = syllable_texts.size(); i < aligned_syllables.size(); ++i) {
      CHECK(aligned_syllables[i].empty());
    }
  }
}

TEST_CASE("syllable_align reproduces ground truth from error-free inputs") {
  testing::Rng rng(20240615);
  testing::ScoreGenOptions opts;
  opts.allow_empty_syllable = false;
  for (int trial = 0; trial < 200; ++trial) {
    const AlignedScore truth = testing::random_score(rng, opts);
    ModalTranscription music{Modality::Music, {}};
    ModalTranscription lyrics{Modality::Lyrics, {}};
    for (const ScorePair& pair : truth.pairs) {
      music.groups.push_back(pair.group.tokens);
      lyrics.groups.push_back({pair.syllable.text});
    }
    const AlignedScore aligned = syllable_align(music, lyrics);
    CHECK(aligned == truth);
    CHECK(amler(truth, aligned).edits == 0);
  }
}

TEST_CASE("frame_align follows the nearest-anchor rule") {
  // lyric events {Ky@2, ri@8}; music events {f@1, g@3, e@9}
  const FrameLabels lyric = frames_of(
      {"-", "-", "Ky", "-", "-", "-", "-", "-", "ri", "-", "-", "-"});
  const FrameLabels music = frames_of(
      {"-", "f", "-", "g", "-", "-", "-", "-", "-", "e", "-", "-"});
  const AlignedScore expected{{{Syllable{"Ky"}, MusicGroup{{"f", "g"}}},
                               {Syllable{"ri"}, MusicGroup{{"e"}}}}};
  CHECK(frame_align(music, lyric) == expected);
}

TEST_CASE("frame_align with a single anchor takes all music") {
  const FrameLabels lyric = frames_of({"-", "-", "-", "-", "-", "sy", "-", "-"});
  const FrameLabels music = frames_of({"f", "-", "g", "-", "e", "-", "a", "b"});
  const AlignedScore aligned = frame_align(music, lyric);
  REQUIRE(aligned.pairs.size() == 1);
  CHECK(aligned.pairs[0].group.tokens ==
        std::vector<std::string>{"f", "g", "e", "a", "b"});
}

TEST_CASE("frame_align breaks distance ties to the left") {
  // anchors sy1@0, sy2@4; music c@2 is equidistant
  const FrameLabels lyric = frames_of({"sy1", "-", "-", "-", "sy2"});
  const FrameLabels music = frames_of({"-", "-", "c", "-", "-"});
  const AlignedScore aligned = frame_align(music, lyric);
  REQUIRE(aligned.pairs.size() == 2);
  CHECK(aligned.pairs[0].group.tokens == std::vector<std::string>{"c"});
  CHECK(aligned.pairs[1].group.tokens.empty());
  CHECK(validate_alignment(aligned).size() == 1);  // the empty group stays
}

TEST_CASE("frame_align attaches early music to the first pair") {
  const FrameLabels lyric = frames_of({"-", "-", "-", "Ky", "-", "ri"});
  const FrameLabels music = frames_of({"f", "-", "-", "-", "-", "e"});
  const AlignedScore aligned = frame_align(music, lyric);
  CHECK(aligned.pairs[0].group.tokens == std::vector<std::string>{"f"});
  CHECK(aligned.pairs[1].group.tokens == std::vector<std::string>{"e"});
}

TEST_CASE("frame_align rejects mismatched frame counts") {
  const FrameLabels lyric = frames_of({"a", "-"});
  const FrameLabels music = frames_of({"f", "-", "-"});
  CHECK_THROWS_AS(frame_align(music, lyric), Error);
  try {
    frame_align(music, lyric);
  } catch (const Error& e) {
    CHECK(e.code() == Errc::FrameCountMismatch);
  }
}

TEST_CASE("frame_align drops structural separator tokens") {
  const FrameLabels lyric = frames_of({"Ky", "-", "|", "-", "ri", "-"});
  const FrameLabels music = frames_of({"(", "f", ")", "(", "e", ")"});
  const AlignedScore aligned = frame_align(music, lyric);
  REQUIRE(aligned.pairs.size() == 2);
  CHECK(aligned.pairs[0].group.tokens == std::vector<std::string>{"f"});
  CHECK(aligned.pairs[1].group.tokens == std::vector<std::string>{"e"});
}

TEST_CASE("frame_align with no lyric events keeps music in one pair") {
  const FrameLabels lyric = frames_of({"-", "-", "-"});
  const FrameLabels music = frames_of({"f", "-", "g"});
  const AlignedScore aligned = frame_align(music, lyric);
  REQUIRE(aligned.pairs.size() == 1);
  CHECK(aligned.pairs[0].syllable.text.empty());
  CHECK(aligned.pairs[0].group.tokens == std::vector<std::string>{"f", "g"});

  CHECK(frame_align(frames_of({"-", "-"}), frames_of({"-", "-"})) ==
        AlignedScore{});
}

TEST_CASE("frame_align is deterministic and conserves tokens") {
  testing::Rng rng(20240616);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t frames = testing::pick(rng, 1, 40);
    auto random_frames = [&](bool lyric) {
      FrameLabels labels;
      for (std::size_t i = 0; i < frames; ++i) {
        if (testing::pick(rng, 0, 2) == 0) {
          labels.labels.push_back(
              lyric ? testing::random_syllable(rng, {})
                    : testing::random_music_token(rng, testing::TokenStyle::SingleChar));
          if (labels.labels.back()->empty()) labels.labels.back() = "x";
        } else {
          labels.labels.push_back(std::nullopt);
        }
      }
      return labels;
    };
    const FrameLabels music = random_frames(false);
    const FrameLabels lyric = random_frames(true);
    const AlignedScore first = frame_align(music, lyric);
    const AlignedScore second = frame_align(music, lyric);
    CHECK(first == second);

    std::vector<std::string> collapsed;
    for (const FrameEvent& event : collapse_to_events(music)) {
      collapsed.push_back(event.token);
    }
    std::vector<std::string> output = extract_music(first);
    std::sort(collapsed.begin(), collapsed.end());
    std::sort(output.begin(), output.end());
    CHECK(output == collapsed);
  }
}

TEST_CASE("frame_align reproduces ground truth from consistent frames") {
  testing::Rng rng(20240617);
  testing::ScoreGenOptions opts;
  opts.allow_empty_syllable = false;
  for (int trial = 0; trial < 200; ++trial) {
    const AlignedScore truth = testing::random_score(rng, opts);
    const testing::FramePair frames = testing::consistent_frames(truth, rng);
    const AlignedScore aligned = frame_align(frames.music, frames.lyrics);
    CHECK(aligned == truth);
    CHECK(amler(truth, aligned).edits == 0);
  }
}

TEST_CASE("modal transcription readers") {
  std::istringstream music_in("f g\ne\n\n");
  const ModalTranscription music = read_music_transcription(music_in);
  CHECK(music.groups == std::vector<std::vector<std::string>>{{"f", "g"}, {"e"}});

  std::istringstream lyric_in("Ky\nri e\n");
  const ModalTranscription lyrics = read_lyrics_transcription(lyric_in);
  CHECK(lyrics.groups == std::vector<std::vector<std::string>>{{"Ky"}, {"ri e"}});
}

TEST_CASE("token grouping from decoded streams") {
  const ModalTranscription music =
      group_music_tokens({"(", "f", "g", ")", "(", "e", ")"});
  CHECK(music.groups == std::vector<std::vector<std::string>>{{"f", "g"}, {"e"}});

  // Stray tokens outside groups become singleton groups; an unclosed group
  // closes at the end.
  const ModalTranscription noisy = group_music_tokens({"f", "(", "g", "a"});
  CHECK(noisy.groups == std::vector<std::vector<std::string>>{{"f"}, {"g", "a"}});

  const ModalTranscription lyrics = group_lyric_tokens({"K", "y", "|", "r", "i"});
  CHECK(lyrics.groups == std::vector<std::vector<std::string>>{{"K", "y"}, {"r", "i"}});
}

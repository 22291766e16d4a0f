#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "amnlt/score.hpp"

namespace amnlt {

// Per-frame class probabilities from a CTC-trained recognizer. Column 0 is
// the blank class; columns 1..N map onto vocab[0..N-1].
struct Posteriorgram {
  std::vector<std::string> vocab;
  std::vector<std::vector<double>> frames;
};

inline constexpr double kRowSumTolerance = 1e-3;

// Checks column counts and per-row probability sums; throws
// Error(MalformedPosteriorgram) on violation.
void validate(const Posteriorgram& posteriorgram);

// CSV with a header row naming the classes, first column "blank"; one frame
// per row. Scientific notation accepted.
Posteriorgram read_posteriorgram_csv(std::istream& in);
Posteriorgram read_posteriorgram_file(const std::string& path);

// Greedy per-frame labels; nullopt = blank frame.
struct FrameLabels {
  std::vector<std::optional<std::string>> labels;

  std::size_t frame_count() const { return labels.size(); }

  friend bool operator==(const FrameLabels&, const FrameLabels&) = default;
};

// One label per line, literal "-" for blank.
FrameLabels read_frame_labels(std::istream& in);
FrameLabels read_frame_labels_file(const std::string& path);
std::string write_frame_labels(const FrameLabels& labels);

// A non-blank run collapsed to its token and the first frame of the run.
struct FrameEvent {
  std::string token;
  std::size_t frame = 0;

  friend bool operator==(const FrameEvent&, const FrameEvent&) = default;
};

std::vector<FrameEvent> collapse_to_events(const FrameLabels& labels);

// Per-frame argmax followed by the CTC collapse: consecutive repeats merged,
// blanks removed. Throws Error(EmptyPosteriorgram) when there are no frames.
std::pair<FrameLabels, std::vector<std::string>> ctc_greedy_decode(
    const Posteriorgram& posteriorgram);

// One modality's transcription with its group boundaries: music groups for
// Music, per-syllable token groups for Lyrics (a syllable is the
// concatenation of its group's tokens).
struct ModalTranscription {
  Modality modality = Modality::Music;
  std::vector<std::vector<std::string>> groups;

  friend bool operator==(const ModalTranscription&, const ModalTranscription&) = default;
};

// Decoded music sequences delimit groups with "(" and ")" tokens; tokens
// outside any group become singleton groups, an unclosed group closes at
// the end of the sequence.
ModalTranscription group_music_tokens(const std::vector<std::string>& collapsed);

// Decoded lyric sequences separate syllables with a "|" token.
ModalTranscription group_lyric_tokens(const std::vector<std::string>& collapsed);

// One music group per line, tokens space-separated.
ModalTranscription read_music_transcription(std::istream& in);
// One syllable per line (syllables may contain spaces).
ModalTranscription read_lyrics_transcription(std::istream& in);

// Ordinal pairing: i-th syllable with i-th music group. Surplus music groups
// are appended with an empty syllable; surplus syllables receive a group
// holding the reserved placeholder token so the defect stays visible.
AlignedScore syllable_align(const ModalTranscription& music,
                            const ModalTranscription& lyrics);

// Nearest-anchor pairing over equal-length frame sequences: each lyric event
// opens a pair anchored at its first frame, and every music event attaches
// to the pair with the nearest anchor (ties to the left). Lyric labels are
// syllable-level; structural tokens "(", ")", "|" are dropped from both
// event streams. Syllables that attract no music keep an empty group, which
// validate_alignment reports. Throws Error(FrameCountMismatch) when the
// frame counts differ.
AlignedScore frame_align(const FrameLabels& music_frames,
                         const FrameLabels& lyric_frames);

}  // namespace amnlt

#include "amnlt/post_align.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <istream>
#include <sstream>

#include "amnlt/encoding.hpp"
#include "amnlt/error.hpp"

namespace amnlt {

void validate(const Posteriorgram& posteriorgram) {
  const std::size_t columns = posteriorgram.vocab.size() + 1;
  for (std::size_t row = 0; row < posteriorgram.frames.size(); ++row) {
    const auto& frame = posteriorgram.frames[row];
    if (frame.size() != columns) {
      fail(Errc::MalformedPosteriorgram,
           "frame " + std::to_string(row) + " has " +
               std::to_string(frame.size()) + " columns, expected " +
               std::to_string(columns));
    }
    double sum = 0.0;
    for (double p : frame) sum += p;
    if (std::abs(sum - 1.0) > kRowSumTolerance) {
      fail(Errc::MalformedPosteriorgram,
           "frame " + std::to_string(row) + " probabilities sum to " +
               std::to_string(sum));
    }
  }
}

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> cells;
  std::string cell;
  for (char c : line) {
    if (c == ',') {
      cells.push_back(std::move(cell));
      cell.clear();
    } else {
      cell += c;
    }
  }
  cells.push_back(std::move(cell));
  return cells;
}

std::string strip_cr(std::string line) {
  if (!line.empty() && line.back() == '\r') line.pop_back();
  return line;
}

}  // namespace

Posteriorgram read_posteriorgram_csv(std::istream& in) {
  Posteriorgram posteriorgram;
  std::string line;
  if (!std::getline(in, line)) {
    fail(Errc::MalformedPosteriorgram, "missing header row");
  }
  const std::vector<std::string> header = split_csv_line(strip_cr(line));
  if (header.empty() || header[0] != "blank") {
    fail(Errc::MalformedPosteriorgram, "first header column must be \"blank\"");
  }
  posteriorgram.vocab.assign(header.begin() + 1, header.end());
  std::size_t row = 0;
  while (std::getline(in, line)) {
    line = strip_cr(line);
    if (line.empty()) continue;
    const std::vector<std::string> cells = split_csv_line(line);
    std::vector<double> frame;
    frame.reserve(cells.size());
    for (const std::string& cell : cells) {
      char* end = nullptr;
      const double value = std::strtod(cell.c_str(), &end);
      if (end == cell.c_str() || *end != '\0') {
        fail(Errc::MalformedPosteriorgram,
             "row " + std::to_string(row) + ": cannot parse \"" + cell + "\"");
      }
      frame.push_back(value);
    }
    posteriorgram.frames.push_back(std::move(frame));
    ++row;
  }
  validate(posteriorgram);
  return posteriorgram;
}

Posteriorgram read_posteriorgram_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(Errc::IoError, "cannot open " + path);
  return read_posteriorgram_csv(in);
}

FrameLabels read_frame_labels(std::istream& in) {
  FrameLabels labels;
  std::string line;
  while (std::getline(in, line)) {
    line = strip_cr(line);
    if (line == "-") {
      labels.labels.push_back(std::nullopt);
    } else {
      labels.labels.push_back(line);
    }
  }
  return labels;
}

FrameLabels read_frame_labels_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(Errc::IoError, "cannot open " + path);
  return read_frame_labels(in);
}

std::string write_frame_labels(const FrameLabels& labels) {
  std::string out;
  for (const auto& label : labels.labels) {
    out += label ? *label : "-";
    out += '\n';
  }
  return out;
}

std::vector<FrameEvent> collapse_to_events(const FrameLabels& labels) {
  std::vector<FrameEvent> events;
  const std::optional<std::string>* previous = nullptr;
  for (std::size_t frame = 0; frame < labels.labels.size(); ++frame) {
    const auto& label = labels.labels[frame];
    if (label && (!previous || !*previous || **previous != *label)) {
      events.push_back({*label, frame});
    }
    previous = &label;
  }
  return events;
}

std::pair<FrameLabels, std::vector<std::string>> ctc_greedy_decode(
    const Posteriorgram& posteriorgram) {
  if (posteriorgram.frames.empty()) {
    fail(Errc::EmptyPosteriorgram, "posteriorgram has no frames");
  }
  validate(posteriorgram);
  FrameLabels labels;
  labels.labels.reserve(posteriorgram.frames.size());
  for (const auto& frame : posteriorgram.frames) {
    std::size_t best = 0;
    for (std::size_t j = 1; j < frame.size(); ++j) {
      if (frame[j] > frame[best]) best = j;
    }
    if (best == 0) {
      labels.labels.push_back(std::nullopt);
    } else {
      labels.labels.push_back(posteriorgram.vocab[best - 1]);
    }
  }
  std::vector<std::string> collapsed;
  for (const FrameEvent& event : collapse_to_events(labels)) {
    collapsed.push_back(event.token);
  }
  return {std::move(labels), std::move(collapsed)};
}

ModalTranscription group_music_tokens(const std::vector<std::string>& collapsed) {
  ModalTranscription transcription;
  transcription.modality = Modality::Music;
  std::vector<std::string> current;
  bool open = false;
  for (const std::string& token : collapsed) {
    if (token == "(") {
      if (open && !current.empty()) {
        transcription.groups.push_back(std::move(current));
        current.clear();
      }
      open = true;
    } else if (token == ")") {
      if (!current.empty()) {
        transcription.groups.push_back(std::move(current));
        current.clear();
      }
      open = false;
    } else if (open) {
      current.push_back(token);
    } else {
      transcription.groups.push_back({token});
    }
  }
  if (!current.empty()) {
    transcription.groups.push_back(std::move(current));
  }
  return transcription;
}

ModalTranscription group_lyric_tokens(const std::vector<std::string>& collapsed) {
  ModalTranscription transcription;
  transcription.modality = Modality::Lyrics;
  std::vector<std::string> current;
  for (const std::string& token : collapsed) {
    if (token == "|") {
      transcription.groups.push_back(std::move(current));
      current.clear();
    } else {
      current.push_back(token);
    }
  }
  if (!current.empty()) {
    transcription.groups.push_back(std::move(current));
  }
  return transcription;
}

ModalTranscription read_music_transcription(std::istream& in) {
  ModalTranscription transcription;
  transcription.modality = Modality::Music;
  std::string line;
  while (std::getline(in, line)) {
    line = strip_cr(line);
    if (line.empty()) continue;
    std::vector<std::string> group;
    std::istringstream tokens(line);
    std::string token;
    while (tokens >> token) group.push_back(std::move(token));
    if (!group.empty()) transcription.groups.push_back(std::move(group));
  }
  return transcription;
}

ModalTranscription read_lyrics_transcription(std::istream& in) {
  ModalTranscription transcription;
  transcription.modality = Modality::Lyrics;
  std::string line;
  while (std::getline(in, line)) {
    transcription.groups.push_back({strip_cr(line)});
  }
  // A trailing newline produces no extra syllable; empty trailing lines do.
  while (!transcription.groups.empty() &&
         transcription.groups.back().size() == 1 &&
         transcription.groups.back()[0].empty()) {
    transcription.groups.pop_back();
  }
  return transcription;
}

namespace {

std::string join_group(const std::vector<std::string>& group) {
  std::string out;
  for (const std::string& token : group) out += token;
  return out;
}

bool structural_token(const std::string& token) {
  return token == "(" || token == ")" || token == "|";
}

}  // namespace

AlignedScore syllable_align(const ModalTranscription& music,
                            const ModalTranscription& lyrics) {
  AlignedScore score;
  const std::size_t paired = std::min(music.groups.size(), lyrics.groups.size());
  for (std::size_t i = 0; i < paired; ++i) {
    score.pairs.push_back({Syllable{join_group(lyrics.groups[i])},
                           MusicGroup{music.groups[i]}});
  }
  for (std::size_t i = paired; i < music.groups.size(); ++i) {
    score.pairs.push_back({Syllable{""}, MusicGroup{music.groups[i]}});
  }
  for (std::size_t i = paired; i < lyrics.groups.size(); ++i) {
    score.pairs.push_back({Syllable{join_group(lyrics.groups[i])},
                           MusicGroup{{std::string(kPlaceholderToken)}}});
  }
  return score;
}

AlignedScore frame_align(const FrameLabels& music_frames,
                         const FrameLabels& lyric_frames) {
  if (music_frames.frame_count() != lyric_frames.frame_count()) {
    fail(Errc::FrameCountMismatch,
         "music has " + std::to_string(music_frames.frame_count()) +
             " frames, lyrics has " +
             std::to_string(lyric_frames.frame_count()));
  }
  std::vector<FrameEvent> music_events;
  for (FrameEvent& event : collapse_to_events(music_frames)) {
    if (!structural_token(event.token)) music_events.push_back(std::move(event));
  }
  std::vector<FrameEvent> lyric_events;
  for (FrameEvent& event : collapse_to_events(lyric_frames)) {
    if (!structural_token(event.token)) lyric_events.push_back(std::move(event));
  }

  AlignedScore score;
  if (lyric_events.empty()) {
    if (music_events.empty()) return score;
    MusicGroup group;
    for (const FrameEvent& event : music_events) group.tokens.push_back(event.token);
    score.pairs.push_back({Syllable{""}, std::move(group)});
    return score;
  }

  score.pairs.reserve(lyric_events.size());
  for (const FrameEvent& event : lyric_events) {
    score.pairs.push_back({Syllable{event.token}, MusicGroup{}});
  }

  std::size_t anchor = 0;
  for (const FrameEvent& event : music_events) {
    // Events come in frame order, so the nearest anchor never moves left.
    while (anchor + 1 < lyric_events.size()) {
      const std::size_t to_current =
          event.frame >= lyric_events[anchor].frame
              ? event.frame - lyric_events[anchor].frame
              : lyric_events[anchor].frame - event.frame;
      const std::size_t to_next =
          event.frame >= lyric_events[anchor + 1].frame
              ? event.frame - lyric_events[anchor + 1].frame
              : lyric_events[anchor + 1].frame - event.frame;
      if (to_next < to_current) {
        ++anchor;
      } else {
        break;
      }
    }
    score.pairs[anchor].group.tokens.push_back(event.token);
  }
  return score;
}

}  // namespace amnlt

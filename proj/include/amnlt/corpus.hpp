#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "amnlt/encoding.hpp"
#include "amnlt/post_align.hpp"
#include "amnlt/score.hpp"

namespace amnlt {

enum class Split { Train, Val, Test };

const char* split_name(Split split);
std::optional<Split> split_from_name(std::string_view name);

struct ManifestEntry {
  std::string id;
  std::filesystem::path ref_path;
  EncodingKind ref_encoding = EncodingKind::PlainGabc;
  std::optional<std::filesystem::path> hyp_path;
  std::optional<EncodingKind> hyp_encoding;
  std::optional<std::filesystem::path> music_posteriorgram;
  std::optional<std::filesystem::path> lyrics_posteriorgram;
  std::optional<std::filesystem::path> music_frames;
  std::optional<std::filesystem::path> lyrics_frames;
  // Referenced files that did not exist when the manifest was loaded. The
  // entry is kept and flagged, never dropped.
  std::vector<std::string> missing_files;
};

struct CorpusManifest {
  std::vector<ManifestEntry> entries;
  std::optional<Split> split;
};

// JSON object with an "entries" array; entry paths are resolved relative to
// the manifest's directory. ref_encoding / hyp_encoding fall back to the
// file extension. Throws Error(SchemaError) on shape problems and
// Error(DuplicateId) on repeated ids.
CorpusManifest load_manifest(const std::filesystem::path& path);

struct Sample {
  std::string id;
  AlignedScore reference;
  std::optional<AlignedScore> hypothesis;
  std::optional<Posteriorgram> music_posteriorgram;
  std::optional<Posteriorgram> lyrics_posteriorgram;
  std::optional<FrameLabels> music_frames;
  std::optional<FrameLabels> lyrics_frames;
};

// Loads and parses everything the entry references. Parse and I/O errors are
// rethrown with the sample id attached. Frame-count consistency between
// posteriorgrams is deliberately not checked here; frame_align owns that
// contract.
Sample load_sample(const ManifestEntry& entry);

struct CorpusStats {
  std::size_t systems = 0;
  std::size_t unique_tokens = 0;
  std::size_t music_vocab = 0;
  std::size_t lyric_vocab = 0;
  // Entries whose reference failed to load; stats cover the rest.
  std::size_t failed_entries = 0;
  std::vector<std::string> warnings;
};

CorpusStats corpus_stats(const CorpusManifest& manifest);

}  // namespace amnlt

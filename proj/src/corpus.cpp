#include "amnlt/corpus.hpp"

#include <set>

#include <json.hpp>

#include "amnlt/error.hpp"
#include "amnlt/io.hpp"

namespace amnlt {

const char* split_name(Split split) {
  switch (split) {
    case Split::Train: return "train";
    case Split::Val: return "val";
    case Split::Test: return "test";
  }
  return "unknown";
}

std::optional<Split> split_from_name(std::string_view name) {
  if (name == "train") return Split::Train;
  if (name == "val") return Split::Val;
  if (name == "test") return Split::Test;
  return std::nullopt;
}

namespace {

using nlohmann::json;

std::string require_string(const json& object, const std::string& key,
                           const std::string& where) {
  if (!object.contains(key)) {
    fail(Errc::SchemaError, where + ": missing \"" + key + "\"");
  }
  if (!object[key].is_string()) {
    fail(Errc::SchemaError, where + ": \"" + key + "\" must be a string");
  }
  return object[key].get<std::string>();
}

std::optional<std::string> optional_string(const json& object,
                                           const std::string& key,
                                           const std::string& where) {
  if (!object.contains(key)) return std::nullopt;
  if (!object[key].is_string()) {
    fail(Errc::SchemaError, where + ": \"" + key + "\" must be a string");
  }
  return object[key].get<std::string>();
}

EncodingKind resolve_encoding(const std::optional<std::string>& name,
                              const std::filesystem::path& path,
                              const std::string& where) {
  if (name) {
    const auto kind = encoding_from_name(*name);
    if (!kind) {
      fail(Errc::SchemaError, where + ": unknown encoding \"" + *name + "\"");
    }
    return *kind;
  }
  const auto kind = encoding_from_extension(path.string());
  if (!kind) {
    fail(Errc::SchemaError,
         where + ": no encoding given and extension of \"" + path.string() +
             "\" is not recognized");
  }
  return *kind;
}

const std::set<std::string> kEntryKeys = {
    "id",           "ref_path",           "ref_encoding",
    "hyp_path",     "hyp_encoding",       "music_posteriorgram",
    "lyrics_posteriorgram", "music_frames", "lyrics_frames"};

std::optional<std::filesystem::path> resolve_optional_path(
    const json& object, const std::string& key,
    const std::filesystem::path& base, const std::string& where,
    ManifestEntry& entry) {
  const auto value = optional_string(object, key, where);
  if (!value) return std::nullopt;
  std::filesystem::path path = base / *value;
  if (!std::filesystem::exists(path)) {
    entry.missing_files.push_back(key + ": " + path.string());
  }
  return path;
}

}  // namespace

CorpusManifest load_manifest(const std::filesystem::path& path) {
  json document;
  try {
    document = json::parse(read_file(path));
  } catch (const json::parse_error& e) {
    fail(Errc::SchemaError, "manifest is not valid JSON: " + std::string(e.what()));
  }
  if (!document.is_object()) {
    fail(Errc::SchemaError, "manifest must be a JSON object");
  }
  if (!document.contains("entries") || !document["entries"].is_array()) {
    fail(Errc::SchemaError, "manifest must hold an \"entries\" array");
  }

  CorpusManifest manifest;
  if (document.contains("split")) {
    if (!document["split"].is_string()) {
      fail(Errc::SchemaError, "\"split\" must be a string");
    }
    manifest.split = split_from_name(document["split"].get<std::string>());
    if (!manifest.split) {
      fail(Errc::SchemaError,
           "\"split\" must be train, val, or test, got \"" +
               document["split"].get<std::string>() + "\"");
    }
  }

  const std::filesystem::path base = path.parent_path();
  std::set<std::string> seen_ids;
  for (std::size_t i = 0; i < document["entries"].size(); ++i) {
    const json& object = document["entries"][i];
    const std::string where = "entry " + std::to_string(i);
    if (!object.is_object()) {
      fail(Errc::SchemaError, where + " must be a JSON object");
    }
    for (const auto& item : object.items()) {
      if (!kEntryKeys.count(item.key())) {
        fail(Errc::SchemaError, where + ": unknown key \"" + item.key() + "\"");
      }
    }
    ManifestEntry entry;
    entry.id = require_string(object, "id", where);
    if (!seen_ids.insert(entry.id).second) {
      fail(Errc::DuplicateId, "duplicate sample id \"" + entry.id + "\"");
    }
    entry.ref_path = base / require_string(object, "ref_path", where);
    if (!std::filesystem::exists(entry.ref_path)) {
      entry.missing_files.push_back("ref_path: " + entry.ref_path.string());
    }
    entry.ref_encoding = resolve_encoding(
        optional_string(object, "ref_encoding", where), entry.ref_path, where);

    entry.hyp_path = resolve_optional_path(object, "hyp_path", base, where, entry);
    if (entry.hyp_path) {
      entry.hyp_encoding = resolve_encoding(
          optional_string(object, "hyp_encoding", where), *entry.hyp_path, where);
    } else if (object.contains("hyp_encoding")) {
      fail(Errc::SchemaError, where + ": \"hyp_encoding\" without \"hyp_path\"");
    }

    entry.music_posteriorgram =
        resolve_optional_path(object, "music_posteriorgram", base, where, entry);
    entry.lyrics_posteriorgram =
        resolve_optional_path(object, "lyrics_posteriorgram", base, where, entry);
    entry.music_frames =
        resolve_optional_path(object, "music_frames", base, where, entry);
    entry.lyrics_frames =
        resolve_optional_path(object, "lyrics_frames", base, where, entry);

    manifest.entries.push_back(std::move(entry));
  }
  return manifest;
}

namespace {

[[noreturn]] void rethrow_tagged(const Error& error, const std::string& id) {
  throw Error(error.code(), "[" + id + "] " + error.what(), error.position());
}

}  // namespace

Sample load_sample(const ManifestEntry& entry) {
  Sample sample;
  sample.id = entry.id;
  try {
    sample.reference = parse(read_score_file(entry.ref_path, entry.ref_encoding));
    if (entry.hyp_path) {
      sample.hypothesis =
          parse(read_score_file(*entry.hyp_path, *entry.hyp_encoding));
    }
    if (entry.music_posteriorgram) {
      sample.music_posteriorgram =
          read_posteriorgram_file(entry.music_posteriorgram->string());
    }
    if (entry.lyrics_posteriorgram) {
      sample.lyrics_posteriorgram =
          read_posteriorgram_file(entry.lyrics_posteriorgram->string());
    }
    if (entry.music_frames) {
      sample.music_frames = read_frame_labels_file(entry.music_frames->string());
    }
    if (entry.lyrics_frames) {
      sample.lyrics_frames = read_frame_labels_file(entry.lyrics_frames->string());
    }
  } catch (const Error& error) {
    rethrow_tagged(error, entry.id);
  }
  return sample;
}

CorpusStats corpus_stats(const CorpusManifest& manifest) {
  CorpusStats stats;
  stats.systems = manifest.entries.size();
  std::vector<AlignedScore> references;
  references.reserve(manifest.entries.size());
  for (const ManifestEntry& entry : manifest.entries) {
    try {
      references.push_back(parse(read_score_file(entry.ref_path, entry.ref_encoding)));
    } catch (const Error& error) {
      ++stats.failed_entries;
      stats.warnings.push_back("[" + entry.id + "] " + error.what());
    }
  }
  const Vocabulary vocab = build_vocabulary(references);
  stats.unique_tokens = vocab.unique_total;
  stats.music_vocab = vocab.music_tokens.size();
  stats.lyric_vocab = vocab.lyric_chars.size();
  return stats;
}

}  // namespace amnlt

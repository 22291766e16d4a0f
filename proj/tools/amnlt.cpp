#include <atomic>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <mutex>
#include <ostream>
#include <sstream>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "amnlt/corpus.hpp"
#include "amnlt/encoding.hpp"
#include "amnlt/error.hpp"
#include "amnlt/io.hpp"
#include "amnlt/mei.hpp"
#include "amnlt/metrics.hpp"
#include "amnlt/post_align.hpp"
#include "amnlt/report_io.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace amnlt;

namespace {

constexpr int kOk = 0;
constexpr int kDomainError = 1;
constexpr int kUsageError = 2;

enum class LogLevel { Error = 0, Warn = 1, Info = 2, Debug = 3 };

LogLevel log_threshold() {
  static const LogLevel level = [] {
    const char* env = std::getenv("AMNLT_LOG");
    const std::string value = env ? env : "warn";
    if (value == "error") return LogLevel::Error;
    if (value == "info") return LogLevel::Info;
    if (value == "debug") return LogLevel::Debug;
    return LogLevel::Warn;
  }();
  return level;
}

std::mutex log_mutex;

void log(LogLevel level, const std::string& message) {
  static const char* kNames[] = {"error", "warn", "info", "debug"};
  if (level <= log_threshold()) {
    std::lock_guard<std::mutex> lock(log_mutex);
    std::cerr << "amnlt: " << kNames[static_cast<int>(level)] << ": " << message
              << "\n";
  }
}

int exit_code_for(const Error& error) {
  switch (error.code()) {
    case Errc::IoError:
    case Errc::SchemaError:
    case Errc::DuplicateId:
    case Errc::UnsupportedConversion:
      return kUsageError;
    default:
      return kDomainError;
  }
}

template <typename Fn>
void parallel_for(std::size_t count, unsigned jobs, Fn&& fn) {
  jobs = std::max(1u, jobs);
  if (jobs == 1 || count <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> workers;
  const unsigned spawned = static_cast<unsigned>(
      std::min<std::size_t>(jobs, count));
  workers.reserve(spawned);
  for (unsigned w = 0; w < spawned; ++w) {
    workers.emplace_back([&] {
      for (;;) {
        const std::size_t i = next.fetch_add(1);
        if (i >= count) break;
        fn(i);
      }
    });
  }
  for (std::thread& worker : workers) worker.join();
}

void emit(const std::string& text, const std::string& output_path) {
  if (output_path.empty()) {
    std::cout << text;
  } else {
    write_file(output_path, text);
  }
}

// ---------------------------------------------------------------------------
// validate

int run_validate(const std::vector<std::string>& paths,
                 const std::string& encoding_flag) {
  int worst = kOk;
  for (const std::string& path : paths) {
    std::optional<EncodingKind> kind;
    if (!encoding_flag.empty()) {
      kind = encoding_from_name(encoding_flag);
    } else {
      kind = encoding_from_extension(path);
    }
    if (!kind) {
      log(LogLevel::Error, "cannot determine encoding for " + path);
      worst = kUsageError;
      continue;
    }
    try {
      const AlignedScore score = parse(read_score_file(path, *kind));
      const std::vector<Violation> violations = validate_alignment(score);
      if (violations.empty()) {
        std::cout << path << ": ok\n";
      } else {
        for (const Violation& violation : violations) {
          std::cout << path << ":" << violation.pair_index << ": "
                    << violation_rule_name(violation.rule) << ": "
                    << violation.detail << "\n";
        }
        worst = std::max(worst, kDomainError);
      }
    } catch (const Error& error) {
      std::cout << path;
      if (error.position() != Error::npos) std::cout << ":" << error.position();
      std::cout << ": " << error.what() << "\n";
      worst = std::max(worst, exit_code_for(error) == kUsageError
                                  ? kUsageError
                                  : kDomainError);
    }
  }
  return worst;
}

// ---------------------------------------------------------------------------
// convert

enum class FileKind { Gabc, Magabc, Pgabc, Mei };

std::optional<FileKind> file_kind_from_name(const std::string& name) {
  if (name == "mei" || name == "xml") return FileKind::Mei;
  const auto kind = encoding_from_name(name);
  if (!kind) return std::nullopt;
  switch (*kind) {
    case EncodingKind::PlainGabc: return FileKind::Gabc;
    case EncodingKind::MusicAwareGabc: return FileKind::Magabc;
    case EncodingKind::Pgabc: return FileKind::Pgabc;
  }
  return std::nullopt;
}

std::optional<FileKind> file_kind_from_extension(const std::string& path) {
  const std::size_t dot = path.rfind('.');
  if (dot == std::string::npos) return std::nullopt;
  return file_kind_from_name(path.substr(dot + 1));
}

EncodingKind text_encoding(FileKind kind) {
  switch (kind) {
    case FileKind::Gabc: return EncodingKind::PlainGabc;
    case FileKind::Magabc: return EncodingKind::MusicAwareGabc;
    default: return EncodingKind::Pgabc;
  }
}

int run_convert(const std::string& in_path, const std::string& in_flag,
                const std::string& to_flag, const std::string& out_path) {
  const std::optional<FileKind> in_kind = !in_flag.empty()
                                              ? file_kind_from_name(in_flag)
                                              : file_kind_from_extension(in_path);
  std::optional<FileKind> out_kind;
  if (!to_flag.empty()) {
    out_kind = file_kind_from_name(to_flag);
  } else if (!out_path.empty()) {
    out_kind = file_kind_from_extension(out_path);
  }
  if (!in_kind) {
    log(LogLevel::Error, "cannot determine input encoding; pass --encoding");
    return kUsageError;
  }
  if (!out_kind) {
    log(LogLevel::Error, "cannot determine target encoding; pass --to");
    return kUsageError;
  }

  try {
    std::string text;
    if (*in_kind == FileKind::Mei) {
      const MeiSubsetDoc doc = read_mei_subset_file(in_path);
      if (*out_kind == FileKind::Mei) {
        text = write_mei_subset_xml(doc);
      } else {
        const RawScoreText pgabc = mei_subset_to_pgabc(doc);
        text = (*out_kind == FileKind::Pgabc)
                   ? pgabc.text
                   : serialize(parse(pgabc), text_encoding(*out_kind)).text;
        text += '\n';
      }
    } else {
      const RawScoreText raw = read_score_file(in_path, text_encoding(*in_kind));
      if (*in_kind == FileKind::Gabc && *out_kind == FileKind::Magabc) {
        text = to_music_aware(raw).text + '\n';
      } else if (*in_kind == FileKind::Magabc && *out_kind == FileKind::Gabc) {
        text = from_music_aware(raw).text + '\n';
      } else if (*out_kind == FileKind::Mei) {
        const RawScoreText pgabc =
            *in_kind == FileKind::Pgabc
                ? raw
                : serialize(parse(raw), EncodingKind::Pgabc);
        text = write_mei_subset_xml(pgabc_to_mei_subset(pgabc));
      } else {
        text = serialize(parse(raw), text_encoding(*out_kind)).text + '\n';
      }
    }
    emit(text, out_path);
    return kOk;
  } catch (const Error& error) {
    log(LogLevel::Error, error.what());
    return exit_code_for(error);
  }
}

// ---------------------------------------------------------------------------
// align

bool has_suffix(const std::string& text, const std::string& suffix) {
  return text.size() >= suffix.size() &&
         text.compare(text.size() - suffix.size(), suffix.size(), suffix) == 0;
}

FrameLabels frames_from_file(const std::string& path) {
  if (has_suffix(path, ".csv")) {
    return ctc_greedy_decode(read_posteriorgram_file(path)).first;
  }
  return read_frame_labels_file(path);
}

std::vector<std::string> tokens_from_file(const std::string& path) {
  if (has_suffix(path, ".csv")) {
    return ctc_greedy_decode(read_posteriorgram_file(path)).second;
  }
  std::vector<std::string> tokens;
  for (const FrameEvent& event :
       collapse_to_events(read_frame_labels_file(path))) {
    tokens.push_back(event.token);
  }
  return tokens;
}

AlignedScore align_from_files(const std::string& music_path,
                              const std::string& lyrics_path,
                              const std::string& method) {
  if (method == "frame") {
    return frame_align(frames_from_file(music_path),
                       frames_from_file(lyrics_path));
  }
  ModalTranscription music;
  ModalTranscription lyrics;
  if (has_suffix(music_path, ".csv") || has_suffix(music_path, ".frames.txt")) {
    music = group_music_tokens(tokens_from_file(music_path));
  } else {
    std::istringstream in(read_file(music_path));
    music = read_music_transcription(in);
  }
  if (has_suffix(lyrics_path, ".csv") || has_suffix(lyrics_path, ".frames.txt")) {
    lyrics = group_lyric_tokens(tokens_from_file(lyrics_path));
  } else {
    std::istringstream in(read_file(lyrics_path));
    lyrics = read_lyrics_transcription(in);
  }
  return syllable_align(music, lyrics);
}

AlignedScore align_from_sample(const Sample& sample, const std::string& method) {
  if (method == "frame") {
    // Frame-label files are authoritative for the frame method; fall back to
    // decoding the posteriorgrams.
    if (sample.music_frames && sample.lyrics_frames) {
      return frame_align(*sample.music_frames, *sample.lyrics_frames);
    }
    if (sample.music_posteriorgram && sample.lyrics_posteriorgram) {
      return frame_align(ctc_greedy_decode(*sample.music_posteriorgram).first,
                         ctc_greedy_decode(*sample.lyrics_posteriorgram).first);
    }
    fail(Errc::IoError, "no frame-label or posteriorgram inputs for sample " +
                            sample.id);
  }
  // Syllable method: decoded posteriorgrams carry the group separators; frame
  // labels are a fallback for pre-decoded inputs.
  std::vector<std::string> music_tokens;
  std::vector<std::string> lyric_tokens;
  if (sample.music_posteriorgram && sample.lyrics_posteriorgram) {
    music_tokens = ctc_greedy_decode(*sample.music_posteriorgram).second;
    lyric_tokens = ctc_greedy_decode(*sample.lyrics_posteriorgram).second;
  } else if (sample.music_frames && sample.lyrics_frames) {
    for (const FrameEvent& event : collapse_to_events(*sample.music_frames)) {
      music_tokens.push_back(event.token);
    }
    for (const FrameEvent& event : collapse_to_events(*sample.lyrics_frames)) {
      lyric_tokens.push_back(event.token);
    }
  } else {
    fail(Errc::IoError,
         "no posteriorgram or frame-label inputs for sample " + sample.id);
  }
  return syllable_align(group_music_tokens(music_tokens),
                        group_lyric_tokens(lyric_tokens));
}

struct AlignOptions {
  std::string manifest;
  std::string music;
  std::string lyrics;
  std::string method = "syllable";
  std::string to = "magabc";
  std::string output;
  unsigned jobs = 1;
  bool strict = false;
};

int run_align(const AlignOptions& options) {
  const auto out_kind = encoding_from_name(options.to);
  if (!out_kind) {
    log(LogLevel::Error, "unknown target encoding \"" + options.to + "\"");
    return kUsageError;
  }

  if (options.manifest.empty()) {
    if (options.music.empty() || options.lyrics.empty()) {
      log(LogLevel::Error, "pass either --manifest or both --music and --lyrics");
      return kUsageError;
    }
    try {
      const AlignedScore score =
          align_from_files(options.music, options.lyrics, options.method);
      const std::size_t violations = validate_alignment(score).size();
      if (violations > 0) {
        log(LogLevel::Warn, std::to_string(violations) +
                                " validation violation(s) in aligned output");
      }
      emit(serialize(score, *out_kind).text + "\n", options.output);
      return kOk;
    } catch (const Error& error) {
      log(LogLevel::Error, error.what());
      return exit_code_for(error);
    }
  }

  if (options.output.empty()) {
    log(LogLevel::Error, "--output DIR is required with --manifest");
    return kUsageError;
  }

  CorpusManifest manifest;
  try {
    manifest = load_manifest(options.manifest);
  } catch (const Error& error) {
    log(LogLevel::Error, error.what());
    return exit_code_for(error);
  }
  std::sort(manifest.entries.begin(), manifest.entries.end(),
            [](const ManifestEntry& a, const ManifestEntry& b) {
              return a.id < b.id;
            });
  fs::create_directories(options.output);

  struct Result {
    enum class Status { Ok, Failed, NotRun } status = Status::NotRun;
    std::string message;
    std::size_t violations = 0;
  };
  std::vector<Result> results(manifest.entries.size());
  std::atomic<bool> stop{false};

  parallel_for(manifest.entries.size(), options.strict ? 1 : options.jobs,
               [&](std::size_t i) {
                 if (stop.load()) return;
                 Result& result = results[i];
                 const ManifestEntry& entry = manifest.entries[i];
                 try {
                   const Sample sample = load_sample(entry);
                   const AlignedScore score =
                       align_from_sample(sample, options.method);
                   result.violations = validate_alignment(score).size();
                   const fs::path out =
                       fs::path(options.output) /
                       (entry.id + encoding_extension(*out_kind));
                   write_file(out, serialize(score, *out_kind).text + "\n");
                   result.status = Result::Status::Ok;
                 } catch (const Error& error) {
                   result.status = Result::Status::Failed;
                   result.message = error.what();
                   if (options.strict) stop.store(true);
                 }
               });

  int exit_code = kOk;
  for (std::size_t i = 0; i < manifest.entries.size(); ++i) {
    const Result& result = results[i];
    const std::string& id = manifest.entries[i].id;
    switch (result.status) {
      case Result::Status::Failed:
        std::cout << id << ": error: " << result.message << "\n";
        exit_code = kDomainError;
        break;
      case Result::Status::NotRun:
        std::cout << id << ": skipped\n";
        break;
      case Result::Status::Ok:
        std::cout << id << ": aligned";
        if (result.violations > 0) {
          std::cout << " (" << result.violations << " validation violation(s))";
        }
        std::cout << "\n";
        break;
    }
  }
  return exit_code;
}

// ---------------------------------------------------------------------------
// evaluate

struct EvaluateOptions {
  std::string manifest;
  std::string format = "json";
  std::string output;
  unsigned jobs = 1;
  bool strict = false;
};

int run_evaluate(const EvaluateOptions& options) {
  CorpusManifest manifest;
  try {
    manifest = load_manifest(options.manifest);
  } catch (const Error& error) {
    log(LogLevel::Error, error.what());
    return exit_code_for(error);
  }
  std::sort(manifest.entries.begin(), manifest.entries.end(),
            [](const ManifestEntry& a, const ManifestEntry& b) {
              return a.id < b.id;
            });

  enum class Status { Ok, Skipped, Failed };
  struct Result {
    Status status = Status::Skipped;
    MetricReport report;
    std::string error;
  };
  std::vector<Result> results(manifest.entries.size());

  parallel_for(manifest.entries.size(), options.jobs, [&](std::size_t i) {
    const ManifestEntry& entry = manifest.entries[i];
    Result& result = results[i];
    if (!entry.hyp_path) {
      result.status = Status::Skipped;
      return;
    }
    try {
      const Sample sample = load_sample(entry);
      result.report = evaluate(sample.reference, *sample.hypothesis);
      result.status = Status::Ok;
    } catch (const Error& error) {
      result.status = Status::Failed;
      result.error = error.what();
    }
  });

  std::vector<MetricReport> ok_reports;
  json samples = json::array();
  json failed = json::array();
  json skipped = json::array();
  std::string csv = report_csv_header();
  for (std::size_t i = 0; i < manifest.entries.size(); ++i) {
    const std::string& id = manifest.entries[i].id;
    const Result& result = results[i];
    switch (result.status) {
      case Status::Ok: {
        ok_reports.push_back(result.report);
        json sample_json = report_to_json(result.report);
        sample_json["id"] = id;
        samples.push_back(std::move(sample_json));
        append_report_csv_row(csv, id, result.report);
        break;
      }
      case Status::Skipped:
        log(LogLevel::Warn, "skipping " + id + ": no hypothesis");
        skipped.push_back(id);
        break;
      case Status::Failed: {
        log(LogLevel::Error, id + ": " + result.error);
        json failure;
        failure["id"] = id;
        failure["error"] = result.error;
        failed.push_back(std::move(failure));
        break;
      }
    }
  }

  const MetricReport corpus = aggregate(ok_reports);
  std::string text;
  if (options.format == "csv") {
    append_report_csv_row(csv, "corpus", corpus);
    text = std::move(csv);
  } else {
    json document;
    document["format_version"] = 1;
    document["corpus"] = report_to_json(corpus);
    document["samples"] = std::move(samples);
    document["skipped"] = std::move(skipped);
    document["failed"] = std::move(failed);
    json counts;
    counts["evaluated"] = ok_reports.size();
    counts["skipped"] = skipped.is_null() ? 0 : document["skipped"].size();
    counts["failed"] = document["failed"].size();
    document["counts"] = std::move(counts);
    text = document.dump(2) + "\n";
  }
  emit(text, options.output);

  const bool any_failed = std::any_of(
      results.begin(), results.end(),
      [](const Result& result) { return result.status == Status::Failed; });
  if (any_failed) return kDomainError;
  if (options.strict) {
    const bool any_skipped = std::any_of(
        results.begin(), results.end(),
        [](const Result& result) { return result.status == Status::Skipped; });
    if (any_skipped) return kDomainError;
  }
  return kOk;
}

// ---------------------------------------------------------------------------
// stats

int run_stats(const std::string& manifest_path, const std::string& format,
              const std::string& output, bool strict) {
  CorpusManifest manifest;
  try {
    manifest = load_manifest(manifest_path);
  } catch (const Error& error) {
    log(LogLevel::Error, error.what());
    return exit_code_for(error);
  }
  const CorpusStats stats = corpus_stats(manifest);
  for (const std::string& warning : stats.warnings) {
    log(LogLevel::Warn, warning);
  }
  std::string text;
  if (format == "json") {
    json document;
    document["format_version"] = 1;
    document["systems"] = stats.systems;
    document["unique_tokens"] = stats.unique_tokens;
    document["music_vocab"] = stats.music_vocab;
    document["lyric_vocab"] = stats.lyric_vocab;
    document["failed_entries"] = stats.failed_entries;
    text = document.dump(2) + "\n";
  } else if (format == "csv") {
    text =
        "systems,unique_tokens,music_vocab,lyric_vocab,failed_entries\n" +
        std::to_string(stats.systems) + "," + std::to_string(stats.unique_tokens) +
        "," + std::to_string(stats.music_vocab) + "," +
        std::to_string(stats.lyric_vocab) + "," +
        std::to_string(stats.failed_entries) + "\n";
  } else {
    std::ostringstream table;
    table << "systems        " << stats.systems << "\n"
          << "unique tokens  " << stats.unique_tokens << "\n"
          << "music vocab    " << stats.music_vocab << "\n"
          << "lyric vocab    " << stats.lyric_vocab << "\n"
          << "failed entries " << stats.failed_entries << "\n";
    text = table.str();
  }
  emit(text, output);
  return (strict && stats.failed_entries > 0) ? kDomainError : kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Aligned music notation and lyrics transcription toolkit"};
  app.require_subcommand(1);

  // validate
  auto* validate_cmd =
      app.add_subcommand("validate", "parse score files and report violations");
  std::vector<std::string> validate_paths;
  std::string validate_encoding;
  validate_cmd->add_option("paths", validate_paths, "score files")->required();
  validate_cmd->add_option("--encoding", validate_encoding,
                           "input encoding (gabc|magabc|pgabc); default: by extension");

  // convert
  auto* convert_cmd = app.add_subcommand("convert", "convert between encodings");
  std::string convert_in;
  std::string convert_encoding;
  std::string convert_to;
  std::string convert_output;
  convert_cmd->add_option("input", convert_in, "input file")->required();
  convert_cmd->add_option("--encoding", convert_encoding,
                          "input encoding (gabc|magabc|pgabc|mei); default: by extension");
  convert_cmd->add_option("--to", convert_to,
                          "target encoding (gabc|magabc|pgabc|mei)");
  convert_cmd->add_option("--output,-o", convert_output,
                          "output file; default: stdout");

  // align
  auto* align_cmd =
      app.add_subcommand("align", "fuse modal transcriptions into aligned scores");
  AlignOptions align_options;
  align_cmd->add_option("--manifest", align_options.manifest, "corpus manifest");
  align_cmd->add_option("--music", align_options.music,
                        "music transcription / posteriorgram / frame labels");
  align_cmd->add_option("--lyrics", align_options.lyrics,
                        "lyrics transcription / posteriorgram / frame labels");
  align_cmd->add_option("--method", align_options.method, "syllable|frame")
      ->check(CLI::IsMember({"syllable", "frame"}));
  align_cmd->add_option("--to", align_options.to,
                        "output encoding (gabc|magabc|pgabc)");
  align_cmd->add_option("--output,-o", align_options.output,
                        "output file (file pair) or directory (manifest)");
  align_cmd->add_option("--jobs,-j", align_options.jobs, "parallel workers")
      ->check(CLI::PositiveNumber);
  align_cmd->add_flag("--strict", align_options.strict,
                      "abort the batch on the first failing sample");

  // evaluate
  auto* evaluate_cmd =
      app.add_subcommand("evaluate", "compute the metric suite over a corpus");
  EvaluateOptions evaluate_options;
  evaluate_cmd->add_option("--manifest", evaluate_options.manifest, "corpus manifest")
      ->required();
  evaluate_cmd->add_option("--format", evaluate_options.format, "json|csv")
      ->check(CLI::IsMember({"json", "csv"}));
  evaluate_cmd->add_option("--output,-o", evaluate_options.output,
                           "report file; default: stdout");
  evaluate_cmd->add_option("--jobs,-j", evaluate_options.jobs, "parallel workers")
      ->check(CLI::PositiveNumber);
  evaluate_cmd->add_flag("--strict", evaluate_options.strict,
                         "fail when any entry must be skipped");

  // stats
  auto* stats_cmd = app.add_subcommand("stats", "corpus statistics");
  std::string stats_manifest;
  std::string stats_format = "table";
  std::string stats_output;
  bool stats_strict = false;
  stats_cmd->add_option("--manifest", stats_manifest, "corpus manifest")->required();
  stats_cmd->add_option("--format", stats_format, "table|json|csv")
      ->check(CLI::IsMember({"table", "json", "csv"}));
  stats_cmd->add_option("--output,-o", stats_output, "output file; default: stdout");
  stats_cmd->add_flag("--strict", stats_strict,
                      "fail when any entry cannot be loaded");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsageError;
  }

  try {
    if (validate_cmd->parsed()) {
      return run_validate(validate_paths, validate_encoding);
    }
    if (convert_cmd->parsed()) {
      return run_convert(convert_in, convert_encoding, convert_to, convert_output);
    }
    if (align_cmd->parsed()) {
      return run_align(align_options);
    }
    if (evaluate_cmd->parsed()) {
      return run_evaluate(evaluate_options);
    }
    if (stats_cmd->parsed()) {
      return run_stats(stats_manifest, stats_format, stats_output, stats_strict);
    }
  } catch (const Error& error) {
    log(LogLevel::Error, error.what());
    return exit_code_for(error);
  } catch (const std::exception& e) {
    log(LogLevel::Error, e.what());
    return kUsageError;
  }
  return kUsageError;
}

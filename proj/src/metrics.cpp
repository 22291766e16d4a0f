#include "amnlt/metrics.hpp"

#include <map>

#include "amnlt/encoding.hpp"
#include "amnlt/text.hpp"

namespace amnlt {

namespace {

std::vector<std::string> stripped_music(const AlignedScore& score) {
  std::vector<std::string> music = extract_music(score);
  for (std::string& token : music) {
    token = std::string(strip_music_prefix(token));
  }
  return music;
}

std::vector<char32_t> lyric_characters(const AlignedScore& score) {
  std::vector<char32_t> chars;
  for (const ScorePair& pair : score.pairs) {
    const std::vector<char32_t> scalars = decode_utf8(pair.syllable.text);
    chars.insert(chars.end(), scalars.begin(), scalars.end());
  }
  return chars;
}

std::vector<TaggedToken> tagged_stream(const AlignedScore& score) {
  std::vector<TaggedToken> stream = interleave(score);
  for (TaggedToken& token : stream) {
    if (token.modality == Modality::Music) {
      token.text = std::string(strip_music_prefix(token.text));
    }
  }
  return stream;
}

}  // namespace

std::size_t bag_edit_count(const std::vector<TaggedToken>& ref,
                           const std::vector<TaggedToken>& hyp) {
  std::map<TaggedToken, long long> counts;
  for (const TaggedToken& token : ref) ++counts[token];
  for (const TaggedToken& token : hyp) --counts[token];
  long long deletions = 0;
  long long insertions = 0;
  for (const auto& [token, diff] : counts) {
    if (diff > 0) deletions += diff;
    if (diff < 0) insertions -= diff;
  }
  return static_cast<std::size_t>(std::max(deletions, insertions));
}

MetricValue mer(const AlignedScore& ref, const AlignedScore& hyp) {
  const std::vector<std::string> ref_music = stripped_music(ref);
  const std::vector<std::string> hyp_music = stripped_music(hyp);
  return {edit_distance(ref_music, hyp_music), ref_music.size()};
}

MetricValue cer(const AlignedScore& ref, const AlignedScore& hyp) {
  const std::vector<char32_t> ref_chars = lyric_characters(ref);
  const std::vector<char32_t> hyp_chars = lyric_characters(hyp);
  return {edit_distance(ref_chars, hyp_chars), ref_chars.size()};
}

MetricValue syler(const AlignedScore& ref, const AlignedScore& hyp) {
  const std::vector<std::string> ref_syllables = extract_syllables(ref);
  const std::vector<std::string> hyp_syllables = extract_syllables(hyp);
  return {edit_distance(ref_syllables, hyp_syllables), ref_syllables.size()};
}

MetricValue amler(const AlignedScore& ref, const AlignedScore& hyp) {
  const std::vector<TaggedToken> ref_stream = tagged_stream(ref);
  const std::vector<TaggedToken> hyp_stream = tagged_stream(hyp);
  return {edit_distance(ref_stream, hyp_stream), ref_stream.size()};
}

MetricValue bwer(const AlignedScore& ref, const AlignedScore& hyp) {
  const std::vector<TaggedToken> ref_stream = tagged_stream(ref);
  const std::vector<TaggedToken> hyp_stream = tagged_stream(hyp);
  return {bag_edit_count(ref_stream, hyp_stream), ref_stream.size()};
}

double aler(double amler_rate, double bwer_rate) {
  if (amler_rate == 0.0) return 0.0;
  return (amler_rate - bwer_rate) / amler_rate;
}

MetricReport evaluate(const AlignedScore& ref, const AlignedScore& hyp) {
  MetricReport report;
  report.mer = mer(ref, hyp);
  report.cer = cer(ref, hyp);
  report.syler = syler(ref, hyp);
  report.amler = amler(ref, hyp);
  report.bwer = bwer(ref, hyp);
  if (report.amler.defined()) {
    if (report.amler.edits == 0) {
      report.aler = 0.0;
    } else {
      report.aler = static_cast<double>(report.amler.edits - report.bwer.edits) /
                    static_cast<double>(report.amler.edits);
    }
  }
  return report;
}

MetricReport aggregate(std::span<const MetricReport> reports) {
  MetricReport total;
  for (const MetricReport& report : reports) {
    total.mer.edits += report.mer.edits;
    total.mer.ref_len += report.mer.ref_len;
    total.cer.edits += report.cer.edits;
    total.cer.ref_len += report.cer.ref_len;
    total.syler.edits += report.syler.edits;
    total.syler.ref_len += report.syler.ref_len;
    total.amler.edits += report.amler.edits;
    total.amler.ref_len += report.amler.ref_len;
    total.bwer.edits += report.bwer.edits;
    total.bwer.ref_len += report.bwer.ref_len;
  }
  if (total.amler.defined()) {
    if (total.amler.edits == 0) {
      total.aler = 0.0;
    } else {
      total.aler = static_cast<double>(total.amler.edits - total.bwer.edits) /
                   static_cast<double>(total.amler.edits);
    }
  }
  return total;
}

}  // namespace amnlt

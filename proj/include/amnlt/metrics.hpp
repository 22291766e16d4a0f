#pragma once

#include <algorithm>
#include <cstddef>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "amnlt/score.hpp"

namespace amnlt {

// Minimal unit-cost Levenshtein distance between two sequences of
// equality-comparable tokens. Symmetric; 0 iff the sequences are equal.
template <typename T>
std::size_t edit_distance(std::span<const T> ref, std::span<const T> hyp) {
  const std::size_t n = ref.size();
  const std::size_t m = hyp.size();
  if (n == 0) return m;
  if (m == 0) return n;
  std::vector<std::size_t> prev(m + 1);
  std::vector<std::size_t> curr(m + 1);
  std::iota(prev.begin(), prev.end(), std::size_t{0});
  for (std::size_t i = 1; i <= n; ++i) {
    curr[0] = i;
    for (std::size_t j = 1; j <= m; ++j) {
      const std::size_t substitution = prev[j - 1] + (ref[i - 1] == hyp[j - 1] ? 0 : 1);
      curr[j] = std::min({prev[j] + 1, curr[j - 1] + 1, substitution});
    }
    std::swap(prev, curr);
  }
  return prev[m];
}

template <typename T>
std::size_t edit_distance(const std::vector<T>& ref, const std::vector<T>& hyp) {
  return edit_distance(std::span<const T>(ref), std::span<const T>(hyp));
}

// One error rate as raw counts. The rate is undefined when the reference
// sequence is empty.
struct MetricValue {
  std::size_t edits = 0;
  std::size_t ref_len = 0;

  bool defined() const { return ref_len > 0; }
  double rate() const {
    return static_cast<double>(edits) / static_cast<double>(ref_len);
  }

  friend bool operator==(const MetricValue&, const MetricValue&) = default;
};

// Music-token edit rate; "<m>" markers are stripped before comparison.
MetricValue mer(const AlignedScore& ref, const AlignedScore& hyp);

// Character edit rate over the concatenated syllable texts. Syllable
// boundaries are dropped so that pure re-syllabification is penalized by
// syler, not cer.
MetricValue cer(const AlignedScore& ref, const AlignedScore& hyp);

// Syllable edit rate; syllables compared as whole strings.
MetricValue syler(const AlignedScore& ref, const AlignedScore& hyp);

// Edit rate over the interleaved music+lyrics stream, tokens compared with
// their modality tags. Captures content and alignment errors together.
MetricValue amler(const AlignedScore& ref, const AlignedScore& hyp);

// Bag-difference edit count: per-token-value count surpluses on each side,
// the larger total wins. Equals the minimum edit distance over all
// reorderings of hyp.
std::size_t bag_edit_count(const std::vector<TaggedToken>& ref,
                           const std::vector<TaggedToken>& hyp);

// Bag-of-tokens error rate over the interleaved streams, via bag_edit_count.
MetricValue bwer(const AlignedScore& ref, const AlignedScore& hyp);

// (amler - bwer) / amler. Defined as 0 when amler is 0: a perfect
// transcription has no alignment error.
double aler(double amler_rate, double bwer_rate);

struct MetricReport {
  MetricValue mer;
  MetricValue cer;
  MetricValue syler;
  MetricValue amler;
  MetricValue bwer;
  // Unset when amler is undefined.
  std::optional<double> aler;

  friend bool operator==(const MetricReport&, const MetricReport&) = default;
};

// All six metrics for one reference/hypothesis pair. aler is computed from
// the integer edit counts, which is exact: amler and bwer share the
// interleave-length denominator.
MetricReport evaluate(const AlignedScore& ref, const AlignedScore& hyp);

// Corpus-level micro-average: edit counts and reference lengths are summed
// before dividing.
MetricReport aggregate(std::span<const MetricReport> reports);

}  // namespace amnlt

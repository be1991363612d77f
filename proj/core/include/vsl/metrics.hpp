#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace vsl {

struct QARecord {
  std::string id;
  std::string prediction;
  std::vector<std::string> gold_answers;
};

using KVPair = std::pair<std::string, std::string>;

struct KVRecord {
  std::string id;
  std::vector<KVPair> predicted_pairs;
  std::vector<KVPair> gold_pairs;
};

struct MetricReport {
  std::string metric;
  double value = 0.0;
  std::size_t count = 0;
  std::vector<std::pair<std::string, double>> per_item;
};

/// Edit distance over code points (unit insert/delete/substitute costs).
std::size_t levenshtein(std::u32string_view a, std::u32string_view b);
/// UTF-8 convenience overload.
std::size_t levenshtein(std::string_view a, std::string_view b);

/// 1 - edit distance / max length, or 0 when the normalized distance
/// reaches the threshold. Inputs are lowercased and trimmed first.
double anls_score(std::string_view prediction, std::string_view gold, double threshold = 0.5);

/// Average normalized Levenshtein similarity, best gold per record.
MetricReport anls(std::span<const QARecord> records, double threshold = 0.5);

/// Parses a numeric answer after removing commas, '%' and currency signs.
std::optional<double> parse_number(std::string_view s);

/// Numeric answers within `tolerance` relative error of a gold count as
/// correct (a gold of 0 needs an exact 0); other answers need a
/// case-insensitive exact match.
bool relaxed_match(std::string_view prediction, std::string_view gold, double tolerance = 0.05);
MetricReport relaxed_accuracy(std::span<const QARecord> records, double tolerance = 0.05);

MetricReport exact_accuracy(std::span<const QARecord> records);

struct F1Counts {
  std::size_t matched = 0;
  std::size_t predicted = 0;
  std::size_t gold = 0;

  double precision() const;
  double recall() const;
  double f1() const;
};

/// Micro-averaged key-value F1. Pairs are compared after answer
/// normalization; duplicate pairs within a record count once. A record with
/// no predicted and no gold pairs counts as one matched pair.
F1Counts kv_counts(std::span<const KVRecord> records);
MetricReport kv_f1(std::span<const KVRecord> records);

/// Corpus n-gram statistics for BLEU with one reference per candidate.
struct BleuStatistics {
  static constexpr int kMaxOrder = 4;

  std::array<std::size_t, kMaxOrder> matches{};
  std::array<std::size_t, kMaxOrder> candidate_ngrams{};
  std::array<std::size_t, kMaxOrder> reference_ngrams{};
  std::size_t candidate_length = 0;
  std::size_t reference_length = 0;

  /// Clipped precision of order n in 1..4.
  double precision(int n) const;
  double brevity_penalty() const;
  /// BLEU-n: brevity penalty times the geometric mean of precisions 1..n.
  double score(int n) const;
};

BleuStatistics bleu_statistics(std::span<const std::string> candidates,
                               std::span<const std::string> references);

/// Reports BLEU-1 .. BLEU-max_n, metric names "bleu1".."bleu4".
std::vector<MetricReport> bleu(std::span<const std::string> candidates,
                               std::span<const std::string> references, int max_n = 4);

}  // namespace vsl

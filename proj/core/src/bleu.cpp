#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

#include "vsl/metrics.hpp"
#include "vsl/text.hpp"

namespace vsl {
namespace {

using NgramCounts = std::map<std::vector<std::string>, std::size_t>;

NgramCounts count_ngrams(const std::vector<std::string>& tokens, std::size_t n) {
  NgramCounts counts;
  if (tokens.size() < n) return counts;
  for (std::size_t i = 0; i + n <= tokens.size(); ++i) {
    ++counts[std::vector<std::string>(tokens.begin() + static_cast<std::ptrdiff_t>(i),
                                      tokens.begin() + static_cast<std::ptrdiff_t>(i + n))];
  }
  return counts;
}

void check_order(int n) {
  if (n < 1 || n > BleuStatistics::kMaxOrder) {
    throw std::invalid_argument("BLEU order must be in 1..4, got " + std::to_string(n));
  }
}

}  // namespace

double BleuStatistics::precision(int n) const {
  check_order(n);
  const auto k = static_cast<std::size_t>(n - 1);
  if (candidate_ngrams[k] == 0) {
    // No n-grams of this order on either side: the order carries no evidence
    // against the candidate.
    return reference_ngrams[k] == 0 ? 1.0 : 0.0;
  }
  return static_cast<double>(matches[k]) / static_cast<double>(candidate_ngrams[k]);
}

double BleuStatistics::brevity_penalty() const {
  if (candidate_length == 0) return reference_length == 0 ? 1.0 : 0.0;
  if (candidate_length >= reference_length) return 1.0;
  return std::exp(1.0 - static_cast<double>(reference_length) /
                            static_cast<double>(candidate_length));
}

double BleuStatistics::score(int n) const {
  check_order(n);
  double product = 1.0;
  for (int k = 1; k <= n; ++k) {
    const double p = precision(k);
    if (p == 0.0) return 0.0;
    product *= p;
  }
  const double geo = n == 1 ? product : std::pow(product, 1.0 / n);
  return brevity_penalty() * geo;
}

BleuStatistics bleu_statistics(std::span<const std::string> candidates,
                               std::span<const std::string> references) {
  if (candidates.size() != references.size()) {
    throw std::invalid_argument("bleu: " + std::to_string(candidates.size()) +
                                " candidates for " + std::to_string(references.size()) +
                                " references");
  }
  BleuStatistics stats;
  for (std::size_t s = 0; s < candidates.size(); ++s) {
    const auto cand = text::split_words(candidates[s]);
    const auto ref = text::split_words(references[s]);
    stats.candidate_length += cand.size();
    stats.reference_length += ref.size();
    for (std::size_t n = 1; n <= BleuStatistics::kMaxOrder; ++n) {
      const auto cand_counts = count_ngrams(cand, n);
      const auto ref_counts = count_ngrams(ref, n);
      std::size_t clipped = 0;
      for (const auto& [gram, c] : cand_counts) {
        const auto it = ref_counts.find(gram);
        if (it != ref_counts.end()) clipped += std::min(c, it->second);
      }
      stats.matches[n - 1] += clipped;
      stats.candidate_ngrams[n - 1] += cand.size() >= n ? cand.size() - n + 1 : 0;
      stats.reference_ngrams[n - 1] += ref.size() >= n ? ref.size() - n + 1 : 0;
    }
  }
  return stats;
}

std::vector<MetricReport> bleu(std::span<const std::string> candidates,
                               std::span<const std::string> references, int max_n) {
  check_order(max_n);
  if (candidates.empty()) throw std::invalid_argument("bleu: no records to score");
  const BleuStatistics stats = bleu_statistics(candidates, references);
  std::vector<MetricReport> out;
  for (int n = 1; n <= max_n; ++n) {
    MetricReport r;
    r.metric = "bleu" + std::to_string(n);
    r.value = stats.score(n);
    r.count = candidates.size();
    out.push_back(std::move(r));
  }
  return out;
}

}  // namespace vsl

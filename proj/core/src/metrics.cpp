#include "vsl/metrics.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <set>
#include <stdexcept>

#include "vsl/text.hpp"

namespace vsl {
namespace {

void require_records(std::size_t n, const char* metric) {
  if (n == 0) throw std::invalid_argument(std::string(metric) + ": no records to score");
}

void require_golds(const QARecord& r) {
  if (r.gold_answers.empty()) {
    throw std::invalid_argument("record '" + r.id + "' has no gold answers");
  }
}

// Fixed left-to-right summation keeps means reproducible.
MetricReport mean_report(std::string metric, std::vector<std::pair<std::string, double>> items) {
  MetricReport report;
  report.metric = std::move(metric);
  report.count = items.size();
  double sum = 0.0;
  for (const auto& item : items) sum += item.second;
  report.value = sum / static_cast<double>(items.size());
  report.per_item = std::move(items);
  return report;
}

}  // namespace

std::size_t levenshtein(std::u32string_view a, std::u32string_view b) {
  if (a.size() < b.size()) std::swap(a, b);
  std::vector<std::size_t> row(b.size() + 1);
  for (std::size_t j = 0; j <= b.size(); ++j) row[j] = j;
  for (std::size_t i = 1; i <= a.size(); ++i) {
    std::size_t diag = row[0];
    row[0] = i;
    for (std::size_t j = 1; j <= b.size(); ++j) {
      const std::size_t up = row[j];
      const std::size_t sub = diag + (a[i - 1] == b[j - 1] ? 0 : 1);
      row[j] = std::min({up + 1, row[j - 1] + 1, sub});
      diag = up;
    }
  }
  return row[b.size()];
}

std::size_t levenshtein(std::string_view a, std::string_view b) {
  return levenshtein(text::utf8_to_u32(a), text::utf8_to_u32(b));
}

double anls_score(std::string_view prediction, std::string_view gold, double threshold) {
  const auto p = text::utf8_to_u32(text::to_lower_ascii(text::trim(prediction)));
  const auto g = text::utf8_to_u32(text::to_lower_ascii(text::trim(gold)));
  const std::size_t longest = std::max(p.size(), g.size());
  if (longest == 0) return 1.0;
  const double nl = static_cast<double>(levenshtein(p, g)) / static_cast<double>(longest);
  return nl < threshold ? 1.0 - nl : 0.0;
}

MetricReport anls(std::span<const QARecord> records, double threshold) {
  require_records(records.size(), "anls");
  std::vector<std::pair<std::string, double>> items;
  items.reserve(records.size());
  for (const QARecord& r : records) {
    require_golds(r);
    double best = 0.0;
    for (const auto& g : r.gold_answers) best = std::max(best, anls_score(r.prediction, g, threshold));
    items.emplace_back(r.id, best);
  }
  return mean_report("anls", std::move(items));
}

std::optional<double> parse_number(std::string_view s) {
  std::string cleaned;
  const std::string_view t = text::trim(s);
  for (std::size_t i = 0; i < t.size(); ++i) {
    const char c = t[i];
    if (c == ',' || c == '%' || c == '$' || c == ' ') continue;
    cleaned.push_back(c);
  }
  // Multi-byte currency signs: euro, pound, yen.
  for (std::string_view sign : {"€", "£", "¥"}) {
    cleaned = text::replace_all(cleaned, sign, "");
  }
  if (cleaned.empty()) return std::nullopt;
  const char* begin = cleaned.data();
  const char* end = begin + cleaned.size();
  if (*begin == '+') ++begin;
  double value = 0.0;
  auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc{} || ptr != end || !std::isfinite(value)) return std::nullopt;
  return value;
}

bool relaxed_match(std::string_view prediction, std::string_view gold, double tolerance) {
  const auto p = parse_number(prediction);
  const auto g = parse_number(gold);
  if (p && g) {
    if (*g == 0.0) return *p == 0.0;
    return std::fabs(*p - *g) <= tolerance * std::fabs(*g);
  }
  return text::normalize_answer(prediction) == text::normalize_answer(gold);
}

MetricReport relaxed_accuracy(std::span<const QARecord> records, double tolerance) {
  require_records(records.size(), "relaxed_accuracy");
  std::vector<std::pair<std::string, double>> items;
  items.reserve(records.size());
  for (const QARecord& r : records) {
    require_golds(r);
    const bool ok = std::any_of(r.gold_answers.begin(), r.gold_answers.end(),
                                [&](const std::string& g) { return relaxed_match(r.prediction, g, tolerance); });
    items.emplace_back(r.id, ok ? 1.0 : 0.0);
  }
  return mean_report("relaxed_accuracy", std::move(items));
}

MetricReport exact_accuracy(std::span<const QARecord> records) {
  require_records(records.size(), "accuracy");
  std::vector<std::pair<std::string, double>> items;
  items.reserve(records.size());
  for (const QARecord& r : records) {
    require_golds(r);
    const std::string p = text::normalize_answer(r.prediction);
    const bool ok = std::any_of(r.gold_answers.begin(), r.gold_answers.end(),
                                [&](const std::string& g) { return text::normalize_answer(g) == p; });
    items.emplace_back(r.id, ok ? 1.0 : 0.0);
  }
  return mean_report("accuracy", std::move(items));
}

double F1Counts::precision() const {
  return predicted == 0 ? 0.0 : static_cast<double>(matched) / static_cast<double>(predicted);
}

double F1Counts::recall() const {
  return gold == 0 ? 0.0 : static_cast<double>(matched) / static_cast<double>(gold);
}

double F1Counts::f1() const {
  const double p = precision();
  const double r = recall();
  return p + r == 0.0 ? 0.0 : 2.0 * p * r / (p + r);
}

namespace {

std::set<KVPair> normalized_set(const std::vector<KVPair>& pairs, const std::string& id) {
  std::set<KVPair> out;
  for (const auto& [category, value] : pairs) {
    auto c = text::normalize_answer(category);
    if (c.empty()) throw std::invalid_argument("record '" + id + "' has an empty category");
    out.emplace(std::move(c), text::normalize_answer(value));
  }
  return out;
}

F1Counts record_counts(const KVRecord& r) {
  const auto pred = normalized_set(r.predicted_pairs, r.id);
  const auto gold = normalized_set(r.gold_pairs, r.id);
  if (pred.empty() && gold.empty()) return {1, 1, 1};
  F1Counts c;
  c.predicted = pred.size();
  c.gold = gold.size();
  for (const auto& p : pred) c.matched += gold.count(p);
  return c;
}

}  // namespace

F1Counts kv_counts(std::span<const KVRecord> records) {
  F1Counts total;
  for (const KVRecord& r : records) {
    const F1Counts c = record_counts(r);
    total.matched += c.matched;
    total.predicted += c.predicted;
    total.gold += c.gold;
  }
  return total;
}

MetricReport kv_f1(std::span<const KVRecord> records) {
  require_records(records.size(), "f1");
  MetricReport report;
  report.metric = "f1";
  report.count = records.size();
  F1Counts total;
  for (const KVRecord& r : records) {
    const F1Counts c = record_counts(r);
    total.matched += c.matched;
    total.predicted += c.predicted;
    total.gold += c.gold;
    report.per_item.emplace_back(r.id, c.f1());
  }
  report.value = total.f1();
  return report;
}

}  // namespace vsl

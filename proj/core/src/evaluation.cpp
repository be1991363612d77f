#include "vsl/evaluation.hpp"

#include <map>
#include <set>
#include <stdexcept>

#include "jsonl.hpp"
#include "vsl/instruction_builder.hpp"
#include "vsl/text.hpp"

namespace vsl {
namespace {

using nlohmann::json;

struct Keyed {
  std::vector<std::string> order;
  std::map<std::string, json> rows;
};

Keyed read_keyed(const std::filesystem::path& path, const char* what) {
  Keyed out;
  detail::for_each_line(path, [&](std::size_t number, const std::string& line) {
    json obj;
    try {
      obj = json::parse(line);
      if (!obj.is_object()) throw std::invalid_argument("line is not a JSON object");
      std::string id = detail::id_of(obj);
      if (out.rows.count(id)) throw std::invalid_argument("duplicate id '" + id + "'");
      out.order.push_back(id);
      out.rows.emplace(std::move(id), std::move(obj));
    } catch (const json::exception& e) {
      throw DataError(std::string(what) + " " + path.string() + ":" + std::to_string(number) +
                      ": " + e.what());
    } catch (const std::invalid_argument& e) {
      throw DataError(std::string(what) + " " + path.string() + ":" + std::to_string(number) +
                      ": " + e.what());
    }
  });
  return out;
}

void check_ids(const Keyed& pred, const Keyed& gold) {
  std::vector<std::string> missing;
  std::vector<std::string> unexpected;
  for (const auto& id : gold.order) {
    if (!pred.rows.count(id)) missing.push_back(id);
  }
  for (const auto& id : pred.order) {
    if (!gold.rows.count(id)) unexpected.push_back(id);
  }
  if (missing.empty() && unexpected.empty()) return;
  std::string msg = "prediction and gold ids differ";
  if (!missing.empty()) msg += "; missing predictions for: " + text::join(missing, ", ");
  if (!unexpected.empty()) msg += "; predictions without gold: " + text::join(unexpected, ", ");
  throw DataError(msg);
}

std::string prediction_of(const json& row, const std::string& id) {
  const auto it = row.find("prediction");
  if (it == row.end() || !it->is_string()) {
    throw DataError("prediction '" + id + "' lacks a string \"prediction\"");
  }
  return it->get<std::string>();
}

std::vector<std::string> answers_of(const json& row, const std::string& id) {
  const auto it = row.find("answers");
  if (it == row.end() || !it->is_array() || it->empty()) {
    throw DataError("gold '" + id + "' lacks a non-empty \"answers\" array");
  }
  std::vector<std::string> out;
  for (const auto& a : *it) {
    if (!a.is_string()) throw DataError("gold '" + id + "' has a non-string answer");
    out.push_back(a.get<std::string>());
  }
  return out;
}

bool is_missing_value(const std::string& v) {
  return text::normalize_answer(v) == text::to_lower_ascii(kMissingValue);
}

// Pairs whose value is "None" mark an absent category and are not counted.
std::vector<KVPair> pairs_of(const json& row, const std::string& id) {
  const auto it = row.find("pairs");
  if (it == row.end() || !it->is_array()) {
    throw DataError("record '" + id + "' lacks a \"pairs\" array");
  }
  std::vector<KVPair> out;
  for (const auto& p : *it) {
    if (!p.is_array() || p.size() != 2 || !p[0].is_string() ||
        !(p[1].is_string() || p[1].is_null())) {
      throw DataError("record '" + id + "' has a pair that is not [category, value]");
    }
    if (p[1].is_null()) continue;
    auto value = p[1].get<std::string>();
    if (is_missing_value(value)) continue;
    out.emplace_back(p[0].get<std::string>(), std::move(value));
  }
  return out;
}

KVRecord kv_record(const std::string& id, const json& pred, const json& gold) {
  KVRecord r;
  r.id = id;
  if (!gold.contains("pairs")) throw DataError("gold '" + id + "' lacks a \"pairs\" array");
  const auto& raw_gold = gold.at("pairs");
  r.gold_pairs = pairs_of(gold, id);
  if (pred.contains("pairs")) {
    r.predicted_pairs = pairs_of(pred, id);
    return r;
  }
  // A plain prediction answers the single category of its gold record.
  if (!raw_gold.is_array() || raw_gold.size() != 1) {
    throw DataError("prediction '" + id +
                    "' is a plain string but its gold has more than one category; use \"pairs\"");
  }
  const std::string value = prediction_of(pred, id);
  if (!is_missing_value(value) && !text::trim(value).empty()) {
    r.predicted_pairs.emplace_back(raw_gold[0][0].get<std::string>(), value);
  }
  return r;
}

}  // namespace

Metric parse_metric(std::string_view name) {
  if (name == "anls") return Metric::anls;
  if (name == "relaxed_accuracy" || name == "relaxed") return Metric::relaxed_accuracy;
  if (name == "accuracy" || name == "exact") return Metric::accuracy;
  if (name == "f1") return Metric::f1;
  if (name == "bleu") return Metric::bleu;
  throw std::invalid_argument("unknown metric '" + std::string(name) +
                              "' (expected anls, relaxed_accuracy, accuracy, f1, bleu)");
}

std::string_view to_string(Metric metric) {
  switch (metric) {
    case Metric::anls:
      return "anls";
    case Metric::relaxed_accuracy:
      return "relaxed_accuracy";
    case Metric::accuracy:
      return "accuracy";
    case Metric::f1:
      return "f1";
    case Metric::bleu:
      return "bleu";
  }
  return "unknown";
}

std::vector<MetricReport> run_eval(Metric metric, const std::filesystem::path& pred_path,
                                   const std::filesystem::path& gold_path,
                                   const EvalOptions& options) {
  const Keyed pred = read_keyed(pred_path, "prediction file");
  const Keyed gold = read_keyed(gold_path, "gold file");
  check_ids(pred, gold);
  if (gold.order.empty()) throw DataError("gold file " + gold_path.string() + " has no records");

  if (metric == Metric::f1) {
    std::vector<KVRecord> records;
    for (const auto& id : gold.order) records.push_back(kv_record(id, pred.rows.at(id), gold.rows.at(id)));
    return {kv_f1(records)};
  }
  if (metric == Metric::bleu) {
    std::vector<std::string> candidates;
    std::vector<std::string> references;
    for (const auto& id : gold.order) {
      candidates.push_back(prediction_of(pred.rows.at(id), id));
      references.push_back(answers_of(gold.rows.at(id), id).front());
    }
    return bleu(candidates, references, options.bleu_max_n);
  }

  std::vector<QARecord> records;
  for (const auto& id : gold.order) {
    records.push_back({id, prediction_of(pred.rows.at(id), id), answers_of(gold.rows.at(id), id)});
  }
  switch (metric) {
    case Metric::anls:
      return {anls(records, options.anls_threshold)};
    case Metric::relaxed_accuracy:
      return {relaxed_accuracy(records, options.relaxed_tolerance)};
    default:
      return {exact_accuracy(records)};
  }
}

std::string report_json(const std::vector<MetricReport>& reports) {
  auto one = [](const MetricReport& r) {
    detail::ordered_json j;
    j["metric"] = r.metric;
    j["value"] = r.value;
    j["count"] = r.count;
    return j;
  };
  if (reports.size() == 1) return one(reports.front()).dump() + "\n";
  detail::ordered_json arr = detail::ordered_json::array();
  for (const auto& r : reports) arr.push_back(one(r));
  return arr.dump() + "\n";
}

}  // namespace vsl

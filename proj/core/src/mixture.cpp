#include <filesystem>
#include <sstream>

#include "jsonl.hpp"
#include "vsl/pipeline.hpp"
#include "vsl/random.hpp"
#include "vsl/text.hpp"

namespace vsl {
namespace {

template <class... Fs>
struct Overloaded : Fs... {
  using Fs::operator()...;
};
template <class... Fs>
Overloaded(Fs...) -> Overloaded<Fs...>;

}  // namespace

std::vector<InstructionSample> build_samples(const DatasetSpec& spec, const IngestResult& ingested,
                                             const TemplateSet& templates, std::uint64_t seed) {
  std::vector<InstructionSample> samples;
  samples.reserve(ingested.records.size());
  for (const RawRecord& rec : ingested.records) {
    const SampleMeta meta{rec.id, spec.name, rec.image};
    Rng rng(derive_seed(seed, spec.name + '\x1f' + std::to_string(rec.line)));
    std::visit(Overloaded{
                   [&](const VqaPayload& p) { samples.push_back(format_vqa(p.question, p.answer, meta)); },
                   [&](const IePayload& p) {
                     auto ie = format_ie(p.fields, meta);
                     for (std::size_t k = 0; k < ie.size(); ++k) {
                       ie[k].id = rec.id + "#" + std::to_string(k);
                       samples.push_back(std::move(ie[k]));
                     }
                   },
                   [&](const NliPayload& p) { samples.push_back(format_nli(p.statement, p.label, meta)); },
                   [&](const CaptionPayload& p) {
                     samples.push_back(format_caption(p.caption, templates, rng, meta));
                   },
                   [&](const TextReadingPayload& p) {
                     const std::string ordered =
                         p.tokens.empty() ? p.text : serialize_reading_order(p.tokens);
                     const auto words = text::split_words(ordered);
                     samples.push_back(make_text_reading_sample(words, templates, rng, meta));
                   },
                   [&](const KeyPointsPayload& p) {
                     samples.push_back(make_keypoints_sample(p.key_points, templates, rng, meta));
                   },
               },
               rec.payload);
  }
  return samples;
}

std::string sample_to_json(const InstructionSample& sample) {
  detail::ordered_json j;
  j["id"] = sample.id;
  j["dataset"] = sample.dataset;
  j["task"] = std::string(to_string(sample.task));
  j["image_ref"] = sample.image_ref;
  j["prompt"] = sample.prompt;
  j["target"] = sample.target;
  return detail::dump_compact(j);
}

MixtureResult build_mixture(const RunConfig& config) {
  config.validate();
  const std::uint64_t seed = *config.seed;
  const TemplateSet templates =
      config.templates_path.empty() ? default_templates() : load_templates(config.templates_path);

  MixtureResult result;
  std::vector<InstructionSample> mixture;
  for (const DatasetSpec& spec : config.datasets) {
    IngestResult ingested = ingest(spec);
    enforce_malformed_budget(ingested, spec);
    for (auto& w : ingested.warnings) result.warnings.push_back(std::move(w));
    const auto samples = build_samples(spec, ingested, templates, seed);

    DatasetStats stats;
    stats.name = spec.name;
    stats.task = spec.task;
    stats.lines = ingested.lines;
    stats.records = ingested.records.size();
    stats.malformed = ingested.malformed.size();
    stats.samples = samples.size();
    stats.upsample = spec.upsample;
    stats.emitted = samples.size() * static_cast<std::size_t>(spec.upsample);
    result.datasets.push_back(stats);

    for (int r = 0; r < spec.upsample; ++r) {
      mixture.insert(mixture.end(), samples.begin(), samples.end());
    }
  }
  Rng shuffle_rng(derive_seed(seed, "mixture-shuffle"));
  shuffle(mixture, shuffle_rng);
  result.total = mixture.size();

  std::filesystem::create_directories(config.output_dir);
  result.instructions_path = config.output_dir / "mixture.jsonl";
  result.stats_path = config.output_dir / "mixture_stats.json";

  std::string jsonl;
  for (const auto& s : mixture) {
    jsonl += sample_to_json(s);
    jsonl += '\n';
  }
  detail::write_text_file(result.instructions_path, jsonl);

  detail::ordered_json stats;
  stats["seed"] = seed;
  stats["rng"] = std::string(Rng::kAlgorithm);
  stats["total"] = result.total;
  stats["datasets"] = detail::ordered_json::array();
  for (const DatasetStats& d : result.datasets) {
    detail::ordered_json e;
    e["name"] = d.name;
    e["task"] = std::string(to_string(d.task));
    e["lines"] = d.lines;
    e["records"] = d.records;
    e["malformed"] = d.malformed;
    e["samples"] = d.samples;
    e["upsample"] = d.upsample;
    e["emitted"] = d.emitted;
    stats["datasets"].push_back(std::move(e));
  }
  detail::write_text_file(result.stats_path,
                          stats.dump(2, ' ', false, nlohmann::json::error_handler_t::replace) + "\n");
  return result;
}

}  // namespace vsl

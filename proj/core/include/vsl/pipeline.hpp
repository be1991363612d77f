#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "vsl/grid_geometry.hpp"
#include "vsl/instruction_builder.hpp"

namespace vsl {

struct DatasetSpec {
  std::string name;
  std::filesystem::path manifest_path;
  TaskType task = TaskType::vqa;
  int upsample = 1;
};

struct RunConfig {
  std::vector<DatasetSpec> datasets;
  CropConfig crop;
  std::optional<std::uint64_t> seed;
  std::filesystem::path output_dir = "out";
  /// Empty means the built-in templates.
  std::filesystem::path templates_path;

  /// Unique dataset names, upsample >= 1, valid crop config, explicit seed.
  void validate() const;
};

/// Reads a JSON run config. Relative paths resolve against the config file's
/// directory.
RunConfig load_run_config(const std::filesystem::path& path);
RunConfig parse_run_config(std::string_view json_text, const std::filesystem::path& base_dir);

// Per-task record payloads as they appear in dataset manifests.
struct VqaPayload {
  std::string question;
  std::string answer;
};
struct IePayload {
  std::vector<IeField> fields;
};
struct NliPayload {
  std::string statement;
  int label = 0;
};
struct CaptionPayload {
  std::string caption;
};
struct TextReadingPayload {
  /// Either OCR tokens (serialized in reading order) or pre-ordered text.
  std::vector<OcrToken> tokens;
  std::string text;
};
struct KeyPointsPayload {
  std::vector<std::string> key_points;
};

using RecordPayload = std::variant<VqaPayload, IePayload, NliPayload, CaptionPayload,
                                   TextReadingPayload, KeyPointsPayload>;

struct RawRecord {
  std::size_t line = 0;
  std::string id;
  std::string image;
  RecordPayload payload;
};

struct MalformedLine {
  std::size_t line = 0;
  std::string reason;
};

struct IngestResult {
  std::vector<RawRecord> records;
  std::vector<MalformedLine> malformed;
  /// Non-blank lines seen.
  std::size_t lines = 0;
  std::vector<std::string> warnings;
};

/// Parses a JSONL manifest. Every record needs "image" plus the task keys.
/// Bad lines are collected in `malformed`, not dropped silently.
/// Throws IoError when the file cannot be opened.
IngestResult ingest(const DatasetSpec& spec);

/// Throws DataError listing line numbers when more than 1% of lines are bad.
void enforce_malformed_budget(const IngestResult& result, const DatasetSpec& spec);

/// Builds the instruction samples of one dataset (before upsampling). Each
/// record draws from its own generator derived from (seed, dataset, line).
std::vector<InstructionSample> build_samples(const DatasetSpec& spec, const IngestResult& ingested,
                                             const TemplateSet& templates, std::uint64_t seed);

/// One JSONL line (no trailing newline) with keys
/// id, dataset, task, image_ref, prompt, target.
std::string sample_to_json(const InstructionSample& sample);

struct DatasetStats {
  std::string name;
  TaskType task = TaskType::vqa;
  std::size_t lines = 0;
  std::size_t records = 0;
  std::size_t malformed = 0;
  std::size_t samples = 0;
  int upsample = 1;
  std::size_t emitted = 0;
};

struct MixtureResult {
  std::filesystem::path instructions_path;
  std::filesystem::path stats_path;
  std::vector<DatasetStats> datasets;
  std::size_t total = 0;
  std::vector<std::string> warnings;
};

/// Ingests every dataset, repeats its samples `upsample` times, shuffles the
/// concatenation with a seeded Fisher-Yates pass, and writes
/// mixture.jsonl and mixture_stats.json into config.output_dir.
MixtureResult build_mixture(const RunConfig& config);

/// Reading-order serialization of a token file: a JSON array of tokens, or
/// JSONL records {"id": ..., "tokens": [...]}. Returns (id, text) pairs.
std::vector<std::pair<std::string, std::string>> read_order_file(const std::filesystem::path& path);

}  // namespace vsl

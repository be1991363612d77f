#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "vsl/random.hpp"
#include "vsl/templates.hpp"

namespace vsl {

enum class TaskType { vqa, ie, nli, caption, text_reading, key_points };

std::string_view to_string(TaskType task);
/// Accepts the enum spellings above; throws std::invalid_argument otherwise.
TaskType parse_task(std::string_view name);

struct SampleMeta {
  std::string id;
  std::string dataset;
  std::string image_ref;
};

/// One training record. `prompt` ends with "AI:"; the answer is in `target`.
struct InstructionSample {
  std::string id;
  std::string dataset;
  TaskType task = TaskType::vqa;
  std::string image_ref;
  std::string prompt;
  std::string target;

  friend bool operator==(const InstructionSample&, const InstructionSample&) = default;
};

/// OCR word with an axis-aligned pixel box (top-left origin).
struct OcrToken {
  std::string text;
  double x = 0.0;
  double y = 0.0;
  double width = 0.0;
  double height = 0.0;
};

struct IeField {
  std::string category;
  std::optional<std::string> value;
};

inline constexpr std::string_view kMissingValue = "None";

InstructionSample format_vqa(std::string_view question, std::string_view answer,
                             const SampleMeta& meta);

/// One sample per field, in input order. Absent values become "None".
std::vector<InstructionSample> format_ie(std::span<const IeField> fields, const SampleMeta& meta);

/// label 1 (entailed) -> "Yes", 0 (refuted) -> "No".
InstructionSample format_nli(std::string_view statement, int label, const SampleMeta& meta);

InstructionSample format_caption(std::string_view caption, const TemplateSet& templates, Rng& rng,
                                 const SampleMeta& meta);

/// Top-to-bottom, left-to-right serialization.
///
/// Tokens whose vertical centers are closer than half the median token height
/// are linked; lines are the connected groups of that relation. Lines are
/// ordered by mean top edge and tokens within a line by x. Output is every
/// token text joined by single spaces.
std::string serialize_reading_order(std::span<const OcrToken> tokens);

struct SplitChoice {
  std::size_t position = 0;
  double probability = 0.0;
};

/// Candidate split positions floor(k * L / 6), k = 0..5, with rates
/// 0.5 for k = 0 and 0.1 otherwise. Colliding positions are merged and their
/// rates summed. Ascending by position.
std::vector<SplitChoice> split_distribution(std::size_t length);

/// Draws a split position from split_distribution(length).
std::size_t draw_split_position(std::size_t length, Rng& rng);

/// Text Reading sample with a randomly drawn split position.
InstructionSample make_text_reading_sample(std::span<const std::string> words,
                                           const TemplateSet& templates, Rng& rng,
                                           const SampleMeta& meta);

/// Text Reading sample at an explicit split. split = 0 reads from the start;
/// otherwise words [0, split) go into the prompt and [split, L) are the target.
InstructionSample make_text_reading_sample_at(std::span<const std::string> words,
                                              std::size_t split, const TemplateSet& templates,
                                              Rng& rng, const SampleMeta& meta);

/// Each key point is trimmed and terminated with '.', then joined by spaces.
InstructionSample make_keypoints_sample(std::span<const std::string> key_points,
                                        const TemplateSet& templates, Rng& rng,
                                        const SampleMeta& meta);

}  // namespace vsl

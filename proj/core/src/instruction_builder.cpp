#include "vsl/instruction_builder.hpp"

#include <array>
#include <stdexcept>

#include "vsl/text.hpp"

namespace vsl {
namespace {

constexpr std::array<std::string_view, 6> kTaskNames = {"vqa",     "ie",           "nli",
                                                        "caption", "text_reading", "key_points"};

std::string require_text(std::string_view value, const char* what) {
  std::string s = text::collapse_whitespace(value);
  if (s.empty()) throw std::invalid_argument(std::string(what) + " must be non-empty");
  return s;
}

InstructionSample make_sample(const SampleMeta& meta, TaskType task, std::string prompt,
                              std::string target) {
  return {meta.id, meta.dataset, task, meta.image_ref, std::move(prompt), std::move(target)};
}

const std::string& pick(const std::vector<std::string>& list, Rng& rng, const char* what) {
  if (list.empty()) throw std::invalid_argument(std::string(what) + " template list is empty");
  return list[rng.uniform_index(list.size())];
}

std::string join_range(std::span<const std::string> words) {
  std::string out;
  for (std::size_t i = 0; i < words.size(); ++i) {
    if (i > 0) out.push_back(' ');
    out.append(words[i]);
  }
  return out;
}

}  // namespace

std::string_view to_string(TaskType task) { return kTaskNames[static_cast<std::size_t>(task)]; }

TaskType parse_task(std::string_view name) {
  for (std::size_t i = 0; i < kTaskNames.size(); ++i) {
    if (kTaskNames[i] == name) return static_cast<TaskType>(i);
  }
  throw std::invalid_argument("unknown task '" + std::string(name) + "'");
}

InstructionSample format_vqa(std::string_view question, std::string_view answer,
                             const SampleMeta& meta) {
  const std::string q = require_text(question, "question");
  std::string a = std::string(text::trim(answer));
  if (a.empty()) throw std::invalid_argument("answer must be non-empty");
  return make_sample(meta, TaskType::vqa, "Human: " + q + " AI:", std::move(a));
}

std::vector<InstructionSample> format_ie(std::span<const IeField> fields, const SampleMeta& meta) {
  std::vector<InstructionSample> out;
  out.reserve(fields.size());
  for (const IeField& f : fields) {
    const std::string category = require_text(f.category, "IE category");
    std::string value;
    if (f.value) value = std::string(text::trim(*f.value));
    if (value.empty()) value = std::string(kMissingValue);
    out.push_back(make_sample(meta, TaskType::ie,
                              "Human: What is the value for the " + category + "? AI:",
                              std::move(value)));
  }
  return out;
}

InstructionSample format_nli(std::string_view statement, int label, const SampleMeta& meta) {
  if (label != 0 && label != 1) {
    throw std::invalid_argument("NLI label must be 0 or 1, got " + std::to_string(label));
  }
  const std::string s = require_text(statement, "statement");
  return make_sample(meta, TaskType::nli, "Human: " + s + ", Yes or No? AI:",
                     label == 1 ? "Yes" : "No");
}

InstructionSample format_caption(std::string_view caption, const TemplateSet& templates, Rng& rng,
                                 const SampleMeta& meta) {
  std::string target = std::string(text::trim(caption));
  if (target.empty()) throw std::invalid_argument("caption must be non-empty");
  const std::string& templ = pick(templates.caption, rng, "caption");
  return make_sample(meta, TaskType::caption, prompt_part(templ), std::move(target));
}

std::vector<SplitChoice> split_distribution(std::size_t length) {
  if (length == 0) throw std::invalid_argument("split_distribution: empty text");
  std::vector<SplitChoice> out;
  for (std::size_t k = 0; k < 6; ++k) {
    const std::size_t position = k * length / 6;
    const double rate = k == 0 ? 0.5 : 0.1;
    if (!out.empty() && out.back().position == position) {
      out.back().probability += rate;
    } else {
      out.push_back({position, rate});
    }
  }
  return out;
}

std::size_t draw_split_position(std::size_t length, Rng& rng) {
  if (length == 0) throw std::invalid_argument("draw_split_position: empty text");
  // Ten equal buckets: five map to k = 0, one to each of k = 1..5.
  const std::uint64_t bucket = rng.uniform_index(10);
  const std::size_t k = bucket < 5 ? 0 : static_cast<std::size_t>(bucket - 4);
  return k * length / 6;
}

InstructionSample make_text_reading_sample(std::span<const std::string> words,
                                           const TemplateSet& templates, Rng& rng,
                                           const SampleMeta& meta) {
  if (words.empty()) throw std::invalid_argument("text reading sample needs at least one word");
  const std::size_t split = draw_split_position(words.size(), rng);
  return make_text_reading_sample_at(words, split, templates, rng, meta);
}

InstructionSample make_text_reading_sample_at(std::span<const std::string> words,
                                              std::size_t split, const TemplateSet& templates,
                                              Rng& rng, const SampleMeta& meta) {
  if (words.empty()) throw std::invalid_argument("text reading sample needs at least one word");
  if (split >= words.size()) {
    throw std::invalid_argument("split position " + std::to_string(split) +
                                " must be below text length " + std::to_string(words.size()));
  }
  if (split == 0) {
    const std::string& begin = pick(templates.read_begin, rng, "read_begin");
    return make_sample(meta, TaskType::text_reading, prompt_part(begin), join_range(words));
  }
  const std::string& part_a = pick(templates.read_continue_a, rng, "read_continue_a");
  const std::string& part_b = pick(templates.read_continue_b, rng, "read_continue_b");
  const std::string left = join_range(words.first(split));
  const std::string head =
      text::replace_all(strip_image_marker(part_a), kLeftTextsSlot, left);
  return make_sample(meta, TaskType::text_reading,
                     text::collapse_whitespace(head + " " + prompt_part(part_b)),
                     join_range(words.subspan(split)));
}

InstructionSample make_keypoints_sample(std::span<const std::string> key_points,
                                        const TemplateSet& templates, Rng& rng,
                                        const SampleMeta& meta) {
  if (key_points.empty()) throw std::invalid_argument("key points list is empty");
  std::vector<std::string> sentences;
  sentences.reserve(key_points.size());
  for (const std::string& kp : key_points) {
    std::string s = require_text(kp, "key point");
    if (s.back() != '.') s.push_back('.');
    sentences.push_back(std::move(s));
  }
  const std::string& templ = pick(templates.key_points, rng, "key_points");
  return make_sample(meta, TaskType::key_points, prompt_part(templ), text::join(sentences, " "));
}

}  // namespace vsl

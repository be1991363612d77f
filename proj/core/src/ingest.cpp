#include <stdexcept>

#include "jsonl.hpp"
#include "vsl/pipeline.hpp"
#include "vsl/text.hpp"

namespace vsl {
namespace {

using nlohmann::json;

std::string required_string(const json& obj, const char* key) {
  const auto it = obj.find(key);
  if (it == obj.end()) throw std::invalid_argument(std::string("missing \"") + key + "\"");
  if (!it->is_string()) throw std::invalid_argument(std::string("\"") + key + "\" must be a string");
  auto s = it->get<std::string>();
  if (text::trim(s).empty()) throw std::invalid_argument(std::string("\"") + key + "\" is empty");
  return s;
}

std::vector<std::string> string_list(const json& obj, const char* key) {
  const auto it = obj.find(key);
  if (it == obj.end()) throw std::invalid_argument(std::string("missing \"") + key + "\"");
  if (!it->is_array() || it->empty()) {
    throw std::invalid_argument(std::string("\"") + key + "\" must be a non-empty array");
  }
  std::vector<std::string> out;
  for (const auto& v : *it) {
    if (!v.is_string() || text::trim(v.get<std::string>()).empty()) {
      throw std::invalid_argument(std::string("\"") + key + "\" holds a non-string or empty entry");
    }
    out.push_back(v.get<std::string>());
  }
  return out;
}

OcrToken parse_token(const json& t) {
  if (!t.is_object()) throw std::invalid_argument("token must be an object");
  OcrToken tok;
  tok.text = required_string(t, "text");
  for (const char* key : {"x", "y", "width", "height"}) {
    if (!t.contains(key) || !t.at(key).is_number()) {
      throw std::invalid_argument(std::string("token missing numeric \"") + key + "\"");
    }
  }
  tok.x = t.at("x").get<double>();
  tok.y = t.at("y").get<double>();
  tok.width = t.at("width").get<double>();
  tok.height = t.at("height").get<double>();
  if (!(tok.width > 0.0) || !(tok.height > 0.0)) {
    throw std::invalid_argument("token box must have positive width and height");
  }
  return tok;
}

std::vector<OcrToken> parse_tokens(const json& arr) {
  if (!arr.is_array() || arr.empty()) throw std::invalid_argument("\"tokens\" must be a non-empty array");
  std::vector<OcrToken> tokens;
  for (const auto& t : arr) tokens.push_back(parse_token(t));
  return tokens;
}

RecordPayload parse_payload(const json& obj, TaskType task) {
  switch (task) {
    case TaskType::vqa: {
      VqaPayload p;
      p.question = required_string(obj, "question");
      if (obj.contains("answer")) {
        p.answer = required_string(obj, "answer");
      } else {
        p.answer = string_list(obj, "answers").front();
      }
      return p;
    }
    case TaskType::ie: {
      IePayload p;
      const auto it = obj.find("fields");
      if (it == obj.end() || !it->is_array() || it->empty()) {
        throw std::invalid_argument("\"fields\" must be a non-empty array");
      }
      for (const auto& f : *it) {
        IeField field;
        json category;
        json value;
        if (f.is_array() && (f.size() == 1 || f.size() == 2)) {
          category = f[0];
          if (f.size() == 2) value = f[1];
        } else if (f.is_object()) {
          category = f.value("category", json());
          value = f.value("value", json());
        } else {
          throw std::invalid_argument("IE field must be [category, value] or an object");
        }
        if (!category.is_string() || text::trim(category.get<std::string>()).empty()) {
          throw std::invalid_argument("IE field category must be a non-empty string");
        }
        field.category = category.get<std::string>();
        if (value.is_string()) {
          field.value = value.get<std::string>();
        } else if (!value.is_null()) {
          throw std::invalid_argument("IE field value must be a string or null");
        }
        p.fields.push_back(std::move(field));
      }
      return p;
    }
    case TaskType::nli: {
      NliPayload p;
      p.statement = required_string(obj, "statement");
      const auto it = obj.find("label");
      if (it == obj.end() || !it->is_number_integer()) {
        throw std::invalid_argument("\"label\" must be the integer 0 or 1");
      }
      p.label = it->get<int>();
      if (p.label != 0 && p.label != 1) throw std::invalid_argument("\"label\" must be 0 or 1");
      return p;
    }
    case TaskType::caption:
      return CaptionPayload{required_string(obj, "caption")};
    case TaskType::text_reading: {
      TextReadingPayload p;
      if (obj.contains("tokens")) {
        p.tokens = parse_tokens(obj.at("tokens"));
      } else {
        p.text = required_string(obj, "text");
      }
      return p;
    }
    case TaskType::key_points:
      return KeyPointsPayload{string_list(obj, "key_points")};
  }
  throw std::invalid_argument("unknown task");
}

}  // namespace

IngestResult ingest(const DatasetSpec& spec) {
  IngestResult result;
  detail::for_each_line(spec.manifest_path, [&](std::size_t number, const std::string& line) {
    ++result.lines;
    try {
      const json obj = json::parse(line);
      if (!obj.is_object()) throw std::invalid_argument("line is not a JSON object");
      RawRecord rec;
      rec.line = number;
      rec.image = required_string(obj, "image");
      rec.id = obj.contains("id") ? detail::id_of(obj) : std::to_string(number);
      rec.payload = parse_payload(obj, spec.task);
      result.records.push_back(std::move(rec));
    } catch (const json::exception& e) {
      result.malformed.push_back({number, e.what()});
    } catch (const std::invalid_argument& e) {
      result.malformed.push_back({number, e.what()});
    }
  });
  if (result.lines == 0) {
    result.warnings.push_back("dataset '" + spec.name + "': manifest " +
                              spec.manifest_path.string() + " has no records");
  }
  if (!result.malformed.empty()) {
    result.warnings.push_back("dataset '" + spec.name + "': " +
                              std::to_string(result.malformed.size()) + " of " +
                              std::to_string(result.lines) + " lines rejected");
  }
  return result;
}

void enforce_malformed_budget(const IngestResult& result, const DatasetSpec& spec) {
  // More than 1% bad lines is fatal.
  if (result.malformed.size() * 100 <= result.lines) return;
  std::string msg = "dataset '" + spec.name + "': " + std::to_string(result.malformed.size()) +
                    " of " + std::to_string(result.lines) + " lines malformed in " +
                    spec.manifest_path.string() + ":";
  constexpr std::size_t kListed = 50;
  for (std::size_t i = 0; i < result.malformed.size() && i < kListed; ++i) {
    msg += "\n  line " + std::to_string(result.malformed[i].line) + ": " +
           result.malformed[i].reason;
  }
  if (result.malformed.size() > kListed) {
    msg += "\n  ... " + std::to_string(result.malformed.size() - kListed) + " more";
  }
  throw DataError(msg);
}

std::vector<std::pair<std::string, std::string>> read_order_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::string content((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  std::vector<std::pair<std::string, std::string>> out;
  const auto first = content.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && content[first] == '[') {
    try {
      out.emplace_back("", serialize_reading_order(parse_tokens(json::parse(content))));
    } catch (const json::exception& e) {
      throw std::invalid_argument(path.string() + ": " + e.what());
    }
    return out;
  }
  detail::for_each_line(path, [&](std::size_t number, const std::string& line) {
    try {
      const json obj = json::parse(line);
      const std::string id = obj.contains("id") ? detail::id_of(obj) : std::to_string(number);
      out.emplace_back(id, serialize_reading_order(parse_tokens(obj.at("tokens"))));
    } catch (const json::exception& e) {
      throw std::invalid_argument(path.string() + ":" + std::to_string(number) + ": " + e.what());
    } catch (const std::invalid_argument& e) {
      throw std::invalid_argument(path.string() + ":" + std::to_string(number) + ": " + e.what());
    }
  });
  return out;
}

}  // namespace vsl

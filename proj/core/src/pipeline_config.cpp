#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

#include "jsonl.hpp"
#include "vsl/pipeline.hpp"

namespace vsl {

void RunConfig::validate() const {
  crop.validate();
  if (!seed) {
    throw std::invalid_argument("run config needs an explicit seed (config \"seed\" or --seed)");
  }
  std::set<std::string> names;
  for (const DatasetSpec& d : datasets) {
    if (d.name.empty()) throw std::invalid_argument("dataset name must be non-empty");
    if (!names.insert(d.name).second) {
      throw std::invalid_argument("duplicate dataset name '" + d.name + "'");
    }
    if (d.upsample < 1) {
      throw std::invalid_argument("dataset '" + d.name + "' has upsample < 1");
    }
  }
}

namespace {

std::filesystem::path resolve(const std::filesystem::path& base, const std::string& p) {
  std::filesystem::path path(p);
  return path.is_absolute() || base.empty() ? path : base / path;
}

CropConfig parse_crop(const nlohmann::json& j) {
  CropConfig crop;
  if (!j.is_object()) throw std::invalid_argument("\"crop\" must be an object");
  if (j.contains("max_cells")) crop.max_cells = j.at("max_cells").get<int>();
  if (j.contains("cell")) {
    const auto& cell = j.at("cell");
    crop.cell.height = cell.value("cell_height", crop.cell.height);
    crop.cell.width = cell.value("cell_width", crop.cell.width);
  }
  if (j.contains("adaptive")) crop.adaptive = j.at("adaptive").get<bool>();
  if (j.contains("include_global")) crop.include_global = j.at("include_global").get<bool>();
  if (j.contains("fixed_grid") && !j.at("fixed_grid").is_null()) {
    const auto& g = j.at("fixed_grid");
    if (g.is_string()) {
      crop.fixed_grid = parse_grid(g.get<std::string>());
    } else {
      crop.fixed_grid = Grid{g.at("rows").get<int>(), g.at("cols").get<int>()};
    }
  }
  return crop;
}

}  // namespace

RunConfig parse_run_config(std::string_view json_text, const std::filesystem::path& base_dir) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::parse_error& e) {
    throw std::invalid_argument(std::string("run config is not valid JSON: ") + e.what());
  }
  RunConfig cfg;
  try {
    if (!doc.is_object()) throw std::invalid_argument("run config must be a JSON object");
    for (const auto& d : doc.at("datasets")) {
      DatasetSpec spec;
      spec.name = d.at("name").get<std::string>();
      spec.manifest_path = resolve(base_dir, d.at("manifest_path").get<std::string>());
      spec.task = parse_task(d.at("task").get<std::string>());
      spec.upsample = d.value("upsample", 1);
      cfg.datasets.push_back(std::move(spec));
    }
    if (doc.contains("crop")) cfg.crop = parse_crop(doc.at("crop"));
    if (doc.contains("seed") && !doc.at("seed").is_null()) {
      const auto& s = doc.at("seed");
      if (s.is_string()) {
        cfg.seed = std::stoull(s.get<std::string>());
      } else if (s.is_number_unsigned() || (s.is_number_integer() && s.get<std::int64_t>() >= 0)) {
        cfg.seed = s.get<std::uint64_t>();
      } else {
        throw std::invalid_argument("\"seed\" must be a non-negative integer");
      }
    }
    if (doc.contains("output_dir")) {
      cfg.output_dir = resolve(base_dir, doc.at("output_dir").get<std::string>());
    }
    if (doc.contains("templates_path") && !doc.at("templates_path").is_null()) {
      cfg.templates_path = resolve(base_dir, doc.at("templates_path").get<std::string>());
    }
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("run config: ") + e.what());
  }
  return cfg;
}

RunConfig load_run_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open run config " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_run_config(ss.str(), path.parent_path());
}

}  // namespace vsl

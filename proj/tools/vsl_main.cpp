// vsl: command-line front end for cropping, instruction building and scoring.
//
//   vsl plan      grid-frequency statistics for a set of images
//   vsl crop      write local/global crops and a manifest per image
//   vsl build     build the shuffled, upsampled instruction mixture
//   vsl readorder serialize OCR tokens in reading order
//   vsl eval      score predictions against gold answers

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "vsl/crop_io.hpp"
#include "vsl/errors.hpp"
#include "vsl/evaluation.hpp"
#include "vsl/grid_stats.hpp"
#include "vsl/image_io.hpp"
#include "vsl/pipeline.hpp"

namespace fs = std::filesystem;

namespace {

struct CropFlags {
  std::string config;
  std::optional<int> max_cells;
  std::string fixed_grid;
  std::string cell;
  bool no_global = false;
};

void add_crop_flags(CLI::App* cmd, CropFlags& f) {
  cmd->add_option("--config", f.config, "Run config JSON; its \"crop\" section is used");
  cmd->add_option("--max-cells", f.max_cells, "Maximum number of cells N_c (default 20)");
  cmd->add_option("--fixed-grid", f.fixed_grid, "Use one fixed grid RxC for every image");
  cmd->add_option("--cell", f.cell, "Cell size HxW (default 224x224)");
  cmd->add_flag("--no-global", f.no_global, "Do not add the resized global image");
}

vsl::CropConfig crop_config_from(const CropFlags& f) {
  vsl::CropConfig crop;
  if (!f.config.empty()) crop = vsl::load_run_config(f.config).crop;
  if (f.max_cells) crop.max_cells = *f.max_cells;
  if (!f.cell.empty()) {
    const vsl::Grid cell = vsl::parse_grid(f.cell);
    crop.cell = {cell.rows, cell.cols};
  }
  if (!f.fixed_grid.empty()) {
    crop.adaptive = false;
    crop.fixed_grid = vsl::parse_grid(f.fixed_grid);
    if (!f.max_cells && crop.fixed_grid->cells() > crop.max_cells) {
      crop.max_cells = crop.fixed_grid->cells();
    }
  }
  if (f.no_global) crop.include_global = false;
  crop.validate();
  return crop;
}

void write_file(const fs::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw vsl::IoError("cannot write " + path.string());
  out << content;
}

std::vector<vsl::ImageDims> read_dims_file(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw vsl::IoError("cannot open " + path.string());
  std::vector<vsl::ImageDims> dims;
  std::string line;
  std::size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      const auto j = nlohmann::json::parse(line);
      dims.push_back({j.at("height").get<int>(), j.at("width").get<int>()});
    } catch (const nlohmann::json::exception& e) {
      throw std::invalid_argument(path.string() + ":" + std::to_string(number) + ": " + e.what());
    }
  }
  return dims;
}

int run_plan(const CropFlags& flags, const std::string& dims_file,
             const std::vector<std::string>& images, const std::string& out_dir) {
  const vsl::CropConfig crop = crop_config_from(flags);
  std::vector<vsl::ImageDims> dims;
  if (!dims_file.empty()) dims = read_dims_file(dims_file);
  for (const auto& img : images) dims.push_back(vsl::read_image_dims(img));
  const vsl::GridHistogram hist = vsl::grid_stats(dims, crop);
  const int rows = crop.adaptive ? crop.max_cells : crop.fixed_grid->rows;
  const int cols = crop.adaptive ? crop.max_cells : crop.fixed_grid->cols;
  if (!out_dir.empty()) {
    fs::create_directories(out_dir);
    write_file(fs::path(out_dir) / "grid_histogram.json", hist.to_json());
    write_file(fs::path(out_dir) / "grid_histogram.csv", hist.to_csv(rows, cols));
  }
  std::cout << hist.to_json();
  return 0;
}

int run_crop(const CropFlags& flags, const std::vector<std::string>& images,
             const std::string& out_dir) {
  const vsl::CropConfig crop = crop_config_from(flags);
  for (const auto& img : images) {
    const auto artifacts = vsl::crop_image_file(img, crop, out_dir);
    std::cout << artifacts.manifest_path.string() << " grid " << vsl::to_string(artifacts.plan.grid)
              << " images " << artifacts.plan.image_count() << "\n";
  }
  return 0;
}

int run_build(const std::string& config_path, std::optional<std::uint64_t> seed,
              const std::string& out_dir, const CropFlags& flags) {
  vsl::RunConfig cfg = vsl::load_run_config(config_path);
  if (seed) cfg.seed = seed;
  if (!out_dir.empty()) cfg.output_dir = out_dir;
  if (flags.max_cells) cfg.crop.max_cells = *flags.max_cells;
  if (!flags.fixed_grid.empty()) {
    cfg.crop.adaptive = false;
    cfg.crop.fixed_grid = vsl::parse_grid(flags.fixed_grid);
  }
  const auto result = vsl::build_mixture(cfg);
  for (const auto& w : result.warnings) std::cerr << "warning: " << w << "\n";
  for (const auto& d : result.datasets) {
    std::cout << d.name << ": " << d.samples << " samples x" << d.upsample << " = " << d.emitted
              << "\n";
  }
  std::cout << "total " << result.total << " -> " << result.instructions_path.string() << "\n";
  return 0;
}

int run_readorder(const std::string& input, const std::string& out_path) {
  const auto ordered = vsl::read_order_file(input);
  std::string out;
  if (ordered.size() == 1 && ordered.front().first.empty()) {
    out = ordered.front().second + "\n";
  } else {
    for (const auto& [id, text] : ordered) {
      nlohmann::ordered_json j;
      j["id"] = id;
      j["text"] = text;
      out += j.dump(-1, ' ', false, nlohmann::json::error_handler_t::replace) + "\n";
    }
  }
  if (out_path.empty()) {
    std::cout << out;
  } else {
    write_file(out_path, out);
  }
  return 0;
}

int run_eval(const std::string& metric, const std::string& pred, const std::string& gold,
             const std::string& out_path, const vsl::EvalOptions& options) {
  const auto reports = vsl::run_eval(vsl::parse_metric(metric), pred, gold, options);
  const std::string json = vsl::report_json(reports);
  if (!out_path.empty()) write_file(out_path, json);
  std::cout << json;
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Shape-adaptive cropping, instruction building and evaluation toolkit", "vsl"};
  app.require_subcommand(1);

  CropFlags plan_flags;
  std::string plan_dims;
  std::vector<std::string> plan_images;
  std::string plan_out;
  auto* plan = app.add_subcommand("plan", "Grid-frequency statistics for a set of images");
  add_crop_flags(plan, plan_flags);
  plan->add_option("--dims", plan_dims, "JSONL of {\"height\", \"width\"} records");
  plan->add_option("--out", plan_out, "Directory for grid_histogram.{json,csv}");
  plan->add_option("images", plan_images, "PNG/JPEG files");

  CropFlags crop_flags;
  std::vector<std::string> crop_images;
  std::string crop_out;
  auto* crop = app.add_subcommand("crop", "Write crops and a manifest per image");
  add_crop_flags(crop, crop_flags);
  crop->add_option("--out", crop_out, "Output directory")->required();
  crop->add_option("images", crop_images, "PNG/JPEG files")->required();

  CropFlags build_flags;
  std::string build_config;
  std::optional<std::uint64_t> build_seed;
  std::string build_out;
  auto* build = app.add_subcommand("build", "Build the instruction-tuning mixture");
  build->add_option("--config", build_config, "Run config JSON")->required();
  build->add_option("--seed", build_seed, "Override the config seed");
  build->add_option("--out", build_out, "Override the output directory");
  build->add_option("--max-cells", build_flags.max_cells, "Override crop.max_cells");
  build->add_option("--fixed-grid", build_flags.fixed_grid, "Override with a fixed grid RxC");

  std::string ro_input;
  std::string ro_out;
  auto* readorder = app.add_subcommand("readorder", "Serialize OCR tokens in reading order");
  readorder->add_option("input", ro_input, "Token JSON array or JSONL with \"tokens\"")->required();
  readorder->add_option("--out", ro_out, "Output file (default stdout)");

  std::string metric;
  std::string pred;
  std::string gold;
  std::string eval_out;
  vsl::EvalOptions eval_options;
  auto* eval = app.add_subcommand("eval", "Score predictions against gold answers");
  eval->add_option("--metric", metric, "anls | relaxed_accuracy | accuracy | f1 | bleu")->required();
  eval->add_option("--pred", pred, "Prediction JSONL")->required();
  eval->add_option("--gold", gold, "Gold JSONL")->required();
  eval->add_option("--out", eval_out, "Report JSON path");
  eval->add_option("--threshold", eval_options.anls_threshold, "ANLS threshold")->capture_default_str();
  eval->add_option("--tolerance", eval_options.relaxed_tolerance, "Relaxed accuracy tolerance")
      ->capture_default_str();
  eval->add_option("--max-n", eval_options.bleu_max_n, "Highest BLEU order")->capture_default_str();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*plan) return run_plan(plan_flags, plan_dims, plan_images, plan_out);
    if (*crop) return run_crop(crop_flags, crop_images, crop_out);
    if (*build) return run_build(build_config, build_seed, build_out, build_flags);
    if (*readorder) return run_readorder(ro_input, ro_out);
    if (*eval) return run_eval(metric, pred, gold, eval_out, eval_options);
  } catch (const std::exception& e) {
    std::cerr << "vsl: error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}

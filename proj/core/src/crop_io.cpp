#include "vsl/crop_io.hpp"

#include "jsonl.hpp"
#include "vsl/image_io.hpp"

namespace vsl {

std::string crop_manifest_json(const std::string& source, const CropPlan& plan,
                               const std::vector<std::string>& crop_paths,
                               const std::optional<std::string>& global_path) {
  if (crop_paths.size() != plan.regions.size()) {
    throw std::invalid_argument("crop manifest: path count does not match regions");
  }
  detail::ordered_json j;
  j["source"] = source;
  j["height"] = plan.source.height;
  j["width"] = plan.source.width;
  j["grid"] = {{"rows", plan.grid.rows}, {"cols", plan.grid.cols}};
  j["crops"] = detail::ordered_json::array();
  for (std::size_t k = 0; k < plan.regions.size(); ++k) {
    detail::ordered_json c;
    c["row"] = plan.regions[k].row;
    c["col"] = plan.regions[k].col;
    c["path"] = crop_paths[k];
    j["crops"].push_back(std::move(c));
  }
  j["global"] = global_path ? detail::ordered_json(*global_path) : detail::ordered_json(nullptr);
  return detail::dump_compact(j) + "\n";
}

CropArtifacts write_crops(const std::string& source, const std::string& stem, const CropSet& crops,
                          const std::filesystem::path& out_dir) {
  std::filesystem::create_directories(out_dir);
  CropArtifacts out;
  out.plan = crops.plan;
  std::vector<std::string> names;
  for (std::size_t k = 0; k < crops.locals.size(); ++k) {
    const CropRegion& r = crops.plan.regions[k];
    std::string name = stem + "_r" + std::to_string(r.row) + "_c" + std::to_string(r.col) + ".png";
    write_png(crops.locals[k], out_dir / name);
    out.local_paths.push_back(out_dir / name);
    names.push_back(std::move(name));
  }
  std::optional<std::string> global_name;
  if (crops.global_image) {
    global_name = stem + "_global.png";
    write_png(*crops.global_image, out_dir / *global_name);
    out.global_path = out_dir / *global_name;
  }
  out.manifest_path = out_dir / (stem + ".json");
  detail::write_text_file(out.manifest_path, crop_manifest_json(source, crops.plan, names, global_name));
  return out;
}

CropArtifacts crop_image_file(const std::filesystem::path& image_path, const CropConfig& config,
                              const std::filesystem::path& out_dir) {
  const Image image = read_image(image_path);
  const CropPlan plan = plan_crops(image.dims(), config);
  const CropSet crops = execute_plan(image, plan);
  return write_crops(image_path.string(), image_path.stem().string(), crops, out_dir);
}

}  // namespace vsl

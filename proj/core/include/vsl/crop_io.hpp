#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "vsl/cropper.hpp"

namespace vsl {

struct CropArtifacts {
  std::filesystem::path manifest_path;
  CropPlan plan;
  std::vector<std::filesystem::path> local_paths;
  std::optional<std::filesystem::path> global_path;
};

/// Manifest JSON with keys in the order
/// source, height, width, grid{rows, cols}, crops[{row, col, path}], global.
std::string crop_manifest_json(const std::string& source, const CropPlan& plan,
                               const std::vector<std::string>& crop_paths,
                               const std::optional<std::string>& global_path);

/// Writes {stem}_r{i}_c{j}.png, {stem}_global.png and {stem}.json into
/// out_dir. Paths in the manifest are relative to out_dir.
CropArtifacts write_crops(const std::string& source, const std::string& stem, const CropSet& crops,
                          const std::filesystem::path& out_dir);

/// read_image + plan_crops + execute_plan + write_crops.
CropArtifacts crop_image_file(const std::filesystem::path& image_path, const CropConfig& config,
                              const std::filesystem::path& out_dir);

}  // namespace vsl

#pragma once

#include <filesystem>

#include "vsl/image.hpp"

namespace vsl {

/// Decodes a PNG or JPEG file (detected by signature) to RGB.
/// Throws IoError on open or decode failure.
Image read_image(const std::filesystem::path& path);

/// Reads only the header to obtain dimensions.
ImageDims read_image_dims(const std::filesystem::path& path);

void write_png(const Image& image, const std::filesystem::path& path);

}  // namespace vsl

#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "vsl/grid_geometry.hpp"

namespace vsl {

/// Interleaved 8-bit RGB buffer, row-major.
class Image {
 public:
  static constexpr int kChannels = 3;

  Image() = default;
  Image(int height, int width);
  Image(int height, int width, std::vector<std::uint8_t> pixels);

  int height() const { return height_; }
  int width() const { return width_; }
  ImageDims dims() const { return {height_, width_}; }
  bool empty() const { return pixels_.empty(); }

  std::uint8_t& at(int y, int x, int c) {
    return pixels_[(static_cast<std::size_t>(y) * width_ + x) * kChannels + c];
  }
  std::uint8_t at(int y, int x, int c) const {
    return pixels_[(static_cast<std::size_t>(y) * width_ + x) * kChannels + c];
  }

  std::span<const std::uint8_t> pixels() const { return pixels_; }
  std::span<std::uint8_t> pixels() { return pixels_; }

  friend bool operator==(const Image&, const Image&) = default;

 private:
  int height_ = 0;
  int width_ = 0;
  std::vector<std::uint8_t> pixels_;
};

/// Bilinear resize with half-pixel centers and edge clamping, rounded to
/// nearest. Resizing to the same dims returns an identical image.
Image resize_bilinear(const Image& src, ImageDims target);

/// Copy of the rectangle [x, x+width) x [y, y+height). Must lie inside src.
Image crop_region(const Image& src, int x, int y, int width, int height);

/// Writes src into dst with its top-left corner at (x, y). Must fit.
void paste(Image& dst, const Image& src, int x, int y);

}  // namespace vsl

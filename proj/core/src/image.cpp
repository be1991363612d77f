#include "vsl/image.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace vsl {

Image::Image(int height, int width) : height_(height), width_(width) {
  validate(ImageDims{height, width});
  pixels_.assign(static_cast<std::size_t>(height) * width * kChannels, 0);
}

Image::Image(int height, int width, std::vector<std::uint8_t> pixels)
    : height_(height), width_(width), pixels_(std::move(pixels)) {
  validate(ImageDims{height, width});
  if (pixels_.size() != static_cast<std::size_t>(height) * width * kChannels) {
    throw std::invalid_argument("pixel buffer size " + std::to_string(pixels_.size()) +
                                " does not match " + std::to_string(height) + "x" +
                                std::to_string(width) + "x3");
  }
}

namespace {

struct Tap {
  int lo;
  int hi;
  double frac;
};

std::vector<Tap> make_taps(int src_len, int dst_len) {
  std::vector<Tap> taps(dst_len);
  const double scale = static_cast<double>(src_len) / dst_len;
  for (int d = 0; d < dst_len; ++d) {
    double s = (d + 0.5) * scale - 0.5;
    s = std::clamp(s, 0.0, static_cast<double>(src_len - 1));
    const int lo = static_cast<int>(std::floor(s));
    const int hi = std::min(lo + 1, src_len - 1);
    taps[d] = {lo, hi, s - lo};
  }
  return taps;
}

}  // namespace

Image resize_bilinear(const Image& src, ImageDims target) {
  validate(target);
  if (src.empty()) {
    throw std::invalid_argument("resize_bilinear: empty source image");
  }
  if (src.dims() == target) return src;

  const auto ytaps = make_taps(src.height(), target.height);
  const auto xtaps = make_taps(src.width(), target.width);
  Image out(target.height, target.width);
  for (int y = 0; y < target.height; ++y) {
    const Tap& ty = ytaps[y];
    for (int x = 0; x < target.width; ++x) {
      const Tap& tx = xtaps[x];
      for (int c = 0; c < Image::kChannels; ++c) {
        const double top = (1.0 - tx.frac) * src.at(ty.lo, tx.lo, c) + tx.frac * src.at(ty.lo, tx.hi, c);
        const double bottom =
            (1.0 - tx.frac) * src.at(ty.hi, tx.lo, c) + tx.frac * src.at(ty.hi, tx.hi, c);
        const double v = (1.0 - ty.frac) * top + ty.frac * bottom;
        out.at(y, x, c) = static_cast<std::uint8_t>(std::clamp(std::lround(v), 0L, 255L));
      }
    }
  }
  return out;
}

Image crop_region(const Image& src, int x, int y, int width, int height) {
  if (x < 0 || y < 0 || width < 1 || height < 1 || x + width > src.width() ||
      y + height > src.height()) {
    throw std::invalid_argument("crop_region: rectangle outside source image");
  }
  Image out(height, width);
  const std::size_t row_bytes = static_cast<std::size_t>(width) * Image::kChannels;
  auto in = src.pixels();
  auto dst = out.pixels();
  for (int r = 0; r < height; ++r) {
    const std::size_t from = (static_cast<std::size_t>(y + r) * src.width() + x) * Image::kChannels;
    std::copy_n(in.begin() + static_cast<std::ptrdiff_t>(from), row_bytes,
                dst.begin() + static_cast<std::ptrdiff_t>(r * row_bytes));
  }
  return out;
}

void paste(Image& dst, const Image& src, int x, int y) {
  if (x < 0 || y < 0 || x + src.width() > dst.width() || y + src.height() > dst.height()) {
    throw std::invalid_argument("paste: source does not fit at target position");
  }
  const std::size_t row_bytes = static_cast<std::size_t>(src.width()) * Image::kChannels;
  auto in = src.pixels();
  auto out = dst.pixels();
  for (int r = 0; r < src.height(); ++r) {
    const std::size_t to = (static_cast<std::size_t>(y + r) * dst.width() + x) * Image::kChannels;
    std::copy_n(in.begin() + static_cast<std::ptrdiff_t>(r * row_bytes), row_bytes,
                out.begin() + static_cast<std::ptrdiff_t>(to));
  }
}

}  // namespace vsl

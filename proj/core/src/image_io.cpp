#include "vsl/image_io.hpp"

#include <png.h>
// jpeglib.h needs FILE and size_t declared first.
#include <cstdio>
#include <jpeglib.h>

#include <csetjmp>
#include <cstring>
#include <fstream>
#include <iterator>
#include <memory>
#include <string>

#include "vsl/errors.hpp"

namespace vsl {
namespace {

enum class Format { png, jpeg };

std::vector<unsigned char> slurp(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open image " + path.string());
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

Format sniff(const std::vector<unsigned char>& bytes, const std::filesystem::path& path) {
  static constexpr unsigned char kPng[8] = {0x89, 'P', 'N', 'G', '\r', '\n', 0x1a, '\n'};
  if (bytes.size() >= 8 && std::memcmp(bytes.data(), kPng, 8) == 0) return Format::png;
  if (bytes.size() >= 3 && bytes[0] == 0xFF && bytes[1] == 0xD8 && bytes[2] == 0xFF) {
    return Format::jpeg;
  }
  throw IoError("unsupported image format (expected PNG or JPEG): " + path.string());
}

struct PngImage {
  png_image image{};
  PngImage() {
    image.version = PNG_IMAGE_VERSION;
  }
  ~PngImage() { png_image_free(&image); }
};

Image decode_png(const std::vector<unsigned char>& bytes, const std::filesystem::path& path,
                 bool header_only, ImageDims* dims) {
  PngImage png;
  if (!png_image_begin_read_from_memory(&png.image, bytes.data(), bytes.size())) {
    throw IoError("PNG decode failed for " + path.string() + ": " + png.image.message);
  }
  const auto h = static_cast<int>(png.image.height);
  const auto w = static_cast<int>(png.image.width);
  if (dims) *dims = {h, w};
  if (header_only) return {};
  png.image.format = PNG_FORMAT_RGB;
  std::vector<std::uint8_t> pixels(PNG_IMAGE_SIZE(png.image));
  if (!png_image_finish_read(&png.image, nullptr, pixels.data(), 0, nullptr)) {
    throw IoError("PNG decode failed for " + path.string() + ": " + png.image.message);
  }
  return Image(h, w, std::move(pixels));
}

struct JpegErrorManager {
  jpeg_error_mgr base;
  std::jmp_buf jump;
  char message[JMSG_LENGTH_MAX];
};

void on_jpeg_error(j_common_ptr cinfo) {
  auto* err = reinterpret_cast<JpegErrorManager*>(cinfo->err);
  (*cinfo->err->format_message)(cinfo, err->message);
  std::longjmp(err->jump, 1);
}

// No C++ objects with destructors may live in this frame across setjmp.
bool decode_jpeg_raw(const unsigned char* data, std::size_t size, bool header_only, int* height,
                     int* width, std::uint8_t* out, std::size_t out_size, char* message) {
  jpeg_decompress_struct cinfo;
  JpegErrorManager err;
  cinfo.err = jpeg_std_error(&err.base);
  err.base.error_exit = on_jpeg_error;
  if (setjmp(err.jump)) {
    std::memcpy(message, err.message, JMSG_LENGTH_MAX);
    jpeg_destroy_decompress(&cinfo);
    return false;
  }
  jpeg_create_decompress(&cinfo);
  jpeg_mem_src(&cinfo, data, static_cast<unsigned long>(size));
  jpeg_read_header(&cinfo, TRUE);
  *height = static_cast<int>(cinfo.image_height);
  *width = static_cast<int>(cinfo.image_width);
  if (header_only || out == nullptr) {
    jpeg_destroy_decompress(&cinfo);
    return true;
  }
  cinfo.out_color_space = JCS_RGB;
  jpeg_start_decompress(&cinfo);
  const std::size_t stride = static_cast<std::size_t>(cinfo.output_width) * 3;
  if (stride * cinfo.output_height > out_size) {
    std::strcpy(message, "unexpected output size");
    jpeg_destroy_decompress(&cinfo);
    return false;
  }
  while (cinfo.output_scanline < cinfo.output_height) {
    JSAMPROW row = out + cinfo.output_scanline * stride;
    jpeg_read_scanlines(&cinfo, &row, 1);
  }
  jpeg_finish_decompress(&cinfo);
  jpeg_destroy_decompress(&cinfo);
  return true;
}

Image decode_jpeg(const std::vector<unsigned char>& bytes, const std::filesystem::path& path,
                  bool header_only, ImageDims* dims) {
  char message[JMSG_LENGTH_MAX] = {};
  int h = 0;
  int w = 0;
  if (!decode_jpeg_raw(bytes.data(), bytes.size(), true, &h, &w, nullptr, 0, message)) {
    throw IoError("JPEG decode failed for " + path.string() + ": " + message);
  }
  if (dims) *dims = {h, w};
  if (header_only) return {};
  std::vector<std::uint8_t> pixels(static_cast<std::size_t>(h) * w * 3);
  if (!decode_jpeg_raw(bytes.data(), bytes.size(), false, &h, &w, pixels.data(), pixels.size(),
                       message)) {
    throw IoError("JPEG decode failed for " + path.string() + ": " + message);
  }
  return Image(h, w, std::move(pixels));
}

Image decode(const std::filesystem::path& path, bool header_only, ImageDims* dims) {
  const auto bytes = slurp(path);
  switch (sniff(bytes, path)) {
    case Format::png:
      return decode_png(bytes, path, header_only, dims);
    case Format::jpeg:
      return decode_jpeg(bytes, path, header_only, dims);
  }
  throw IoError("unreachable");
}

}  // namespace

Image read_image(const std::filesystem::path& path) {
  return decode(path, false, nullptr);
}

ImageDims read_image_dims(const std::filesystem::path& path) {
  ImageDims dims;
  decode(path, true, &dims);
  return dims;
}

void write_png(const Image& image, const std::filesystem::path& path) {
  if (image.empty()) throw std::invalid_argument("write_png: empty image");
  PngImage png;
  png.image.width = static_cast<png_uint_32>(image.width());
  png.image.height = static_cast<png_uint_32>(image.height());
  png.image.format = PNG_FORMAT_RGB;
  std::FILE* file = std::fopen(path.c_str(), "wb");
  if (!file) throw IoError("cannot write " + path.string());
  const int ok = png_image_write_to_stdio(&png.image, file, 0, image.pixels().data(), 0, nullptr);
  const int closed = std::fclose(file);
  if (!ok || closed != 0) {
    throw IoError("PNG encode failed for " + path.string() + ": " + png.image.message);
  }
}

}  // namespace vsl

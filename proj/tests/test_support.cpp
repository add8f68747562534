#include "test_support.hpp"

#include <png.h>

#include <cstdio>
#include <stdexcept>

namespace testsupport {

namespace {

struct PngWriter {
  std::FILE* file = nullptr;
  png_structp png = nullptr;
  png_infop info = nullptr;

  explicit PngWriter(const std::filesystem::path& path) {
    file = std::fopen(path.string().c_str(), "wb");
    if (!file) throw std::runtime_error("cannot open " + path.string());
    png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
    info = png_create_info_struct(png);
    png_init_io(png, file);
  }
  ~PngWriter() {
    png_destroy_write_struct(&png, &info);
    if (file) std::fclose(file);
  }
};

}  // namespace

void write_rgb_png(const std::filesystem::path& path, int width, int height,
                   const std::vector<std::array<std::uint8_t, 3>>& pixels) {
  PngWriter w(path);
  png_set_IHDR(w.png, w.info, static_cast<png_uint_32>(width),
               static_cast<png_uint_32>(height), 8, PNG_COLOR_TYPE_RGB,
               PNG_INTERLACE_NONE, PNG_COMPRESSION_TYPE_DEFAULT,
               PNG_FILTER_TYPE_DEFAULT);
  png_write_info(w.png, w.info);
  std::vector<std::uint8_t> row(static_cast<std::size_t>(width) * 3);
  for (int y = 0; y < height; ++y) {
    for (int x = 0; x < width; ++x) {
      const auto& px = pixels[static_cast<std::size_t>(y) * width + x];
      row[3 * static_cast<std::size_t>(x)] = px[0];
      row[3 * static_cast<std::size_t>(x) + 1] = px[1];
      row[3 * static_cast<std::size_t>(x) + 2] = px[2];
    }
    png_write_row(w.png, row.data());
  }
  png_write_end(w.png, nullptr);
}

void write_gray16_png(const std::filesystem::path& path, int width, int height) {
  PngWriter w(path);
  png_set_IHDR(w.png, w.info, static_cast<png_uint_32>(width),
               static_cast<png_uint_32>(height), 16, PNG_COLOR_TYPE_GRAY,
               PNG_INTERLACE_NONE, PNG_COMPRESSION_TYPE_DEFAULT,
               PNG_FILTER_TYPE_DEFAULT);
  png_write_info(w.png, w.info);
  std::vector<std::uint8_t> row(static_cast<std::size_t>(width) * 2, 0x42);
  for (int y = 0; y < height; ++y) {
    png_write_row(w.png, row.data());
  }
  png_write_end(w.png, nullptr);
}

}  // namespace testsupport

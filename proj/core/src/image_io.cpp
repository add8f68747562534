#include "lumenorm/image_io.hpp"

#include <png.h>

#include <cstdio>
#include <fstream>
#include <memory>
#include <string>
#include <vector>

#include "lumenorm/errors.hpp"

namespace lumenorm {

namespace {

void check_loaded_dims(int width, int height, const std::string& name) {
  if (width < 3 || height < 3) {
    throw FormatError(name + ": images smaller than 3x3 are not supported");
  }
}

// ---- PGM ----

// Skips whitespace and '#' comment lines, then reads one decimal token.
int read_pnm_int(std::istream& is) {
  int c = is.get();
  while (c != EOF) {
    if (c == '#') {
      while (c != EOF && c != '\n') c = is.get();
    } else if (!std::isspace(c)) {
      break;
    }
    c = is.get();
  }
  if (c == EOF || !std::isdigit(c)) {
    throw FormatError("malformed PGM header");
  }
  long value = 0;
  while (c != EOF && std::isdigit(c)) {
    value = value * 10 + (c - '0');
    if (value > 1'000'000'000L) throw FormatError("PGM header value out of range");
    c = is.get();
  }
  if (c != EOF) is.unget();
  return static_cast<int>(value);
}

IntensityImage load_pgm(std::istream& is, const std::string& name) {
  char magic[2] = {0, 0};
  is.read(magic, 2);
  if (!is || magic[0] != 'P' || magic[1] != '5') {
    throw FormatError(name + ": not a binary PGM (P5) file");
  }
  const int width = read_pnm_int(is);
  const int height = read_pnm_int(is);
  const int maxval = read_pnm_int(is);
  if (maxval != 255) {
    throw FormatError(name + ": PGM maxval " + std::to_string(maxval) +
                      " not supported (need 255)");
  }
  is.get();  // single whitespace byte after the header
  check_loaded_dims(width, height, name);
  std::vector<std::uint8_t> data(static_cast<std::size_t>(width) * height);
  is.read(reinterpret_cast<char*>(data.data()), static_cast<std::streamsize>(data.size()));
  if (static_cast<std::size_t>(is.gcount()) != data.size()) {
    throw FormatError(name + ": truncated PGM raster");
  }
  return IntensityImage(width, height, std::move(data));
}

void save_pgm(const IntensityImage& img, const std::filesystem::path& path) {
  std::ofstream os(path, std::ios::binary);
  if (!os) {
    throw IoError("cannot open " + path.string() + " for writing");
  }
  os << "P5\n" << img.width() << " " << img.height() << "\n255\n";
  os.write(reinterpret_cast<const char*>(img.data().data()),
           static_cast<std::streamsize>(img.pixel_count()));
  if (!os) {
    throw IoError("write failed for " + path.string());
  }
}

// ---- PNG ----

struct FileCloser {
  void operator()(std::FILE* f) const {
    if (f) std::fclose(f);
  }
};
using FilePtr = std::unique_ptr<std::FILE, FileCloser>;

IntensityImage load_png(const std::filesystem::path& path) {
  const std::string name = path.string();
  FilePtr fp(std::fopen(name.c_str(), "rb"));
  if (!fp) {
    throw IoError("cannot open " + name);
  }

  png_structp png = png_create_read_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
  if (!png) throw Error("libpng: failed to allocate read struct");
  png_infop info = png_create_info_struct(png);
  if (!info) {
    png_destroy_read_struct(&png, nullptr, nullptr);
    throw Error("libpng: failed to allocate info struct");
  }

  std::vector<std::uint8_t> raster;
  std::vector<png_bytep> rows;
  int width = 0, height = 0, color_type = 0, bit_depth = 0;

  if (setjmp(png_jmpbuf(png))) {
    png_destroy_read_struct(&png, &info, nullptr);
    throw FormatError(name + ": corrupt or unreadable PNG");
  }

  png_init_io(png, fp.get());
  png_read_info(png, info);

  width = static_cast<int>(png_get_image_width(png, info));
  height = static_cast<int>(png_get_image_height(png, info));
  color_type = png_get_color_type(png, info);
  bit_depth = png_get_bit_depth(png, info);

  if (bit_depth != 8 ||
      (color_type != PNG_COLOR_TYPE_GRAY && color_type != PNG_COLOR_TYPE_RGB)) {
    png_destroy_read_struct(&png, &info, nullptr);
    throw FormatError(name + ": only 8-bit gray or 8-bit RGB PNG is supported");
  }

  png_set_interlace_handling(png);
  png_read_update_info(png, info);

  const int channels = color_type == PNG_COLOR_TYPE_RGB ? 3 : 1;
  raster.resize(static_cast<std::size_t>(width) * height * channels);
  rows.resize(static_cast<std::size_t>(height));
  for (int y = 0; y < height; ++y) {
    rows[static_cast<std::size_t>(y)] =
        raster.data() + static_cast<std::size_t>(y) * width * channels;
  }
  png_read_image(png, rows.data());
  png_read_end(png, nullptr);
  png_destroy_read_struct(&png, &info, nullptr);

  check_loaded_dims(width, height, name);
  std::vector<std::uint8_t> gray(static_cast<std::size_t>(width) * height);
  if (channels == 1) {
    gray = std::move(raster);
  } else {
    for (std::size_t i = 0; i < gray.size(); ++i) {
      const double r = raster[3 * i];
      const double g = raster[3 * i + 1];
      const double b = raster[3 * i + 2];
      gray[i] = static_cast<std::uint8_t>(
          round_half_up(0.299 * r + 0.587 * g + 0.114 * b));
    }
  }
  return IntensityImage(width, height, std::move(gray));
}

void save_png(const IntensityImage& img, const std::filesystem::path& path) {
  const std::string name = path.string();
  FilePtr fp(std::fopen(name.c_str(), "wb"));
  if (!fp) {
    throw IoError("cannot open " + name + " for writing");
  }

  png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
  if (!png) throw Error("libpng: failed to allocate write struct");
  png_infop info = png_create_info_struct(png);
  if (!info) {
    png_destroy_write_struct(&png, nullptr);
    throw Error("libpng: failed to allocate info struct");
  }

  if (setjmp(png_jmpbuf(png))) {
    png_destroy_write_struct(&png, &info);
    throw IoError("PNG write failed for " + name);
  }

  png_init_io(png, fp.get());
  png_set_IHDR(png, info, static_cast<png_uint_32>(img.width()),
               static_cast<png_uint_32>(img.height()), 8, PNG_COLOR_TYPE_GRAY,
               PNG_INTERLACE_NONE, PNG_COMPRESSION_TYPE_DEFAULT,
               PNG_FILTER_TYPE_DEFAULT);
  png_write_info(png, info);
  for (int y = 0; y < img.height(); ++y) {
    png_write_row(png, const_cast<png_bytep>(img.data().data() +
                                             static_cast<std::size_t>(y) * img.width()));
  }
  png_write_end(png, nullptr);
  png_destroy_write_struct(&png, &info);
}

}  // namespace

ImageFormat format_for_path(const std::filesystem::path& path) {
  return path.extension() == ".png" ? ImageFormat::png : ImageFormat::pgm;
}

IntensityImage load_image(const std::filesystem::path& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) {
    throw IoError("cannot open " + path.string());
  }
  unsigned char magic[2] = {0, 0};
  is.read(reinterpret_cast<char*>(magic), 2);
  if (!is) {
    throw FormatError(path.string() + ": file too short to be an image");
  }
  if (magic[0] == 0x89 && magic[1] == 'P') {
    is.close();
    return load_png(path);
  }
  is.seekg(0);
  return load_pgm(is, path.string());
}

void save_image(const IntensityImage& img, const std::filesystem::path& path,
                ImageFormat format) {
  if (format == ImageFormat::png) {
    save_png(img, path);
  } else {
    save_pgm(img, path);
  }
}

}  // namespace lumenorm

#include "lumenorm/image.hpp"

#include <algorithm>
#include <string>

#include "lumenorm/errors.hpp"

namespace lumenorm {

namespace {

void check_dims(int width, int height) {
  if (width < 1 || height < 1) {
    throw InvalidArgument("image dimensions must be at least 1x1, got " +
                          std::to_string(width) + "x" + std::to_string(height));
  }
}

std::size_t expected_size(int width, int height) {
  return static_cast<std::size_t>(width) * static_cast<std::size_t>(height);
}

}  // namespace

IntensityImage::IntensityImage(int width, int height, std::uint8_t fill)
    : width_(width), height_(height) {
  check_dims(width, height);
  data_.assign(expected_size(width, height), fill);
}

IntensityImage::IntensityImage(int width, int height, std::vector<std::uint8_t> data)
    : width_(width), height_(height), data_(std::move(data)) {
  check_dims(width, height);
  if (data_.size() != expected_size(width, height)) {
    throw InvalidArgument("pixel buffer size does not match dimensions");
  }
}

std::uint8_t IntensityImage::at_clamped(int x, int y) const {
  x = std::clamp(x, 0, width_ - 1);
  y = std::clamp(y, 0, height_ - 1);
  return data_[index(x, y)];
}

RealImage::RealImage(int width, int height, double fill)
    : width_(width), height_(height) {
  check_dims(width, height);
  data_.assign(expected_size(width, height), fill);
}

RealImage::RealImage(int width, int height, std::vector<double> data)
    : width_(width), height_(height), data_(std::move(data)) {
  check_dims(width, height);
  if (data_.size() != expected_size(width, height)) {
    throw InvalidArgument("pixel buffer size does not match dimensions");
  }
}

double RealImage::at_clamped(int x, int y) const {
  x = std::clamp(x, 0, width_ - 1);
  y = std::clamp(y, 0, height_ - 1);
  return data_[index(x, y)];
}

RealImage to_real(const IntensityImage& img) {
  RealImage out(img.width(), img.height());
  auto dst = out.data();
  auto src = img.data();
  for (std::size_t i = 0; i < src.size(); ++i) {
    dst[i] = static_cast<double>(src[i]);
  }
  return out;
}

double image_mean(const RealImage& img) {
  double sum = 0.0;
  for (double v : img.data()) {
    sum += v;
  }
  return sum / static_cast<double>(img.pixel_count());
}

double image_sd(const RealImage& img) {
  const double mean = image_mean(img);
  double sq = 0.0;
  for (double v : img.data()) {
    const double d = v - mean;
    sq += d * d;
  }
  return std::sqrt(sq / static_cast<double>(img.pixel_count()));
}

IntensityImage rescale_to_intensity(const RealImage& img) {
  const auto [lo_it, hi_it] = std::minmax_element(img.data().begin(), img.data().end());
  const double lo = *lo_it;
  const double hi = *hi_it;
  IntensityImage out(img.width(), img.height());
  if (lo == hi) {
    std::fill(out.data().begin(), out.data().end(), std::uint8_t{128});
    return out;
  }
  const double scale = 255.0 / (hi - lo);
  auto dst = out.data();
  auto src = img.data();
  for (std::size_t i = 0; i < src.size(); ++i) {
    const int v = round_half_up((src[i] - lo) * scale);
    dst[i] = static_cast<std::uint8_t>(std::clamp(v, 0, 255));
  }
  return out;
}

IntensityImage quantize_half_up(const RealImage& img) {
  IntensityImage out(img.width(), img.height());
  auto dst = out.data();
  auto src = img.data();
  for (std::size_t i = 0; i < src.size(); ++i) {
    dst[i] = static_cast<std::uint8_t>(std::clamp(round_half_up(src[i]), 0, 255));
  }
  return out;
}

IntensityImage resize_bilinear(const IntensityImage& img, int width, int height) {
  if (width < 3 || height < 3) {
    throw InvalidArgument("resize target must be at least 3x3");
  }
  const int sw = img.width();
  const int sh = img.height();
  const double sx = width > 1 ? static_cast<double>(sw - 1) / (width - 1) : 0.0;
  const double sy = height > 1 ? static_cast<double>(sh - 1) / (height - 1) : 0.0;

  IntensityImage out(width, height);
  for (int y = 0; y < height; ++y) {
    const double fy = y * sy;
    const int y0 = static_cast<int>(std::floor(fy));
    const double ty = fy - y0;
    for (int x = 0; x < width; ++x) {
      const double fx = x * sx;
      const int x0 = static_cast<int>(std::floor(fx));
      const double tx = fx - x0;
      const double v00 = img.at_clamped(x0, y0);
      const double v10 = img.at_clamped(x0 + 1, y0);
      const double v01 = img.at_clamped(x0, y0 + 1);
      const double v11 = img.at_clamped(x0 + 1, y0 + 1);
      const double top = v00 + (v10 - v00) * tx;
      const double bot = v01 + (v11 - v01) * tx;
      const int v = round_half_up(top + (bot - top) * ty);
      out(x, y) = static_cast<std::uint8_t>(std::clamp(v, 0, 255));
    }
  }
  return out;
}

}  // namespace lumenorm

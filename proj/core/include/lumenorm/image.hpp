#pragma once

#include <cmath>
#include <cstdint>
#include <span>
#include <vector>

namespace lumenorm {

/// 8-bit grayscale raster, row-major. Immutable by convention once built:
/// every operation in the library returns a new image.
class IntensityImage {
 public:
  IntensityImage() = default;
  IntensityImage(int width, int height, std::uint8_t fill = 0);
  IntensityImage(int width, int height, std::vector<std::uint8_t> data);

  int width() const { return width_; }
  int height() const { return height_; }
  std::size_t pixel_count() const { return data_.size(); }
  bool empty() const { return data_.empty(); }

  std::uint8_t operator()(int x, int y) const { return data_[index(x, y)]; }
  std::uint8_t& operator()(int x, int y) { return data_[index(x, y)]; }

  /// Clamp-to-edge read; defined for any (x, y).
  std::uint8_t at_clamped(int x, int y) const;

  std::span<const std::uint8_t> data() const { return data_; }
  std::span<std::uint8_t> data() { return data_; }

  bool operator==(const IntensityImage&) const = default;

 private:
  std::size_t index(int x, int y) const {
    return static_cast<std::size_t>(y) * static_cast<std::size_t>(width_) +
           static_cast<std::size_t>(x);
  }

  int width_ = 0;
  int height_ = 0;
  std::vector<std::uint8_t> data_;
};

/// Real-valued raster for intermediate fields (log domain, filter responses,
/// fused images). Same row-major layout as IntensityImage.
class RealImage {
 public:
  RealImage() = default;
  RealImage(int width, int height, double fill = 0.0);
  RealImage(int width, int height, std::vector<double> data);

  int width() const { return width_; }
  int height() const { return height_; }
  std::size_t pixel_count() const { return data_.size(); }
  bool empty() const { return data_.empty(); }

  double operator()(int x, int y) const { return data_[index(x, y)]; }
  double& operator()(int x, int y) { return data_[index(x, y)]; }

  double at_clamped(int x, int y) const;

  std::span<const double> data() const { return data_; }
  std::span<double> data() { return data_; }

  bool operator==(const RealImage&) const = default;

 private:
  std::size_t index(int x, int y) const {
    return static_cast<std::size_t>(y) * static_cast<std::size_t>(width_) +
           static_cast<std::size_t>(x);
  }

  int width_ = 0;
  int height_ = 0;
  std::vector<double> data_;
};

/// Half-up rounding: x.5 rounds toward +infinity.
inline int round_half_up(double v) {
  return static_cast<int>(std::floor(v + 0.5));
}

RealImage to_real(const IntensityImage& img);

/// Arithmetic mean over all pixels.
double image_mean(const RealImage& img);

/// Population standard deviation (divides by the pixel count).
double image_sd(const RealImage& img);

/// Linear map of [min, max] onto [0, 255], rounded half-up. A constant input
/// has no range to stretch and maps to all-128.
IntensityImage rescale_to_intensity(const RealImage& img);

/// Round half-up and clamp each value to [0, 255]; no range stretching.
IntensityImage quantize_half_up(const RealImage& img);

/// Corner-aligned bilinear resampling with edge clamping. Resizing to the
/// source dimensions is the identity.
IntensityImage resize_bilinear(const IntensityImage& img, int width, int height);

}  // namespace lumenorm

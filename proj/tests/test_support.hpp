#pragma once

// Shared helpers for the test suites: deterministic random images and a
// scratch directory that cleans up after itself.

#include <unistd.h>

#include <array>
#include <atomic>
#include <cstdint>
#include <filesystem>
#include <random>
#include <string>
#include <vector>

#include "lumenorm/image.hpp"

namespace testsupport {

// Portable uniform double in [0, 1): raw mt19937_64 draws, no distribution.
inline double unit(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

inline lumenorm::IntensityImage random_intensity(int w, int h, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  lumenorm::IntensityImage img(w, h);
  for (auto& v : img.data()) {
    v = static_cast<std::uint8_t>(rng() % 256);
  }
  return img;
}

inline lumenorm::RealImage random_real(int w, int h, std::uint64_t seed, double lo,
                                       double hi) {
  std::mt19937_64 rng(seed);
  lumenorm::RealImage img(w, h);
  for (auto& v : img.data()) {
    v = lo + (hi - lo) * unit(rng);
  }
  return img;
}

// Minimal PNG writers for formats the library itself never produces, used to
// exercise the reader's RGB and bit-depth paths.
void write_rgb_png(const std::filesystem::path& path, int width, int height,
                   const std::vector<std::array<std::uint8_t, 3>>& pixels);
void write_gray16_png(const std::filesystem::path& path, int width, int height);

class ScratchDir {
 public:
  explicit ScratchDir(const std::string& tag) {
    static std::atomic<unsigned> counter{0};
    path_ = std::filesystem::temp_directory_path() /
            ("lumenorm_test_" + tag + "_" + std::to_string(::getpid()) + "_" +
             std::to_string(counter.fetch_add(1)));
    std::filesystem::create_directories(path_);
  }
  ~ScratchDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  const std::filesystem::path& path() const { return path_; }

 private:
  std::filesystem::path path_;
};

}  // namespace testsupport

#pragma once

#include <array>
#include <string>
#include <string_view>
#include <vector>

#include "lumenorm/image.hpp"
#include "lumenorm/stages.hpp"

namespace lumenorm {

/// 58 uniform-pattern bins plus one catch-all, L1-normalized.
inline constexpr int kUniformBins = 59;
using Histogram59 = std::array<double, kUniformBins>;

/// Concatenated per-block histograms (or raw pixels), with a descriptor of
/// how the blocks were laid out.
struct FeatureVector {
  std::vector<double> values;
  std::string block_layout;
};

/// 8-bit LBP code of an interior pixel: the 3x3 neighbors are compared to the
/// center with >=, visited clockwise from the top-left corner, first visit in
/// the most significant bit.
int lbp_code(const IntensityImage& img, int x, int y);

/// Bin index of a code: the 58 codes with at most two circular 0/1
/// transitions get their own bins in ascending code order; everything else
/// lands in bin 58.
int uniform_bin(int code);

/// L1-normalized histogram of uniform LBP bins over one region. The region
/// restricts which pixels act as centers; their 3x3 supports may read
/// neighboring pixels of the full image. Centers on the image border are
/// skipped.
Histogram59 ulbp_histogram(const IntensityImage& img, const BlockRect& region);

/// Row-major concatenation of ulbp_histogram over a grid_cols x grid_rows
/// tiling of the image.
FeatureVector lbph(const IntensityImage& img, int grid_cols, int grid_rows);

/// Number of blocks in a pyramid with the given layer count: (4^n - 1) / 3.
long block_count(int layers);

/// Spatial pyramid of uniform-LBP histograms: layer k tiles the image into
/// 2^(k-1) x 2^(k-1) cells; layers are concatenated coarse to fine.
FeatureVector msulbph(const IntensityImage& img, int layers);

/// Feature descriptor mini-grammar: "raw" | "lbph:<gx>x<gy>" | "msulbph:<L>".
struct FeatureSpec {
  enum class Kind { raw, lbph, msulbph };

  Kind kind = Kind::msulbph;
  int grid_cols = 0;
  int grid_rows = 0;
  int layers = 3;

  static FeatureSpec parse(std::string_view text);
  std::string to_string() const;

  bool operator==(const FeatureSpec&) const = default;
};

/// Featurize one image according to the descriptor. "raw" yields the pixel
/// values themselves.
FeatureVector extract_features(const IntensityImage& img, const FeatureSpec& spec);

}  // namespace lumenorm

#include "lumenorm/features.hpp"

#include <charconv>
#include <cmath>

#include "lumenorm/errors.hpp"

namespace lumenorm {

namespace {

int circular_transitions(int code) {
  int transitions = 0;
  for (int bit = 0; bit < 8; ++bit) {
    const int a = (code >> bit) & 1;
    const int b = (code >> ((bit + 1) % 8)) & 1;
    transitions += a ^ b;
  }
  return transitions;
}

// bin table: uniform codes -> 0..57 in ascending code order, others -> 58.
const std::array<int, 256>& uniform_bin_table() {
  static const std::array<int, 256> table = [] {
    std::array<int, 256> t{};
    int next = 0;
    for (int code = 0; code < 256; ++code) {
      t[static_cast<std::size_t>(code)] =
          circular_transitions(code) <= 2 ? next++ : kUniformBins - 1;
    }
    return t;
  }();
  return table;
}

// Clockwise ring from the top-left corner.
constexpr std::array<std::pair<int, int>, 8> kRing = {{
    {-1, -1}, {0, -1}, {1, -1}, {1, 0}, {1, 1}, {0, 1}, {-1, 1}, {-1, 0},
}};

int parse_positive_int(std::string_view text, const char* what) {
  int value = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || ptr != text.data() + text.size() || value < 1) {
    throw InvalidArgument(std::string(what) + " must be a positive integer, got \"" +
                          std::string(text) + "\"");
  }
  return value;
}

}  // namespace

int lbp_code(const IntensityImage& img, int x, int y) {
  if (x < 1 || y < 1 || x > img.width() - 2 || y > img.height() - 2) {
    throw InvalidArgument("lbp_code needs an interior pixel");
  }
  const std::uint8_t center = img(x, y);
  int code = 0;
  for (const auto& [dx, dy] : kRing) {
    code = (code << 1) | (img(x + dx, y + dy) >= center ? 1 : 0);
  }
  return code;
}

int uniform_bin(int code) {
  return uniform_bin_table()[static_cast<std::size_t>(code & 0xff)];
}

Histogram59 ulbp_histogram(const IntensityImage& img, const BlockRect& region) {
  const int x0 = std::max(region.x, 1);
  const int y0 = std::max(region.y, 1);
  const int x1 = std::min(region.x + region.width, img.width() - 1);
  const int y1 = std::min(region.y + region.height, img.height() - 1);

  Histogram59 hist{};
  long centers = 0;
  for (int y = y0; y < y1; ++y) {
    for (int x = x0; x < x1; ++x) {
      ++hist[static_cast<std::size_t>(uniform_bin(lbp_code(img, x, y)))];
      ++centers;
    }
  }
  if (centers == 0) {
    throw InvalidArgument("region contains no interior pixels to histogram");
  }
  for (double& b : hist) {
    b /= static_cast<double>(centers);
  }
  return hist;
}

FeatureVector lbph(const IntensityImage& img, int grid_cols, int grid_rows) {
  if (grid_cols < 1 || grid_rows < 1) {
    throw InvalidArgument("lbph grid must be at least 1x1");
  }
  if (img.width() / grid_cols < 3 || img.height() / grid_rows < 3) {
    throw InvalidArgument("lbph grid too fine: cells must be at least 3x3");
  }
  FeatureVector fv;
  fv.block_layout = "lbph:" + std::to_string(grid_cols) + "x" + std::to_string(grid_rows);
  fv.values.reserve(static_cast<std::size_t>(grid_cols) * grid_rows * kUniformBins);
  for (const BlockRect& cell : partition_grid(img.width(), img.height(), grid_cols, grid_rows)) {
    const Histogram59 hist = ulbp_histogram(img, cell);
    fv.values.insert(fv.values.end(), hist.begin(), hist.end());
  }
  return fv;
}

long block_count(int layers) {
  if (layers < 1) {
    throw InvalidArgument("pyramid needs at least one layer");
  }
  long total = 0;
  long per_layer = 1;
  for (int k = 1; k <= layers; ++k) {
    total += per_layer;
    per_layer *= 4;
  }
  return total;  // = (4^layers - 1) / 3
}

FeatureVector msulbph(const IntensityImage& img, int layers) {
  if (layers < 1) {
    throw InvalidArgument("msulbph needs at least one layer");
  }
  const int finest = 1 << (layers - 1);
  if (img.width() / finest < 3 || img.height() / finest < 3) {
    throw InvalidArgument("image too small for " + std::to_string(layers) +
                          " pyramid layers");
  }
  FeatureVector fv;
  fv.block_layout = "msulbph:" + std::to_string(layers);
  fv.values.reserve(static_cast<std::size_t>(block_count(layers)) * kUniformBins);
  for (int k = 1; k <= layers; ++k) {
    const int per_side = 1 << (k - 1);
    for (const BlockRect& cell :
         partition_grid(img.width(), img.height(), per_side, per_side)) {
      const Histogram59 hist = ulbp_histogram(img, cell);
      fv.values.insert(fv.values.end(), hist.begin(), hist.end());
    }
  }
  return fv;
}

FeatureSpec FeatureSpec::parse(std::string_view text) {
  FeatureSpec spec;
  if (text == "raw") {
    spec.kind = Kind::raw;
    return spec;
  }
  if (text.starts_with("lbph:")) {
    const std::string_view dims = text.substr(5);
    const std::size_t sep = dims.find('x');
    if (sep == std::string_view::npos) {
      throw InvalidArgument("expected lbph:<gx>x<gy>, got \"" + std::string(text) + "\"");
    }
    spec.kind = Kind::lbph;
    spec.grid_cols = parse_positive_int(dims.substr(0, sep), "lbph grid columns");
    spec.grid_rows = parse_positive_int(dims.substr(sep + 1), "lbph grid rows");
    return spec;
  }
  if (text.starts_with("msulbph:")) {
    spec.kind = Kind::msulbph;
    spec.layers = parse_positive_int(text.substr(8), "msulbph layers");
    return spec;
  }
  throw InvalidArgument("unknown feature descriptor \"" + std::string(text) +
                        "\" (expected raw, lbph:<gx>x<gy> or msulbph:<L>)");
}

std::string FeatureSpec::to_string() const {
  switch (kind) {
    case Kind::raw:
      return "raw";
    case Kind::lbph:
      return "lbph:" + std::to_string(grid_cols) + "x" + std::to_string(grid_rows);
    case Kind::msulbph:
      return "msulbph:" + std::to_string(layers);
  }
  return "unknown";
}

FeatureVector extract_features(const IntensityImage& img, const FeatureSpec& spec) {
  switch (spec.kind) {
    case FeatureSpec::Kind::raw: {
      FeatureVector fv;
      fv.block_layout = "raw:" + std::to_string(img.width()) + "x" +
                        std::to_string(img.height());
      fv.values.assign(img.data().begin(), img.data().end());
      return fv;
    }
    case FeatureSpec::Kind::lbph:
      return lbph(img, spec.grid_cols, spec.grid_rows);
    case FeatureSpec::Kind::msulbph:
      return msulbph(img, spec.layers);
  }
  throw InvalidArgument("unknown feature kind");
}

}  // namespace lumenorm

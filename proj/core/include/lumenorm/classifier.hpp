#pragma once

#include <span>
#include <string>
#include <vector>

#include "lumenorm/features.hpp"

namespace lumenorm {

/// One enrolled reference: subject label, feature vector, source image path.
struct GalleryEntry {
  std::string label;
  FeatureVector vector;
  std::string source;
};

struct MatchResult {
  std::string label;
  double distance = 0.0;
  std::size_t index = 0;
};

/// Histogram chi-square dissimilarity: sum of (a-b)^2 / (a+b) over all bins,
/// with 0/0 bins contributing nothing.
double chi_square(std::span<const double> h1, std::span<const double> h2);
double chi_square(const FeatureVector& h1, const FeatureVector& h2);

/// Nearest neighbor under chi-square; ties resolve to the lowest gallery
/// index.
MatchResult nn_classify(const FeatureVector& probe,
                        const std::vector<GalleryEntry>& gallery);

}  // namespace lumenorm

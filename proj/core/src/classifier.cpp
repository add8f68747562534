#include "lumenorm/classifier.hpp"

#include "lumenorm/errors.hpp"

namespace lumenorm {

double chi_square(std::span<const double> h1, std::span<const double> h2) {
  if (h1.size() != h2.size()) {
    throw InvalidArgument("chi_square: vector lengths differ");
  }
  double acc = 0.0;
  for (std::size_t i = 0; i < h1.size(); ++i) {
    const double sum = h1[i] + h2[i];
    if (sum != 0.0) {
      const double diff = h1[i] - h2[i];
      acc += diff * diff / sum;
    }
  }
  return acc;
}

double chi_square(const FeatureVector& h1, const FeatureVector& h2) {
  return chi_square(std::span<const double>(h1.values),
                    std::span<const double>(h2.values));
}

MatchResult nn_classify(const FeatureVector& probe,
                        const std::vector<GalleryEntry>& gallery) {
  if (gallery.empty()) {
    throw InvalidArgument("nn_classify: empty gallery");
  }
  MatchResult best{gallery[0].label, chi_square(probe, gallery[0].vector), 0};
  for (std::size_t i = 1; i < gallery.size(); ++i) {
    const double d = chi_square(probe, gallery[i].vector);
    if (d < best.distance) {
      best = {gallery[i].label, d, i};
    }
  }
  return best;
}

}  // namespace lumenorm

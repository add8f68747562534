#pragma once

#include <vector>

#include "lumenorm/image.hpp"

namespace lumenorm {

/// Square filter kernel of side 2*radius+1, row-major weights.
struct Kernel {
  int radius = 0;
  std::vector<double> weights;

  int side() const { return 2 * radius + 1; }
  double at(int dx, int dy) const {
    return weights[static_cast<std::size_t>(dy + radius) * side() + (dx + radius)];
  }
};

/// Parameters of one bilateral pass: spatial scale, range scale (in the
/// units of the filtered domain) and the half-width of the square window.
struct BilateralParams {
  double sigma_d = 1.0;
  double sigma_r = 0.3;
  int radius = 3;

  bool operator==(const BilateralParams&) const = default;
};

/// Pixelwise log2(I + epsilon). With epsilon = 1 the output spans [0, 8].
RealImage log2_transform(const IntensityImage& img, double epsilon = 1.0);

/// Pixelwise 255 * (I/255)^gamma.
RealImage gamma_transform(const IntensityImage& img, double gamma);

/// Global histogram equalization with the cdf-min formulation:
///   out = round(255 * (cdf(v) - cdf_min) / (N*M - cdf_min)).
/// A constant image maps to all-0.
IntensityImage hist_equalize(const IntensityImage& img);

/// Normalized Gaussian, weights ~ exp(-(x^2+y^2)/(2 sigma^2)), sum 1,
/// radius ceil(3 sigma).
Kernel gaussian_kernel(double sigma);

/// Discretized Laplacian-of-Gaussian; weights shifted to sum exactly 0 so the
/// response to constants vanishes.
Kernel log_kernel(double sigma);

/// 2-D correlation with replicate (clamp-to-edge) border padding.
RealImage convolve(const RealImage& img, const Kernel& k);

/// Difference of Gaussians: G_{sigma1} * I - G_{sigma2} * I, 0 < sigma1 < sigma2.
RealImage dog_filter(const RealImage& img, double sigma1, double sigma2);

/// Laplacian-of-Gaussian band filter.
RealImage log_filter(const RealImage& img, double sigma);

/// Edge-preserving weighted average; the weight of each window pixel is the
/// product of a spatial Gaussian in the offset and a range Gaussian in the
/// intensity difference to the center. Output stays inside the window's
/// [min, max].
RealImage bilateral_filter(const RealImage& img, const BilateralParams& p);

/// Difference of two bilateral passes with distinct parameter sets.
RealImage dob_filter(const RealImage& img, const BilateralParams& p1,
                     const BilateralParams& p2);

}  // namespace lumenorm

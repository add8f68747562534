#include "lumenorm/filters.hpp"

#include <array>
#include <cmath>
#include <string>

#include "lumenorm/errors.hpp"

namespace lumenorm {

namespace {

void require_positive(double v, const char* what) {
  if (!(v > 0.0)) {
    throw InvalidArgument(std::string(what) + " must be positive");
  }
}

void validate_bilateral(const BilateralParams& p) {
  require_positive(p.sigma_d, "sigma_d");
  require_positive(p.sigma_r, "sigma_r");
  if (p.radius < 1) {
    throw InvalidArgument("bilateral radius must be at least 1");
  }
}

}  // namespace

RealImage log2_transform(const IntensityImage& img, double epsilon) {
  require_positive(epsilon, "epsilon");
  RealImage out(img.width(), img.height());
  auto dst = out.data();
  auto src = img.data();
  for (std::size_t i = 0; i < src.size(); ++i) {
    dst[i] = std::log2(static_cast<double>(src[i]) + epsilon);
  }
  return out;
}

RealImage gamma_transform(const IntensityImage& img, double gamma) {
  require_positive(gamma, "gamma");
  // 256-entry lookup; gray levels are the only possible inputs.
  std::array<double, 256> lut;
  for (int v = 0; v < 256; ++v) {
    lut[static_cast<std::size_t>(v)] = 255.0 * std::pow(v / 255.0, gamma);
  }
  RealImage out(img.width(), img.height());
  auto dst = out.data();
  auto src = img.data();
  for (std::size_t i = 0; i < src.size(); ++i) {
    dst[i] = lut[src[i]];
  }
  return out;
}

IntensityImage hist_equalize(const IntensityImage& img) {
  std::array<std::size_t, 256> counts{};
  for (std::uint8_t v : img.data()) {
    ++counts[v];
  }
  std::array<std::size_t, 256> cdf{};
  std::size_t running = 0;
  std::size_t cdf_min = 0;
  for (int v = 0; v < 256; ++v) {
    running += counts[static_cast<std::size_t>(v)];
    cdf[static_cast<std::size_t>(v)] = running;
    if (cdf_min == 0 && running > 0) {
      cdf_min = running;
    }
  }
  const std::size_t total = img.pixel_count();
  const double denom = static_cast<double>(total - cdf_min);

  std::array<std::uint8_t, 256> map{};
  for (int v = 0; v < 256; ++v) {
    if (denom <= 0.0) {
      map[static_cast<std::size_t>(v)] = 0;  // single-level image
      continue;
    }
    const double num = static_cast<double>(cdf[static_cast<std::size_t>(v)]) -
                       static_cast<double>(cdf_min);
    const int out = round_half_up(255.0 * num / denom);
    map[static_cast<std::size_t>(v)] =
        static_cast<std::uint8_t>(std::clamp(out, 0, 255));
  }

  IntensityImage out(img.width(), img.height());
  auto dst = out.data();
  auto src = img.data();
  for (std::size_t i = 0; i < src.size(); ++i) {
    dst[i] = map[src[i]];
  }
  return out;
}

Kernel gaussian_kernel(double sigma) {
  require_positive(sigma, "sigma");
  Kernel k;
  k.radius = static_cast<int>(std::ceil(3.0 * sigma));
  const int side = k.side();
  k.weights.resize(static_cast<std::size_t>(side) * side);
  const double inv = -1.0 / (2.0 * sigma * sigma);
  double sum = 0.0;
  for (int dy = -k.radius; dy <= k.radius; ++dy) {
    for (int dx = -k.radius; dx <= k.radius; ++dx) {
      const double w = std::exp((dx * dx + dy * dy) * inv);
      k.weights[static_cast<std::size_t>(dy + k.radius) * side + (dx + k.radius)] = w;
      sum += w;
    }
  }
  for (double& w : k.weights) {
    w /= sum;
  }
  return k;
}

Kernel log_kernel(double sigma) {
  require_positive(sigma, "sigma");
  Kernel k;
  k.radius = static_cast<int>(std::ceil(3.0 * sigma));
  const int side = k.side();
  k.weights.resize(static_cast<std::size_t>(side) * side);
  const double s2 = sigma * sigma;
  double sum = 0.0;
  for (int dy = -k.radius; dy <= k.radius; ++dy) {
    for (int dx = -k.radius; dx <= k.radius; ++dx) {
      const double r2 = static_cast<double>(dx * dx + dy * dy);
      const double w = (r2 - 2.0 * s2) / (s2 * s2) * std::exp(-r2 / (2.0 * s2));
      k.weights[static_cast<std::size_t>(dy + k.radius) * side + (dx + k.radius)] = w;
      sum += w;
    }
  }
  // The continuous LoG integrates to zero; the sampled one does not quite.
  const double shift = sum / static_cast<double>(side * side);
  for (double& w : k.weights) {
    w -= shift;
  }
  return k;
}

RealImage convolve(const RealImage& img, const Kernel& k) {
  const int w = img.width();
  const int h = img.height();
  RealImage out(w, h);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      double acc = 0.0;
      for (int dy = -k.radius; dy <= k.radius; ++dy) {
        for (int dx = -k.radius; dx <= k.radius; ++dx) {
          acc += k.at(dx, dy) * img.at_clamped(x + dx, y + dy);
        }
      }
      out(x, y) = acc;
    }
  }
  return out;
}

RealImage dog_filter(const RealImage& img, double sigma1, double sigma2) {
  if (!(sigma1 > 0.0) || !(sigma2 > sigma1)) {
    throw InvalidArgument("dog_filter needs 0 < sigma1 < sigma2");
  }
  const RealImage fine = convolve(img, gaussian_kernel(sigma1));
  const RealImage coarse = convolve(img, gaussian_kernel(sigma2));
  RealImage out(img.width(), img.height());
  auto dst = out.data();
  for (std::size_t i = 0; i < dst.size(); ++i) {
    dst[i] = fine.data()[i] - coarse.data()[i];
  }
  return out;
}

RealImage log_filter(const RealImage& img, double sigma) {
  return convolve(img, log_kernel(sigma));
}

RealImage bilateral_filter(const RealImage& img, const BilateralParams& p) {
  validate_bilateral(p);
  const int w = img.width();
  const int h = img.height();
  const int r = p.radius;
  const int side = 2 * r + 1;

  std::vector<double> spatial(static_cast<std::size_t>(side) * side);
  const double inv_d = -1.0 / (2.0 * p.sigma_d * p.sigma_d);
  for (int dy = -r; dy <= r; ++dy) {
    for (int dx = -r; dx <= r; ++dx) {
      spatial[static_cast<std::size_t>(dy + r) * side + (dx + r)] =
          std::exp((dx * dx + dy * dy) * inv_d);
    }
  }
  const double inv_r = -1.0 / (2.0 * p.sigma_r * p.sigma_r);

  RealImage out(w, h);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      const double center = img(x, y);
      double num = 0.0;
      double den = 0.0;
      for (int dy = -r; dy <= r; ++dy) {
        for (int dx = -r; dx <= r; ++dx) {
          const double v = img.at_clamped(x + dx, y + dy);
          const double diff = v - center;
          const double wgt = spatial[static_cast<std::size_t>(dy + r) * side + (dx + r)] *
                             std::exp(diff * diff * inv_r);
          num += wgt * v;
          den += wgt;
        }
      }
      out(x, y) = num / den;  // den >= center weight 1, never zero
    }
  }
  return out;
}

RealImage dob_filter(const RealImage& img, const BilateralParams& p1,
                     const BilateralParams& p2) {
  if (p1 == p2) {
    throw InvalidArgument("dob_filter needs two distinct bilateral parameter sets");
  }
  const RealImage b1 = bilateral_filter(img, p1);
  const RealImage b2 = bilateral_filter(img, p2);
  RealImage out(img.width(), img.height());
  auto dst = out.data();
  for (std::size_t i = 0; i < dst.size(); ++i) {
    dst[i] = b1.data()[i] - b2.data()[i];
  }
  return out;
}

}  // namespace lumenorm

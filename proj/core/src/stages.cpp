#include "lumenorm/stages.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "lumenorm/errors.hpp"

namespace lumenorm {

namespace {

void require_same_dims(const RealImage& a, const RealImage& b, const char* op) {
  if (a.width() != b.width() || a.height() != b.height()) {
    throw InvalidArgument(std::string(op) + ": image dimensions differ");
  }
}

void validate_lce(double alpha, double tau, double guard_eps) {
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw InvalidArgument("lce alpha must lie in (0, 1)");
  }
  if (!(tau > 0.0)) {
    throw InvalidArgument("lce tau must be positive");
  }
  if (!(guard_eps > 0.0)) {
    throw InvalidArgument("lce guard_eps must be positive");
  }
}

}  // namespace

FusionWeights fusion_weights(const RealImage& i_dog, const RealImage& i_dob) {
  require_same_dims(i_dog, i_dob, "fusion_weights");
  const double sd_dog = image_sd(i_dog);
  const double sd_dob = image_sd(i_dob);
  const double total = sd_dog + sd_dob;
  if (total == 0.0) {
    return {0.5, 0.5};
  }
  return {sd_dog / total, sd_dob / total};
}

RealImage fuse_sd(const RealImage& i_dog, const RealImage& i_dob) {
  const FusionWeights w = fusion_weights(i_dog, i_dob);
  RealImage out(i_dog.width(), i_dog.height());
  auto dst = out.data();
  auto a = i_dog.data();
  auto b = i_dob.data();
  for (std::size_t i = 0; i < dst.size(); ++i) {
    dst[i] = w.w_dog * a[i] + w.w_dob * b[i];
  }
  return out;
}

std::vector<BlockRect> partition_grid(int width, int height, int cols, int rows) {
  if (cols < 1 || rows < 1 || cols > width || rows > height) {
    throw InvalidArgument("partition grid does not fit the image");
  }
  const int base_w = width / cols;
  const int extra_w = width % cols;
  const int base_h = height / rows;
  const int extra_h = height % rows;

  std::vector<BlockRect> blocks;
  blocks.reserve(static_cast<std::size_t>(cols) * rows);
  int y = 0;
  for (int row = 0; row < rows; ++row) {
    const int bh = base_h + (row < extra_h ? 1 : 0);
    int x = 0;
    for (int col = 0; col < cols; ++col) {
      const int bw = base_w + (col < extra_w ? 1 : 0);
      blocks.push_back({x, y, bw, bh});
      x += bw;
    }
    y += bh;
  }
  return blocks;
}

std::vector<BlockRect> partition_blocks(const RealImage& img, int n) {
  if (n < 0) {
    throw InvalidArgument("block exponent must be nonnegative");
  }
  const int per_side = 1 << n;
  if (per_side > std::min(img.width(), img.height())) {
    throw InvalidArgument("image too small for 2^" + std::to_string(n) +
                          " blocks per side");
  }
  return partition_grid(img.width(), img.height(), per_side, per_side);
}

RealImage extract_block(const RealImage& img, const BlockRect& r) {
  RealImage out(r.width, r.height);
  for (int y = 0; y < r.height; ++y) {
    for (int x = 0; x < r.width; ++x) {
      out(x, y) = img(r.x + x, r.y + y);
    }
  }
  return out;
}

RealImage lce_stage1(const RealImage& block, double alpha, double guard_eps) {
  validate_lce(alpha, 1.0, guard_eps);
  double acc = 0.0;
  for (double v : block.data()) {
    acc += std::pow(std::abs(v), alpha);
  }
  const double denom = std::max(
      std::pow(acc / static_cast<double>(block.pixel_count()), 1.0 / alpha),
      guard_eps);
  RealImage out = block;
  for (double& v : out.data()) {
    v /= denom;
  }
  return out;
}

RealImage lce_stage2(const RealImage& block, double alpha, double tau,
                     double guard_eps) {
  validate_lce(alpha, tau, guard_eps);
  double acc = 0.0;
  for (double v : block.data()) {
    acc += std::pow(std::min(tau, std::abs(v)), alpha);
  }
  const double denom = std::max(
      std::pow(acc / static_cast<double>(block.pixel_count()), 1.0 / alpha),
      guard_eps);
  RealImage out = block;
  for (double& v : out.data()) {
    v /= denom;
  }
  return out;
}

RealImage lce_block(const RealImage& block, double alpha, double tau,
                    double guard_eps) {
  return lce_stage2(lce_stage1(block, alpha, guard_eps), alpha, tau, guard_eps);
}

RealImage lce(const RealImage& img, const LceParams& p) {
  validate_lce(p.alpha, p.tau, p.guard_eps);
  RealImage out(img.width(), img.height());
  for (const BlockRect& r : partition_blocks(img, p.n)) {
    const RealImage eq = lce_block(extract_block(img, r), p.alpha, p.tau, p.guard_eps);
    for (int y = 0; y < r.height; ++y) {
      for (int x = 0; x < r.width; ++x) {
        out(r.x + x, r.y + y) = eq(x, y);
      }
    }
  }
  return out;
}

RealImage tanh_compress(const RealImage& img, double tau) {
  if (!(tau > 0.0)) {
    throw InvalidArgument("tau must be positive");
  }
  RealImage out(img.width(), img.height());
  auto dst = out.data();
  auto src = img.data();
  for (std::size_t i = 0; i < src.size(); ++i) {
    dst[i] = tau * std::tanh(src[i] / tau);
  }
  return out;
}

}  // namespace lumenorm

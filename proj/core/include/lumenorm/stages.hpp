#pragma once

#include <vector>

#include "lumenorm/image.hpp"

namespace lumenorm {

/// Convex pair of fusion coefficients, one per differential-filter branch.
struct FusionWeights {
  double w_dog = 0.5;
  double w_dob = 0.5;
};

/// Local-contrast-equalization parameters: 2^n blocks per side, compressive
/// exponent alpha in (0,1), truncation threshold tau, and a floor applied to
/// the normalizing denominators.
struct LceParams {
  int n = 2;
  double alpha = 0.1;
  double tau = 10.0;
  double guard_eps = 1e-9;
};

/// Axis-aligned tile inside an image.
struct BlockRect {
  int x = 0;
  int y = 0;
  int width = 0;
  int height = 0;

  bool operator==(const BlockRect&) const = default;
};

/// Standard-deviation fusion coefficients: each branch is weighted by its
/// share of the two standard deviations. Two flat inputs split evenly.
FusionWeights fusion_weights(const RealImage& i_dog, const RealImage& i_dob);

/// Pixelwise blend w_dog * I_dog + w_dob * I_dob with SD-derived weights.
RealImage fuse_sd(const RealImage& i_dog, const RealImage& i_dob);

/// Split width x height into cols x rows tiles covering every pixel exactly
/// once, row-major. When a dimension is not divisible, the leading tiles get
/// one extra pixel each.
std::vector<BlockRect> partition_grid(int width, int height, int cols, int rows);

/// The 2^n x 2^n tiling used by local contrast equalization.
std::vector<BlockRect> partition_blocks(const RealImage& img, int n);

RealImage extract_block(const RealImage& img, const BlockRect& r);

/// First equalization stage: divide by (mean |v|^alpha)^(1/alpha). The
/// denominator is floored at guard_eps, so an all-zero block stays zero.
/// Invariant to positive scaling of the input.
RealImage lce_stage1(const RealImage& block, double alpha, double guard_eps);

/// Second stage: divide by (mean min(tau,|v|)^alpha)^(1/alpha), the
/// truncated variant that caps the influence of extreme values.
RealImage lce_stage2(const RealImage& block, double alpha, double tau,
                     double guard_eps);

/// Both equalization stages in sequence.
RealImage lce_block(const RealImage& block, double alpha, double tau,
                    double guard_eps);

/// Apply lce_block to every tile of the 2^n grid independently and reassemble
/// in place. n = 0 is holistic contrast equalization.
RealImage lce(const RealImage& img, const LceParams& p);

/// Bounded odd compression v -> tau * tanh(v / tau); output lies strictly in
/// (-tau, tau) and is the identity to first order near zero.
RealImage tanh_compress(const RealImage& img, double tau);

}  // namespace lumenorm

#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "lumenorm/filters.hpp"
#include "lumenorm/image.hpp"
#include "lumenorm/stages.hpp"

namespace lumenorm {

/// Every tunable of the normalization chains, with working defaults.
/// sigma_r of the DoB pair is expressed in log2-domain units because the
/// bilateral passes run after the log2 transform (value range [0, 8]).
struct PipelineConfig {
  double epsilon = 1.0;      // log2(I + epsilon)
  double dog_sigma1 = 1.0;   // fine Gaussian scale
  double dog_sigma2 = 2.0;   // coarse Gaussian scale
  BilateralParams dob_p1{1.0, 0.3, 3};
  BilateralParams dob_p2{2.0, 0.3, 6};
  LceParams lce{};
  double ssr_c = 15.0;       // retinex surround scale, pixels
  double gic_gamma = 0.2;
  double tt_gamma = 0.2;
};

/// Throws InvalidArgument if any field is outside its domain.
void validate(const PipelineConfig& cfg);

/// Parse a UTF-8 JSON object whose keys match the PipelineConfig field names.
/// Missing keys keep their defaults; unknown keys are rejected.
PipelineConfig config_from_json_text(const std::string& text);
PipelineConfig load_config_file(const std::filesystem::path& path);

/// Serialize; feeding the output back through config_from_json_text is a
/// round trip.
std::string config_to_json_text(const PipelineConfig& cfg);

/// The implemented normalizer roster. "none" is the identity pass-through.
enum class MethodId { fdfi, tt, he, gic, log, ssr, none };

MethodId parse_method(std::string_view name);
std::string_view method_name(MethodId method);
const std::vector<std::string_view>& method_names();

/// Full normalization chain: log2 transform, DoG and DoB on the same
/// log-domain image, SD-weighted fusion, blockwise contrast equalization,
/// tanh compression, rescale to [0, 255].
IntensityImage fdfi_ltein(const IntensityImage& img, const PipelineConfig& cfg);

/// Single-scale retinex: log(I+1) minus log of its Gaussian surround,
/// rescaled to [0, 255].
IntensityImage ssr_normalize(const IntensityImage& img, const PipelineConfig& cfg);

/// Gamma correction, DoG, holistic contrast equalization, tanh compression,
/// rescale to [0, 255].
IntensityImage tt_normalize(const IntensityImage& img, const PipelineConfig& cfg);

/// Dispatch over the method roster.
IntensityImage normalize(MethodId method, const IntensityImage& img,
                         const PipelineConfig& cfg);

}  // namespace lumenorm

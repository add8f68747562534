#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "lumenorm/image.hpp"

namespace lumenorm {

enum class Role { gallery, probe };

struct DatasetEntry {
  std::string path;           // as written in the manifest
  std::string resolved_path;  // absolute or manifest-relative resolution
  std::string subject;
  Role role = Role::probe;
  std::optional<int> subset;  // illumination subset 1..5 when known
};

struct Dataset {
  std::vector<DatasetEntry> entries;
  int image_width = 100;   // resize target applied before normalization
  int image_height = 100;
};

/// Fields parsed from an Extended-Yale-B-style file name
/// (yaleB<NN>_P00A<+AAA>E<+EE>, any extension).
struct YaleName {
  int subject = 0;
  int azimuth = 0;    // degrees
  int elevation = 0;  // degrees
};

/// Throws FormatError when the name does not match the pattern.
YaleName parse_yale_filename(std::string_view name);

/// Illumination subset from the light-source angle off the optical axis,
/// theta = arccos(cos az * cos el):
///   1: theta < 12, 2: 12 <= theta <= 25, 3: 25 < theta <= 50,
///   4: 50 < theta <= 77, 5: theta > 77.
int subset_of(double azimuth_deg, double elevation_deg);

/// Read a CSV manifest with header `path,subject,role[,subset]`. Relative
/// paths resolve against the manifest's directory. Without an explicit
/// subset column, Yale-style file names are used to assign subsets; other
/// names simply carry none.
Dataset load_manifest(const std::filesystem::path& path);

enum class LightingField { uniform, linear_ramp, half_shadow };

/// One synthetic probe illumination: a multiplicative gain field.
///   uniform     - strength everywhere
///   linear_ramp - strength at the left edge rising linearly to 1 at the right
///   half_shadow - strength on the left half, 1 on the right half
struct LightingSpec {
  LightingField field = LightingField::uniform;
  double strength = 1.0;
};

const std::vector<LightingSpec>& default_lighting_set();

/// Gain of a lighting field at column x of a size-wide image.
double lighting_gain(const LightingSpec& light, int size, int x);

struct SynthSpec {
  int subjects = 10;
  int size = 100;  // square images
  std::vector<LightingSpec> lighting = default_lighting_set();
};

/// Generate a deterministic synthetic recognition set under out_dir:
/// per subject a smooth seeded texture as s<NN>/gallery.pgm and one
/// s<NN>/probe_<k>.pgm per lighting element, plus a manifest.csv. The same
/// (spec, seed) always produces identical bytes.
Dataset synth_dataset(const SynthSpec& spec, std::uint64_t seed,
                      const std::filesystem::path& out_dir);

}  // namespace lumenorm

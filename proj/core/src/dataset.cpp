#include "lumenorm/dataset.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <random>
#include <regex>
#include <sstream>

#include "lumenorm/errors.hpp"
#include "lumenorm/image_io.hpp"

namespace lumenorm {

namespace {

std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r\n");
  if (begin == std::string::npos) return "";
  const auto end = s.find_last_not_of(" \t\r\n");
  return s.substr(begin, end - begin + 1);
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::stringstream ss(line);
  std::string field;
  while (std::getline(ss, field, ',')) {
    fields.push_back(trim(field));
  }
  if (!line.empty() && line.back() == ',') {
    fields.push_back("");
  }
  return fields;
}

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Uniform double in [0, 1) from the standard-pinned mt19937_64 stream;
// avoids std::uniform_real_distribution, whose output is not portable.
double next_unit(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

struct Grating {
  double fx, fy, phase, amplitude;
};

// Smooth subject texture: a fixed offset plus a handful of low-frequency
// cosine gratings with seeded frequencies, phases and amplitudes. Values
// stay in [36, 156] so the default lighting set never clips.
std::vector<Grating> make_gratings(std::uint64_t seed, int subject) {
  constexpr int kGratings = 5;
  constexpr double kTotalAmplitude = 60.0;

  std::mt19937_64 rng(mix_seed(seed, static_cast<std::uint64_t>(subject)));
  std::vector<Grating> gratings(kGratings);
  double weight_sum = 0.0;
  for (Grating& g : gratings) {
    const double mag_x = 0.5 + 3.5 * next_unit(rng);
    const double mag_y = 0.5 + 3.5 * next_unit(rng);
    g.fx = next_unit(rng) < 0.5 ? mag_x : -mag_x;
    g.fy = next_unit(rng) < 0.5 ? mag_y : -mag_y;
    g.phase = 2.0 * std::numbers::pi * next_unit(rng);
    g.amplitude = 0.5 + next_unit(rng);  // relative weight for now
    weight_sum += g.amplitude;
  }
  for (Grating& g : gratings) {
    g.amplitude *= kTotalAmplitude / weight_sum;
  }
  return gratings;
}

double texture_value(const std::vector<Grating>& gratings, int size, int x, int y) {
  double v = 96.0;
  for (const Grating& g : gratings) {
    v += g.amplitude *
         std::cos(2.0 * std::numbers::pi * (g.fx * x + g.fy * y) / size + g.phase);
  }
  return v;
}

std::string subject_label(int index) {
  char buf[8];
  std::snprintf(buf, sizeof(buf), "s%02d", index);
  return buf;
}

}  // namespace

YaleName parse_yale_filename(std::string_view name) {
  static const std::regex pattern(
      R"(^yaleB(\d+)_P00A([+-]\d+)E([+-]\d+)(?:\.[A-Za-z0-9.]+)?$)");
  const std::string base = std::filesystem::path(std::string(name)).filename().string();
  std::smatch m;
  if (!std::regex_match(base, m, pattern)) {
    throw FormatError("\"" + base + "\" is not a Yale-B-style file name");
  }
  YaleName parsed;
  parsed.subject = std::stoi(m[1].str());
  parsed.azimuth = std::stoi(m[2].str());
  parsed.elevation = std::stoi(m[3].str());
  return parsed;
}

int subset_of(double azimuth_deg, double elevation_deg) {
  constexpr double deg = std::numbers::pi / 180.0;
  const double c = std::cos(azimuth_deg * deg) * std::cos(elevation_deg * deg);
  const double theta = std::acos(std::clamp(c, -1.0, 1.0)) / deg;
  if (theta < 12.0) return 1;
  if (theta <= 25.0) return 2;
  if (theta <= 50.0) return 3;
  if (theta <= 77.0) return 4;
  return 5;
}

Dataset load_manifest(const std::filesystem::path& path) {
  std::ifstream is(path);
  if (!is) {
    throw IoError("cannot open manifest " + path.string());
  }
  const std::filesystem::path base_dir = path.has_parent_path()
                                             ? path.parent_path()
                                             : std::filesystem::path(".");

  std::string line;
  if (!std::getline(is, line)) {
    throw FormatError(path.string() + ": empty manifest");
  }
  const auto header = split_csv_line(line);
  const bool has_subset_column = header.size() == 4 && header[3] == "subset";
  if (!(header.size() == 3 || has_subset_column) || header[0] != "path" ||
      header[1] != "subject" || header[2] != "role") {
    throw FormatError(path.string() +
                      ": manifest header must be path,subject,role[,subset]");
  }

  Dataset ds;
  int line_no = 1;
  while (std::getline(is, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    const auto fields = split_csv_line(line);
    const std::string where = path.string() + ":" + std::to_string(line_no);
    if (fields.size() != header.size()) {
      throw FormatError(where + ": expected " + std::to_string(header.size()) +
                        " fields, got " + std::to_string(fields.size()));
    }
    DatasetEntry entry;
    entry.path = fields[0];
    entry.subject = fields[1];
    if (entry.path.empty() || entry.subject.empty()) {
      throw FormatError(where + ": path and subject must be nonempty");
    }
    if (fields[2] == "gallery") {
      entry.role = Role::gallery;
    } else if (fields[2] == "probe") {
      entry.role = Role::probe;
    } else {
      throw FormatError(where + ": unknown role \"" + fields[2] +
                        "\" (expected gallery or probe)");
    }
    if (has_subset_column && !fields[3].empty()) {
      int subset = 0;
      try {
        subset = std::stoi(fields[3]);
      } catch (const std::exception&) {
        throw FormatError(where + ": subset must be an integer 1..5");
      }
      if (subset < 1 || subset > 5) {
        throw FormatError(where + ": subset must be an integer 1..5");
      }
      entry.subset = subset;
    } else {
      try {
        const YaleName yale = parse_yale_filename(entry.path);
        entry.subset = subset_of(yale.azimuth, yale.elevation);
      } catch (const FormatError&) {
        // not a Yale-style name; no subset
      }
    }
    const std::filesystem::path p(entry.path);
    entry.resolved_path = p.is_absolute() ? p.string() : (base_dir / p).string();
    ds.entries.push_back(std::move(entry));
  }
  return ds;
}

double lighting_gain(const LightingSpec& light, int size, int x) {
  switch (light.field) {
    case LightingField::uniform:
      return light.strength;
    case LightingField::linear_ramp:
      return light.strength +
             (1.0 - light.strength) * static_cast<double>(x) / (size - 1);
    case LightingField::half_shadow:
      return x < size / 2 ? light.strength : 1.0;
  }
  return 1.0;
}

const std::vector<LightingSpec>& default_lighting_set() {
  static const std::vector<LightingSpec> set = {
      {LightingField::uniform, 0.5},
      {LightingField::uniform, 1.5},
      {LightingField::linear_ramp, 0.3},
      {LightingField::half_shadow, 0.35},
  };
  return set;
}

Dataset synth_dataset(const SynthSpec& spec, std::uint64_t seed,
                      const std::filesystem::path& out_dir) {
  if (spec.subjects < 2) {
    throw InvalidArgument("synthetic dataset needs at least 2 subjects");
  }
  if (spec.size < 32) {
    throw InvalidArgument("synthetic image size must be at least 32");
  }
  if (spec.lighting.empty()) {
    throw InvalidArgument("synthetic lighting set must be nonempty");
  }

  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  if (ec) {
    throw IoError("cannot create " + out_dir.string() + ": " + ec.message());
  }

  Dataset ds;
  ds.image_width = spec.size;
  ds.image_height = spec.size;

  std::ostringstream manifest;
  manifest << "path,subject,role\n";

  for (int s = 1; s <= spec.subjects; ++s) {
    const std::string label = subject_label(s);
    const std::filesystem::path subject_dir = out_dir / label;
    std::filesystem::create_directories(subject_dir, ec);
    if (ec) {
      throw IoError("cannot create " + subject_dir.string() + ": " + ec.message());
    }
    const auto gratings = make_gratings(seed, s);

    IntensityImage gallery(spec.size, spec.size);
    for (int y = 0; y < spec.size; ++y) {
      for (int x = 0; x < spec.size; ++x) {
        const int v = round_half_up(texture_value(gratings, spec.size, x, y));
        gallery(x, y) = static_cast<std::uint8_t>(std::clamp(v, 0, 255));
      }
    }
    const std::string gallery_rel = label + "/gallery.pgm";
    save_image(gallery, out_dir / gallery_rel, ImageFormat::pgm);
    manifest << gallery_rel << "," << label << ",gallery\n";
    ds.entries.push_back({gallery_rel, (out_dir / gallery_rel).string(), label,
                          Role::gallery, std::nullopt});

    for (std::size_t k = 0; k < spec.lighting.size(); ++k) {
      IntensityImage probe(spec.size, spec.size);
      for (int y = 0; y < spec.size; ++y) {
        for (int x = 0; x < spec.size; ++x) {
          const double base = texture_value(gratings, spec.size, x, y);
          const double lit = base * lighting_gain(spec.lighting[k], spec.size, x);
          probe(x, y) = static_cast<std::uint8_t>(
              std::clamp(round_half_up(lit), 0, 255));
        }
      }
      const std::string probe_rel = label + "/probe_" + std::to_string(k + 1) + ".pgm";
      save_image(probe, out_dir / probe_rel, ImageFormat::pgm);
      manifest << probe_rel << "," << label << ",probe\n";
      ds.entries.push_back({probe_rel, (out_dir / probe_rel).string(), label,
                            Role::probe, std::nullopt});
    }
  }

  const std::filesystem::path manifest_path = out_dir / "manifest.csv";
  std::ofstream os(manifest_path, std::ios::binary);
  if (!os) {
    throw IoError("cannot write " + manifest_path.string());
  }
  os << manifest.str();
  if (!os) {
    throw IoError("write failed for " + manifest_path.string());
  }
  return ds;
}

}  // namespace lumenorm

// lumenorm command-line front end: normalization, feature extraction,
// synthetic data generation and recognition-rate evaluation.

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "lumenorm/dataset.hpp"
#include "lumenorm/errors.hpp"
#include "lumenorm/experiment.hpp"
#include "lumenorm/features.hpp"
#include "lumenorm/image_io.hpp"
#include "lumenorm/parallel.hpp"
#include "lumenorm/pipeline.hpp"
#include "lumenorm/version.hpp"

namespace fs = std::filesystem;
using namespace lumenorm;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitData = 2;

PipelineConfig effective_config(const std::string& config_path) {
  if (config_path.empty()) {
    return PipelineConfig{};
  }
  return load_config_file(config_path);
}

std::pair<int, int> parse_size(const std::string& text) {
  const auto sep = text.find('x');
  try {
    if (sep == std::string::npos) {
      const int s = std::stoi(text);
      return {s, s};
    }
    return {std::stoi(text.substr(0, sep)), std::stoi(text.substr(sep + 1))};
  } catch (const std::exception&) {
    throw InvalidArgument("bad --size \"" + text + "\" (expected e.g. 100x100)");
  }
}

std::vector<fs::path> collect_inputs(const fs::path& input) {
  if (fs::is_directory(input)) {
    std::vector<fs::path> files;
    for (const auto& de : fs::directory_iterator(input)) {
      if (!de.is_regular_file()) continue;
      const auto ext = de.path().extension();
      if (ext == ".pgm" || ext == ".png") {
        files.push_back(de.path());
      }
    }
    std::sort(files.begin(), files.end());
    if (files.empty()) {
      throw IoError("no .pgm/.png images found in " + input.string());
    }
    return files;
  }
  if (!fs::exists(input)) {
    throw IoError(input.string() + " does not exist");
  }
  return {input};
}

// Side-by-side panel: one row per image, original on the left, normalized on
// the right, on a black canvas.
IntensityImage compose_grid(const std::vector<IntensityImage>& originals,
                            const std::vector<IntensityImage>& normalized) {
  constexpr int kGap = 4;
  int cell_w = 3, cell_h = 3;
  for (const auto& img : originals) {
    cell_w = std::max(cell_w, img.width());
    cell_h = std::max(cell_h, img.height());
  }
  const int rows = static_cast<int>(originals.size());
  IntensityImage canvas(2 * cell_w + 3 * kGap, rows * (cell_h + kGap) + kGap);
  for (int row = 0; row < rows; ++row) {
    const int oy = kGap + row * (cell_h + kGap);
    const IntensityImage* panels[2] = {&originals[static_cast<std::size_t>(row)],
                                       &normalized[static_cast<std::size_t>(row)]};
    for (int col = 0; col < 2; ++col) {
      const int ox = kGap + col * (cell_w + kGap);
      const IntensityImage& img = *panels[col];
      for (int y = 0; y < img.height(); ++y) {
        for (int x = 0; x < img.width(); ++x) {
          canvas(ox + x, oy + y) = img(x, y);
        }
      }
    }
  }
  return canvas;
}

int cmd_normalize(const std::string& input, const std::string& output,
                  const std::string& method_name, const std::string& config_path,
                  const std::string& grid_path) {
  const MethodId method = parse_method(method_name);
  const PipelineConfig cfg = effective_config(config_path);
  const std::vector<fs::path> inputs = collect_inputs(input);

  fs::create_directories(output);

  std::vector<IntensityImage> originals(inputs.size());
  std::vector<IntensityImage> results(inputs.size());
  parallel_for(inputs.size(), [&](std::size_t i) {
    originals[i] = load_image(inputs[i]);
    results[i] = normalize(method, originals[i], cfg);
  });

  for (std::size_t i = 0; i < inputs.size(); ++i) {
    const fs::path dest = fs::path(output) / inputs[i].filename();
    save_image(results[i], dest, format_for_path(dest));
    std::cout << inputs[i].string() << " -> " << dest.string() << "\n";
  }

  if (!grid_path.empty()) {
    save_image(compose_grid(originals, results), grid_path, ImageFormat::png);
    std::cout << "grid -> " << grid_path << "\n";
  }
  return kExitOk;
}

int cmd_features(const std::string& manifest, const std::string& feature_text,
                 const std::string& output, const std::string& method_name,
                 const std::string& config_path, const std::string& size_text) {
  const FeatureSpec feature = FeatureSpec::parse(feature_text);
  const MethodId method = parse_method(method_name);
  const PipelineConfig cfg = effective_config(config_path);

  Dataset ds = load_manifest(manifest);
  std::tie(ds.image_width, ds.image_height) = parse_size(size_text);
  if (ds.entries.empty()) {
    throw FormatError(manifest + ": manifest lists no images");
  }

  std::vector<FeatureVector> vectors(ds.entries.size());
  parallel_for(ds.entries.size(), [&](std::size_t i) {
    IntensityImage img = load_image(ds.entries[i].resolved_path);
    if (img.width() != ds.image_width || img.height() != ds.image_height) {
      img = resize_bilinear(img, ds.image_width, ds.image_height);
    }
    vectors[i] = extract_features(normalize(method, img, cfg), feature);
  });

  std::FILE* os = std::fopen(output.c_str(), "wb");
  if (!os) {
    throw IoError("cannot write " + output);
  }
  for (std::size_t i = 0; i < ds.entries.size(); ++i) {
    std::fprintf(os, "%s,%s", ds.entries[i].path.c_str(),
                 ds.entries[i].subject.c_str());
    for (double v : vectors[i].values) {
      std::fprintf(os, ",%.9g", v);
    }
    std::fputc('\n', os);
  }
  std::fclose(os);
  std::cout << "wrote " << ds.entries.size() << " feature rows (" << feature.to_string()
            << ") to " << output << "\n";
  return kExitOk;
}

int cmd_evaluate(const std::string& manifest, const std::string& method_name,
                 const std::string& feature_text, const std::string& config_path,
                 const std::string& report_path, const std::string& size_text) {
  ExperimentSpec spec;
  spec.method = parse_method(method_name);
  spec.feature = FeatureSpec::parse(feature_text);
  spec.config = effective_config(config_path);
  spec.dataset = load_manifest(manifest);
  std::tie(spec.dataset.image_width, spec.dataset.image_height) = parse_size(size_text);

  const EvaluationReport report = run_experiment(spec);
  write_report(report, report_path);

  char line[32];
  std::snprintf(line, sizeof(line), "rate=%.4f\n", report.rate);
  std::cout << line;
  return kExitOk;
}

int cmd_synth(int subjects, int size, std::uint64_t seed, const std::string& out) {
  SynthSpec spec;
  spec.subjects = subjects;
  spec.size = size;
  const Dataset ds = synth_dataset(spec, seed, out);
  std::cout << "synth: subjects=" << subjects << " size=" << size << " seed=" << seed
            << " out=" << out << "\n";
  std::cout << "wrote " << ds.entries.size() << " images and " << out
            << "/manifest.csv\n";
  return kExitOk;
}

int cmd_print_config(const std::string& config_path) {
  std::cout << config_to_json_text(effective_config(config_path)) << "\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"illumination normalization and LBP face-recognition toolkit"};
  app.set_version_flag("--version", std::string(kVersion));
  app.require_subcommand(1);

  // normalize
  auto* normalize_cmd =
      app.add_subcommand("normalize", "normalize one image or a directory of images");
  std::string n_input, n_output, n_method = "fdfi", n_config, n_grid;
  normalize_cmd->add_option("--input", n_input, "input image or directory")->required();
  normalize_cmd->add_option("--output", n_output, "output directory")->required();
  normalize_cmd->add_option("--method", n_method,
                            "normalizer: fdfi, tt, he, gic, log, ssr, none");
  normalize_cmd->add_option("--config", n_config, "pipeline config JSON file");
  normalize_cmd->add_option("--grid", n_grid,
                            "also write a before/after comparison grid PNG here");

  // features
  auto* features_cmd =
      app.add_subcommand("features", "extract feature vectors to CSV");
  std::string f_manifest, f_feature = "msulbph:3", f_output, f_method = "none",
              f_config, f_size = "100x100";
  features_cmd->add_option("--manifest", f_manifest, "dataset manifest CSV")->required();
  features_cmd->add_option("--feature", f_feature,
                           "feature descriptor: raw | lbph:<gx>x<gy> | msulbph:<L>");
  features_cmd->add_option("--output", f_output, "output CSV path")->required();
  features_cmd->add_option("--method", f_method, "normalizer applied before features");
  features_cmd->add_option("--config", f_config, "pipeline config JSON file");
  features_cmd->add_option("--size", f_size, "resize target, e.g. 100x100");

  // evaluate
  auto* evaluate_cmd =
      app.add_subcommand("evaluate", "run a gallery/probe recognition experiment");
  std::string e_manifest, e_method = "fdfi", e_feature = "msulbph:3", e_config,
              e_report = "report.csv", e_size = "100x100";
  evaluate_cmd->add_option("--manifest", e_manifest, "dataset manifest CSV")->required();
  evaluate_cmd->add_option("--method", e_method,
                           "normalizer: fdfi, tt, he, gic, log, ssr, none");
  evaluate_cmd->add_option("--feature", e_feature,
                           "feature descriptor: raw | lbph:<gx>x<gy> | msulbph:<L>");
  evaluate_cmd->add_option("--config", e_config, "pipeline config JSON file");
  evaluate_cmd->add_option("--report", e_report, "report CSV path (JSON sidecar beside it)");
  evaluate_cmd->add_option("--size", e_size, "resize target, e.g. 100x100");

  // synth
  auto* synth_cmd =
      app.add_subcommand("synth", "generate a deterministic synthetic dataset");
  int s_subjects = 10, s_size = 100;
  std::uint64_t s_seed = 7;
  std::string s_out;
  synth_cmd->add_option("--subjects", s_subjects, "number of subjects (>= 2)");
  synth_cmd->add_option("--size", s_size, "square image side in pixels (>= 32)");
  synth_cmd->add_option("--seed", s_seed, "texture seed");
  synth_cmd->add_option("--out", s_out, "output directory")->required();

  // print-config
  auto* print_cmd = app.add_subcommand("print-config", "print the effective pipeline config");
  std::string p_config;
  print_cmd->add_option("--config", p_config, "pipeline config JSON file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (normalize_cmd->parsed()) {
      return cmd_normalize(n_input, n_output, n_method, n_config, n_grid);
    }
    if (features_cmd->parsed()) {
      return cmd_features(f_manifest, f_feature, f_output, f_method, f_config, f_size);
    }
    if (evaluate_cmd->parsed()) {
      return cmd_evaluate(e_manifest, e_method, e_feature, e_config, e_report, e_size);
    }
    if (synth_cmd->parsed()) {
      return cmd_synth(s_subjects, s_size, s_seed, s_out);
    }
    if (print_cmd->parsed()) {
      return cmd_print_config(p_config);
    }
  } catch (const InvalidArgument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitData;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitData;
  }
  return kExitUsage;
}

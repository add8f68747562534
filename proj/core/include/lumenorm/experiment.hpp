#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "lumenorm/dataset.hpp"
#include "lumenorm/features.hpp"
#include "lumenorm/pipeline.hpp"

namespace lumenorm {

/// One full recognition run: a labeled gallery/probe split, the normalizer,
/// the feature descriptor and its pipeline configuration.
struct ExperimentSpec {
  Dataset dataset;
  MethodId method = MethodId::fdfi;
  FeatureSpec feature{};
  PipelineConfig config{};
  std::uint64_t seed = 0;  // echoed for provenance; used by synthetic generation only
};

struct ProbeRecord {
  std::string path;
  std::string true_label;
  std::string predicted_label;
  double distance = 0.0;
  std::optional<int> subset;
};

struct EvaluationReport {
  std::vector<ProbeRecord> records;  // input order
  double rate = 0.0;                 // correct / total, exact
  std::map<int, double> per_subset_rate;
  std::string method;
  std::string feature;
  PipelineConfig config;
  double duration_ms = 0.0;
  std::string version;
};

/// Resize, normalize and featurize every image, index the gallery, classify
/// every probe with the chi-square nearest neighbor, and fill the report.
/// Deterministic for a fixed spec regardless of worker parallelism. Gallery
/// load failures abort the run; unloadable probes are reported on stderr and
/// skipped.
EvaluationReport run_experiment(const ExperimentSpec& spec);

/// Write per-probe records as CSV (`path,true,predicted,distance`) plus a
/// JSON summary sidecar next to it (extension replaced with .json).
void write_report(const EvaluationReport& report, const std::filesystem::path& csv_path);

/// The sidecar path used by write_report.
std::filesystem::path report_summary_path(const std::filesystem::path& csv_path);

}  // namespace lumenorm

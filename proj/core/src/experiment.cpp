#include "lumenorm/experiment.hpp"

#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "lumenorm/classifier.hpp"
#include "lumenorm/errors.hpp"
#include "lumenorm/image_io.hpp"
#include "lumenorm/parallel.hpp"
#include "lumenorm/version.hpp"

namespace lumenorm {

namespace {

std::string format_rate(double rate) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.4f", rate);
  return buf;
}

std::string format_sig9(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.9g", v);
  return buf;
}

FeatureVector featurize_one(const DatasetEntry& entry, const ExperimentSpec& spec) {
  IntensityImage img = load_image(entry.resolved_path);
  if (img.width() != spec.dataset.image_width ||
      img.height() != spec.dataset.image_height) {
    img = resize_bilinear(img, spec.dataset.image_width, spec.dataset.image_height);
  }
  return extract_features(normalize(spec.method, img, spec.config), spec.feature);
}

}  // namespace

EvaluationReport run_experiment(const ExperimentSpec& spec) {
  validate(spec.config);
  const auto start = std::chrono::steady_clock::now();

  std::vector<const DatasetEntry*> gallery_entries;
  std::vector<const DatasetEntry*> probe_entries;
  for (const DatasetEntry& e : spec.dataset.entries) {
    (e.role == Role::gallery ? gallery_entries : probe_entries).push_back(&e);
  }
  if (gallery_entries.empty()) {
    throw InvalidArgument("run_experiment: no gallery entries");
  }
  if (probe_entries.empty()) {
    throw InvalidArgument("run_experiment: no probe entries");
  }

  // Gallery first; any gallery failure aborts the run.
  std::vector<GalleryEntry> gallery(gallery_entries.size());
  parallel_for(gallery_entries.size(), [&](std::size_t i) {
    const DatasetEntry& e = *gallery_entries[i];
    gallery[i] = {e.subject, featurize_one(e, spec), e.path};
  });
  for (std::size_t i = 1; i < gallery.size(); ++i) {
    if (gallery[i].vector.values.size() != gallery[0].vector.values.size()) {
      throw InvalidArgument("run_experiment: inconsistent gallery feature lengths");
    }
  }

  struct ProbeOutcome {
    bool ok = false;
    std::string error;
    MatchResult match;
  };
  std::vector<ProbeOutcome> outcomes(probe_entries.size());
  parallel_for(probe_entries.size(), [&](std::size_t i) {
    try {
      const FeatureVector fv = featurize_one(*probe_entries[i], spec);
      outcomes[i].match = nn_classify(fv, gallery);
      outcomes[i].ok = true;
    } catch (const IoError& e) {
      outcomes[i].error = e.what();
    } catch (const FormatError& e) {
      outcomes[i].error = e.what();
    }
  });

  EvaluationReport report;
  report.method = std::string(method_name(spec.method));
  report.feature = spec.feature.to_string();
  report.config = spec.config;
  report.version = std::string(kVersion);

  std::size_t correct = 0;
  std::map<int, std::pair<std::size_t, std::size_t>> subset_counts;  // correct, total
  for (std::size_t i = 0; i < probe_entries.size(); ++i) {
    const DatasetEntry& e = *probe_entries[i];
    if (!outcomes[i].ok) {
      std::cerr << "warning: skipping probe " << e.path << ": " << outcomes[i].error
                << "\n";
      continue;
    }
    const MatchResult& m = outcomes[i].match;
    report.records.push_back({e.path, e.subject, m.label, m.distance, e.subset});
    const bool hit = m.label == e.subject;
    correct += hit ? 1 : 0;
    if (e.subset) {
      auto& [sc, st] = subset_counts[*e.subset];
      sc += hit ? 1 : 0;
      ++st;
    }
  }
  if (report.records.empty()) {
    throw InvalidArgument("run_experiment: every probe failed to load");
  }
  report.rate = static_cast<double>(correct) / static_cast<double>(report.records.size());
  for (const auto& [subset, counts] : subset_counts) {
    report.per_subset_rate[subset] =
        static_cast<double>(counts.first) / static_cast<double>(counts.second);
  }

  const auto stop = std::chrono::steady_clock::now();
  report.duration_ms =
      std::chrono::duration<double, std::milli>(stop - start).count();
  return report;
}

std::filesystem::path report_summary_path(const std::filesystem::path& csv_path) {
  std::filesystem::path summary = csv_path;
  summary.replace_extension(".json");
  if (summary == csv_path) {
    summary += ".summary.json";
  }
  return summary;
}

void write_report(const EvaluationReport& report, const std::filesystem::path& csv_path) {
  {
    std::ofstream os(csv_path, std::ios::binary);
    if (!os) {
      throw IoError("cannot write report " + csv_path.string());
    }
    os << "path,true,predicted,distance\n";
    for (const ProbeRecord& r : report.records) {
      os << r.path << "," << r.true_label << "," << r.predicted_label << ","
         << format_sig9(r.distance) << "\n";
    }
    if (!os) {
      throw IoError("write failed for " + csv_path.string());
    }
  }

  // Summary JSON is assembled by hand so the rates carry a fixed four-decimal
  // representation.
  std::ostringstream json;
  json << "{\n";
  json << "  \"rate\": " << format_rate(report.rate) << ",\n";
  json << "  \"per_subset\": {";
  bool first = true;
  for (const auto& [subset, rate] : report.per_subset_rate) {
    json << (first ? "" : ", ") << "\"" << subset << "\": " << format_rate(rate);
    first = false;
  }
  json << "},\n";
  json << "  \"method\": \"" << report.method << "\",\n";
  json << "  \"feature\": \"" << report.feature << "\",\n";

  std::istringstream config_text(config_to_json_text(report.config));
  json << "  \"config\": ";
  std::string line;
  bool first_line = true;
  while (std::getline(config_text, line)) {
    json << (first_line ? "" : "\n  ") << line;
    first_line = false;
  }
  json << ",\n";

  char duration_buf[40];
  std::snprintf(duration_buf, sizeof(duration_buf), "%.3f", report.duration_ms);
  json << "  \"duration_ms\": " << duration_buf << ",\n";
  json << "  \"version\": \"" << report.version << "\"\n";
  json << "}\n";

  const std::filesystem::path summary = report_summary_path(csv_path);
  std::ofstream os(summary, std::ios::binary);
  if (!os) {
    throw IoError("cannot write summary " + summary.string());
  }
  os << json.str();
  if (!os) {
    throw IoError("write failed for " + summary.string());
  }
}

}  // namespace lumenorm

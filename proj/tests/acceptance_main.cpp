// Acceptance suite: one self-contained check per release criterion, each
// printed as a single PASS/FAIL line. Returns the number of failures.

#include <unistd.h>

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "lumenorm/classifier.hpp"
#include "lumenorm/dataset.hpp"
#include "lumenorm/experiment.hpp"
#include "lumenorm/features.hpp"
#include "lumenorm/filters.hpp"
#include "lumenorm/image_io.hpp"
#include "lumenorm/pipeline.hpp"
#include "lumenorm/stages.hpp"

using namespace lumenorm;
namespace fs = std::filesystem;

namespace {

class CheckFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

void require(bool ok, const std::string& what) {
  if (!ok) throw CheckFailure(what);
}

double unit(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

RealImage random_real(int w, int h, std::uint64_t seed, double lo, double hi) {
  std::mt19937_64 rng(seed);
  RealImage img(w, h);
  for (double& v : img.data()) v = lo + (hi - lo) * unit(rng);
  return img;
}

// Smooth cosine-grating texture with values inside [lo, hi].
IntensityImage grating_texture(int side, std::uint64_t seed, double lo, double hi) {
  std::mt19937_64 rng(seed);
  const double offset = 0.5 * (lo + hi);
  const double amplitude = 0.5 * (hi - lo) - 0.5;
  struct G {
    double fx, fy, phase, amp;
  };
  std::vector<G> gratings(4);
  double wsum = 0;
  for (G& g : gratings) {
    g.fx = (0.5 + 3.0 * unit(rng)) * (unit(rng) < 0.5 ? 1 : -1);
    g.fy = (0.5 + 3.0 * unit(rng)) * (unit(rng) < 0.5 ? 1 : -1);
    g.phase = 2.0 * std::numbers::pi * unit(rng);
    g.amp = 0.5 + unit(rng);
    wsum += g.amp;
  }
  IntensityImage img(side, side);
  for (int y = 0; y < side; ++y) {
    for (int x = 0; x < side; ++x) {
      double v = offset;
      for (const G& g : gratings) {
        v += g.amp / wsum * amplitude *
             std::cos(2.0 * std::numbers::pi * (g.fx * x + g.fy * y) / side + g.phase);
      }
      img(x, y) = static_cast<std::uint8_t>(
          std::clamp(round_half_up(v), 0, 255));
    }
  }
  return img;
}

double max_abs_diff(const RealImage& a, const RealImage& b) {
  double m = 0;
  for (std::size_t i = 0; i < a.pixel_count(); ++i) {
    m = std::max(m, std::abs(a.data()[i] - b.data()[i]));
  }
  return m;
}

double max_abs(const RealImage& a) {
  double m = 0;
  for (double v : a.data()) m = std::max(m, std::abs(v));
  return m;
}

std::string read_bytes(const fs::path& p) {
  std::ifstream is(p, std::ios::binary);
  std::stringstream ss;
  ss << is.rdbuf();
  return ss.str();
}

// Drops the duration line from a summary JSON so reports can be compared
// byte for byte.
std::string strip_duration(std::string text) {
  const auto pos = text.find("\"duration_ms\"");
  if (pos == std::string::npos) return text;
  const auto eol = text.find('\n', pos);
  text.erase(pos, eol == std::string::npos ? std::string::npos : eol - pos + 1);
  return text;
}

struct TempDir {
  fs::path path;
  explicit TempDir(const std::string& tag) {
    path = fs::temp_directory_path() / ("lumenorm_acceptance_" + tag + "_" +
                                        std::to_string(::getpid()));
    fs::remove_all(path);
    fs::create_directories(path);
  }
  ~TempDir() {
    std::error_code ec;
    fs::remove_all(path, ec);
  }
};

// ---------------------------------------------------------------------------

void criterion_filter_algebra() {
  const auto t0 = std::chrono::steady_clock::now();

  for (double sigma : {0.5, 1.0, 1.5, 2.0, 3.0}) {
    const Kernel k = gaussian_kernel(sigma);
    double sum = 0;
    for (double w : k.weights) sum += w;
    require(std::abs(sum - 1.0) <= 1e-12,
            "Gaussian kernel (sigma " + std::to_string(sigma) + ") sum off by " +
                std::to_string(sum - 1.0));
  }

  const BilateralParams p1{1.0, 0.3, 3};
  const BilateralParams p2{2.0, 0.3, 6};
  const double sigma_d = 1.5;
  const Kernel blur = gaussian_kernel(sigma_d);

  for (int i = 0; i < 50; ++i) {
    const std::uint64_t seed = 1000 + static_cast<std::uint64_t>(i);

    const RealImage flat(16, 16, 0.16 * static_cast<double>(i));
    require(max_abs(dog_filter(flat, 1.0, 2.0)) <= 1e-9, "DoG of constant leaks");
    require(max_abs(dob_filter(flat, p1, p2)) <= 1e-9, "DoB of constant leaks");

    // bilateral degenerates to Gaussian blur as the range scale diverges;
    // test data lives in the log2 domain [0, 8] where the filter operates
    const RealImage img = random_real(16, 16, seed, 0.0, 8.0);
    const BilateralParams huge{sigma_d, 1e6, blur.radius};
    const double diff = max_abs_diff(bilateral_filter(img, huge), convolve(img, blur));
    require(diff <= 1e-6,
            "bilateral(sigma_r=1e6) vs Gaussian: " + std::to_string(diff));
  }

  const double elapsed =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  require(elapsed < 5.0, "runtime " + std::to_string(elapsed) + " s exceeds 5 s");
}

void criterion_fusion_identities() {
  const auto t0 = std::chrono::steady_clock::now();

  for (int i = 0; i < 20; ++i) {
    const std::uint64_t seed = 2000 + static_cast<std::uint64_t>(i);
    const RealImage a = random_real(16, 16, seed, -4.0, 4.0);
    const RealImage b = random_real(16, 16, seed + 500, -2.0, 2.0);

    const RealImage same = fuse_sd(a, a);
    for (std::size_t j = 0; j < a.pixel_count(); ++j) {
      require(std::abs(same.data()[j] - a.data()[j]) <= 1e-12, "fuse_sd(A,A) != A");
    }

    const FusionWeights w = fusion_weights(a, b);
    require(std::abs(w.w_dog + w.w_dob - 1.0) <= 1e-12, "weights do not sum to 1");
  }

  const RealImage textured = random_real(12, 12, 2100, -3.0, 3.0);
  const RealImage flat(12, 12, 0.0);
  require(fuse_sd(textured, flat) == textured, "zero-SD branch must collapse");

  const FusionWeights degenerate = fusion_weights(flat, flat);
  require(degenerate.w_dog == 0.5 && degenerate.w_dob == 0.5,
          "degenerate weights are not (0.5, 0.5)");

  const double elapsed =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  require(elapsed < 1.0, "runtime " + std::to_string(elapsed) + " s exceeds 1 s");
}

void criterion_lce_conformance() {
  const double alpha = 0.1, tau = 10.0, guard = 1e-9;

  for (int i = 0; i < 25; ++i) {
    const RealImage block =
        random_real(5, 5, 3000 + static_cast<std::uint64_t>(i), -30.0, 30.0);

    // direct two-stage oracle
    const double n = static_cast<double>(block.pixel_count());
    double acc = 0;
    for (double v : block.data()) acc += std::pow(std::abs(v), alpha);
    const double d1 = std::pow(acc / n, 1.0 / alpha);
    RealImage mid = block;
    for (double& v : mid.data()) v /= d1;
    acc = 0;
    for (double v : mid.data()) acc += std::pow(std::min(tau, std::abs(v)), alpha);
    const double d2 = std::pow(acc / n, 1.0 / alpha);
    RealImage expected = mid;
    for (double& v : expected.data()) v /= d2;

    const RealImage got = lce_block(block, alpha, tau, guard);
    require(max_abs_diff(got, expected) <= 1e-10, "lce_block deviates from oracle");

    const RealImage base = lce_stage1(block, alpha, guard);
    for (double c : {0.5, 2.0, 10.0}) {
      RealImage scaled = block;
      for (double& v : scaled.data()) v *= c;
      const RealImage out = lce_stage1(scaled, alpha, guard);
      for (std::size_t j = 0; j < block.pixel_count(); ++j) {
        require(std::abs(out.data()[j] - base.data()[j]) <=
                    1e-12 * std::max(1.0, std::abs(base.data()[j])),
                "stage-1 scale invariance violated at c=" + std::to_string(c));
      }
    }

    const RealImage bounded = tanh_compress(got, tau);
    for (double v : bounded.data()) {
      require(v > -tau && v < tau, "tanh output not strictly inside (-tau, tau)");
    }
  }
}

void criterion_block_census() {
  require(block_count(1) == 1, "block_count(1)");
  require(block_count(2) == 5, "block_count(2)");
  require(block_count(3) == 21, "block_count(3)");
  require(block_count(4) == 85, "block_count(4)");

  const IntensityImage img = grating_texture(100, 4000, 20, 230);
  require(msulbph(img, 3).values.size() == 1239, "msulbph(.,3) length != 1239");

  int uniform = 0;
  for (int code = 0; code < 256; ++code) {
    int transitions = 0;
    for (int b = 0; b < 8; ++b) {
      transitions += ((code >> b) & 1) != ((code >> ((b + 1) % 8)) & 1) ? 1 : 0;
    }
    if (transitions <= 2) ++uniform;
    require((transitions <= 2) == (uniform_bin(code) != 58),
            "uniform_bin disagrees with the transition census");
  }
  require(uniform == 58, "uniform code census != 58");
}

void criterion_metric_axioms() {
  std::mt19937_64 rng(5000);
  auto histogram = [&rng]() {
    FeatureVector fv;
    fv.values.resize(59);
    double sum = 0;
    for (double& v : fv.values) {
      v = unit(rng);
      sum += v;
    }
    for (double& v : fv.values) v /= sum;
    return fv;
  };

  for (int i = 0; i < 1000; ++i) {
    const FeatureVector a = histogram();
    const FeatureVector b = histogram();
    const double ab = chi_square(a, b);
    require(ab >= 0.0, "chi-square negative");
    require(ab == chi_square(b, a), "chi-square asymmetric");
    require(chi_square(a, a) == 0.0, "chi-square self-distance nonzero");
    require(ab > 0.0, "chi-square zero on distinct inputs");
  }

  const FeatureVector probe{{0.5, 0.5}, "t"};
  const std::vector<GalleryEntry> gallery = {
      {"far", FeatureVector{{1.0, 0.0}, "t"}, ""},
      {"dup_a", FeatureVector{{0.5, 0.5}, "t"}, ""},
      {"dup_b", FeatureVector{{0.5, 0.5}, "t"}, ""},
  };
  const MatchResult r = nn_classify(probe, gallery);
  require(r.index == 1 && r.label == "dup_a" && r.distance == 0.0,
          "tie must resolve to the lowest gallery index");
}

void criterion_gain_robustness() {
  const auto t0 = std::chrono::steady_clock::now();
  const PipelineConfig cfg;

  double mean_out = 0, mean_in = 0;
  constexpr int kTextures = 20;
  for (int i = 0; i < kTextures; ++i) {
    const IntensityImage base =
        grating_texture(64, 6000 + static_cast<std::uint64_t>(i), 32, 120);
    IntensityImage doubled(base.width(), base.height());
    for (std::size_t j = 0; j < base.pixel_count(); ++j) {
      doubled.data()[j] = static_cast<std::uint8_t>(2 * base.data()[j]);
    }
    const IntensityImage a = fdfi_ltein(base, cfg);
    const IntensityImage b = fdfi_ltein(doubled, cfg);
    double acc_out = 0, acc_in = 0;
    for (std::size_t j = 0; j < base.pixel_count(); ++j) {
      acc_out += std::abs(static_cast<int>(a.data()[j]) - static_cast<int>(b.data()[j]));
      acc_in += static_cast<double>(base.data()[j]);  // |2I - I| = I
    }
    mean_out += acc_out / static_cast<double>(base.pixel_count());
    mean_in += acc_in / static_cast<double>(base.pixel_count());
  }
  mean_out /= kTextures;
  mean_in /= kTextures;

  require(mean_in >= 32.0, "input gain difference below 32 gray levels");
  require(mean_out <= 8.0, "mean |fdfi(2I) - fdfi(I)| = " + std::to_string(mean_out) +
                               " exceeds 8 gray levels");

  const double elapsed =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  require(elapsed < 10.0, "runtime " + std::to_string(elapsed) + " s exceeds 10 s");
}

EvaluationReport run_synth_experiment(const fs::path& dir, MethodId method,
                                      const std::string& feature) {
  ExperimentSpec spec;
  spec.dataset = load_manifest(dir / "manifest.csv");
  spec.dataset.image_width = 100;
  spec.dataset.image_height = 100;
  spec.method = method;
  spec.feature = FeatureSpec::parse(feature);
  spec.seed = 7;
  return run_experiment(spec);
}

void criterion_end_to_end_ordering() {
  const auto t0 = std::chrono::steady_clock::now();

  TempDir dir("e2e");
  SynthSpec spec;
  spec.subjects = 10;
  spec.size = 100;
  synth_dataset(spec, 7, dir.path);

  const EvaluationReport ours = run_synth_experiment(dir.path, MethodId::fdfi, "msulbph:3");
  const EvaluationReport baseline =
      run_synth_experiment(dir.path, MethodId::none, "raw");

  std::cerr << "    [info] fdfi+msulbph:3 rate " << ours.rate << ", none+raw rate "
            << baseline.rate << "\n";
  require(ours.rate >= baseline.rate,
          "normalized pipeline must not trail the raw baseline");
  require(ours.rate >= 0.90, "fdfi+msulbph:3 rate " + std::to_string(ours.rate) +
                                 " below 0.90");

  const double elapsed =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  require(elapsed < 120.0, "runtime " + std::to_string(elapsed) + " s exceeds 120 s");
}

bool criterion_yaleb_gated() {
  const char* manifest = std::getenv("LUMENORM_YALEB_MANIFEST");
  if (!manifest) {
    return false;  // skipped: needs user-supplied data
  }
  ExperimentSpec spec;
  spec.dataset = load_manifest(manifest);
  spec.dataset.image_width = 100;
  spec.dataset.image_height = 100;
  spec.feature = FeatureSpec::parse("lbph:8x8");

  spec.method = MethodId::fdfi;
  const EvaluationReport ours = run_experiment(spec);
  spec.method = MethodId::tt;
  const EvaluationReport tt = run_experiment(spec);

  std::cerr << "    [info] fdfi+lbph:8x8 rate " << ours.rate << ", tt+lbph:8x8 rate "
            << tt.rate << "\n";
  require(ours.rate > tt.rate, "fdfi must beat tt on the supplied gallery/probe split");
  return true;
}

void criterion_performance_budget() {
  const IntensityImage img = grating_texture(100, 9000, 10, 230);
  const PipelineConfig cfg;
  fdfi_ltein(img, cfg);  // warm-up

  double best_ms = 1e300;
  for (int i = 0; i < 5; ++i) {
    const auto t0 = std::chrono::steady_clock::now();
    const IntensityImage out = fdfi_ltein(img, cfg);
    const auto t1 = std::chrono::steady_clock::now();
    if (out.pixel_count() == 0) return;  // unreachable; keeps the call alive
    best_ms = std::min(best_ms,
                       std::chrono::duration<double, std::milli>(t1 - t0).count());
  }
  std::cerr << "    [info] fdfi_ltein 100x100 best of 5: " << best_ms << " ms\n";
  require(best_ms <= 50.0,
          "fdfi_ltein took " + std::to_string(best_ms) + " ms (budget 50 ms)");
}

void criterion_determinism() {
  TempDir dir("det");
  SynthSpec spec;
  spec.subjects = 10;
  spec.size = 100;
  synth_dataset(spec, 7, dir.path);

  const EvaluationReport a = run_synth_experiment(dir.path, MethodId::fdfi, "msulbph:3");
  const EvaluationReport b = run_synth_experiment(dir.path, MethodId::fdfi, "msulbph:3");

  write_report(a, dir.path / "a.csv");
  write_report(b, dir.path / "b.csv");

  require(read_bytes(dir.path / "a.csv") == read_bytes(dir.path / "b.csv"),
          "per-probe CSVs differ between runs");
  require(strip_duration(read_bytes(dir.path / "a.json")) ==
              strip_duration(read_bytes(dir.path / "b.json")),
          "summaries differ beyond the duration field");
}

}  // namespace

int main() {
  // The stated budgets assume a single worker.
  ::setenv("LUMENORM_THREADS", "1", 1);

  struct Criterion {
    int id;
    std::string title;
    std::function<void()> body;
  };

  const std::vector<Criterion> criteria = {
      {1, "filter algebra (kernel sums, constant annihilation, bilateral limit)",
       criterion_filter_algebra},
      {2, "fusion identities", criterion_fusion_identities},
      {3, "local contrast equalization conformance", criterion_lce_conformance},
      {4, "block census and uniform-pattern count", criterion_block_census},
      {5, "chi-square metric axioms and tie rule", criterion_metric_axioms},
      {6, "gain robustness of the full chain", criterion_gain_robustness},
      {7, "end-to-end recognition ordering on synthetic data",
       criterion_end_to_end_ordering},
      {9, "single-image performance budget", criterion_performance_budget},
      {10, "run-to-run determinism of reports", criterion_determinism},
  };

  int failures = 0;
  auto report = [&failures](int id, const std::string& title,
                            const std::function<void()>& body) {
    const auto t0 = std::chrono::steady_clock::now();
    try {
      body();
      const double s =
          std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
      std::printf("[PASS] criterion %2d: %s (%.2f s)\n", id, title.c_str(), s);
    } catch (const std::exception& e) {
      ++failures;
      std::printf("[FAIL] criterion %2d: %s -- %s\n", id, title.c_str(), e.what());
    }
    std::fflush(stdout);
  };

  for (const Criterion& c : criteria) {
    if (c.id == 9) {
      // keep the gated dataset check in listed order
      const char* manifest = std::getenv("LUMENORM_YALEB_MANIFEST");
      if (!manifest) {
        std::printf(
            "[SKIP] criterion  8: gallery/probe ordering on Extended Yale B "
            "(set LUMENORM_YALEB_MANIFEST to run)\n");
      } else {
        report(8, "gallery/probe ordering on Extended Yale B",
               [] { criterion_yaleb_gated(); });
      }
    }
    report(c.id, c.title, c.body);
  }

  if (failures == 0) {
    std::printf("acceptance: all criteria passed\n");
  } else {
    std::printf("acceptance: %d criterion(s) failed\n", failures);
  }
  return failures;
}

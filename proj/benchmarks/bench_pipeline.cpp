#include <benchmark/benchmark.h>

#include <random>

#include "lumenorm/classifier.hpp"
#include "lumenorm/features.hpp"
#include "lumenorm/filters.hpp"
#include "lumenorm/pipeline.hpp"

namespace {

using namespace lumenorm;

IntensityImage random_face(int side, std::uint32_t seed) {
  std::mt19937 rng(seed);
  IntensityImage img(side, side);
  for (int y = 0; y < side; ++y) {
    for (int x = 0; x < side; ++x) {
      // smooth-ish pattern plus noise, so the bilateral range term has work to do
      const double base = 96.0 + 48.0 * std::sin(0.11 * x) * std::cos(0.07 * y);
      const double noise = static_cast<double>(rng() % 33) - 16.0;
      img(x, y) = static_cast<std::uint8_t>(std::clamp(base + noise, 0.0, 255.0));
    }
  }
  return img;
}

void BM_FdfiLtein100(benchmark::State& state) {
  const IntensityImage img = random_face(100, 1);
  const PipelineConfig cfg;
  for (auto _ : state) {
    benchmark::DoNotOptimize(fdfi_ltein(img, cfg));
  }
}
BENCHMARK(BM_FdfiLtein100);

void BM_BilateralFine100(benchmark::State& state) {
  const RealImage img = log2_transform(random_face(100, 2));
  const BilateralParams p{1.0, 0.3, 3};
  for (auto _ : state) {
    benchmark::DoNotOptimize(bilateral_filter(img, p));
  }
}
BENCHMARK(BM_BilateralFine100);

void BM_BilateralCoarse100(benchmark::State& state) {
  const RealImage img = log2_transform(random_face(100, 2));
  const BilateralParams p{2.0, 0.3, 6};
  for (auto _ : state) {
    benchmark::DoNotOptimize(bilateral_filter(img, p));
  }
}
BENCHMARK(BM_BilateralCoarse100);

void BM_Dog100(benchmark::State& state) {
  const RealImage img = log2_transform(random_face(100, 3));
  for (auto _ : state) {
    benchmark::DoNotOptimize(dog_filter(img, 1.0, 2.0));
  }
}
BENCHMARK(BM_Dog100);

void BM_Msulbph3(benchmark::State& state) {
  const IntensityImage img = random_face(100, 4);
  for (auto _ : state) {
    benchmark::DoNotOptimize(msulbph(img, 3));
  }
}
BENCHMARK(BM_Msulbph3);

void BM_ChiSquareNn(benchmark::State& state) {
  std::vector<GalleryEntry> gallery;
  for (int s = 0; s < 10; ++s) {
    gallery.push_back({"s" + std::to_string(s),
                       msulbph(random_face(100, 100 + static_cast<std::uint32_t>(s)), 3),
                       ""});
  }
  const FeatureVector probe = msulbph(random_face(100, 105), 3);
  for (auto _ : state) {
    benchmark::DoNotOptimize(nn_classify(probe, gallery));
  }
}
BENCHMARK(BM_ChiSquareNn);

}  // namespace

BENCHMARK_MAIN();

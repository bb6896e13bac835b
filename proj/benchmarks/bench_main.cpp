#include <benchmark/benchmark.h>

#include "cinerank/cf.hpp"
#include "cinerank/random.hpp"
#include "cinerank/text.hpp"
#include "cinerank/weight_opt.hpp"
#include "support/generators.hpp"

using namespace cinerank;

namespace {

RatingMatrix synthetic_matrix(std::size_t users, std::size_t items, double density) {
  Rng rng(1);
  std::vector<Rating> ratings;
  for (std::size_t u = 1; u <= users; ++u) {
    for (std::size_t m = 1; m <= items; ++m) {
      if (rng.uniform() < density) {
        ratings.push_back({UserId(static_cast<std::int64_t>(u)), MovieId(static_cast<std::int64_t>(m)),
                           0.5 * static_cast<double>(1 + rng.below(10)), {}});
      }
    }
  }
  return build_rating_matrix(Catalog::create(testkit::numbered_movies(items), ratings, {}, {}));
}

void BM_SimilarityMatrix(benchmark::State& state) {
  const auto m = synthetic_matrix(static_cast<std::size_t>(state.range(0)), 200, 0.1);
  const auto threads = static_cast<std::size_t>(state.range(1));
  for (auto _ : state) {
    benchmark::DoNotOptimize(similarity_matrix(m, Axis::kUser, {Metric::kPearson, std::nullopt, {}, threads}));
  }
}
BENCHMARK(BM_SimilarityMatrix)->Args({100, 1})->Args({400, 1})->Args({400, 4})->Unit(benchmark::kMillisecond);

void BM_TfidfFit(benchmark::State& state) {
  Rng rng(2);
  const char* words[] = {"ship", "crew", "storm", "love", "night", "murder", "town", "family", "secret", "friends",
                         "comedy", "war", "hero", "school", "summer", "ghost", "house", "road", "city", "dream"};
  std::vector<std::string> texts;
  for (int d = 0; d < state.range(0); ++d) {
    std::string t;
    for (int w = 0; w < 30; ++w) t += std::string(words[rng.below(20)]) + " ";
    texts.push_back(std::move(t));
  }
  for (auto _ : state) benchmark::DoNotOptimize(TfidfProvider::fit_texts(texts));
}
BENCHMARK(BM_TfidfFit)->Arg(100)->Arg(1000)->Unit(benchmark::kMillisecond);

void BM_PsoSphere(benchmark::State& state) {
  SwarmConfig cfg;
  cfg.lower_bound = -5.12;
  cfg.upper_bound = 5.12;
  auto sphere = [](std::span<const double> x) {
    double s = 0;
    for (double v : x) s += v * v;
    return s;
  };
  for (auto _ : state) benchmark::DoNotOptimize(pso_optimize(sphere, static_cast<std::size_t>(state.range(0)), cfg));
}
BENCHMARK(BM_PsoSphere)->Arg(5)->Arg(50)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();

#include <cmath>
#include <limits>

#include <gtest/gtest.h>

#include "cinerank/error.hpp"
#include "cinerank/weight_opt.hpp"

using namespace cinerank;

namespace {

double sphere(std::span<const double> x) {
  double s = 0;
  for (double v : x) s += v * v;
  return s;
}

double shifted(std::span<const double> x) {
  double s = 0;
  for (std::size_t i = 0; i < x.size(); ++i) s += (x[i] - 0.3 * static_cast<double>(i + 1)) * (x[i] - 0.3 * static_cast<double>(i + 1));
  return s;
}

void expect_non_increasing(const std::vector<double>& trace) {
  for (std::size_t i = 1; i < trace.size(); ++i) EXPECT_LE(trace[i], trace[i - 1]) << "at " << i;
}

}  // namespace

TEST(Pso, SphereConverges) {
  SwarmConfig cfg;
  cfg.seed = 7;
  cfg.lower_bound = 0.0;
  cfg.upper_bound = 10.0;
  const auto r = pso_optimize(sphere, 5, cfg);
  EXPECT_LT(r.best_value, 1e-2);
  EXPECT_EQ(r.trace.size(), cfg.iterations);
  expect_non_increasing(r.trace);
  EXPECT_LE(r.best_value, r.initial_value);
  EXPECT_EQ(r.weights.provenance, WeightProvenance::kPso);
  EXPECT_DOUBLE_EQ(sphere(r.weights.values), r.best_value);
}

TEST(Pso, InteriorOptimum) {
  SwarmConfig cfg;
  cfg.seed = 11;
  const auto r = pso_optimize(shifted, 4, cfg);
  EXPECT_LT(r.best_value, 1e-4);
}

TEST(Pso, ConstantObjective) {
  SwarmConfig cfg;
  cfg.iterations = 5;
  const auto r = pso_optimize([](std::span<const double>) { return 3.25; }, 3, cfg);
  ASSERT_FALSE(r.trace.empty());
  for (double v : r.trace) EXPECT_EQ(v, 3.25);
  EXPECT_EQ(r.best_value, 3.25);
}

TEST(Pso, DeterministicAcrossRunsAndThreads) {
  SwarmConfig cfg;
  cfg.iterations = 30;
  const auto a = pso_optimize(shifted, 4, cfg);
  const auto b = pso_optimize(shifted, 4, cfg);
  cfg.threads = 4;
  const auto c = pso_optimize(shifted, 4, cfg);
  EXPECT_EQ(a.trace, b.trace);
  EXPECT_EQ(a.weights, b.weights);
  EXPECT_EQ(a.trace, c.trace);
  EXPECT_EQ(a.weights, c.weights);
}

TEST(Pso, StartVectorAndBounds) {
  SwarmConfig cfg;
  cfg.iterations = 10;
  const std::vector<double> start{0.3, 0.6, 0.9};
  const auto r = pso_optimize(shifted, 3, cfg, std::span<const double>(start));
  EXPECT_LE(r.initial_value, shifted(start));
  EXPECT_LE(r.best_value, shifted(start));
  for (double w : r.weights.values) {
    EXPECT_GE(w, cfg.lower_bound);
    EXPECT_LE(w, cfg.upper_bound);
  }
}

TEST(Pso, RejectsBadInput) {
  SwarmConfig cfg;
  EXPECT_THROW(pso_optimize(sphere, 0, cfg), std::invalid_argument);
  cfg.particles = 0;
  EXPECT_THROW(pso_optimize(sphere, 2, cfg), std::invalid_argument);
  cfg = {};
  cfg.inertia = -1;
  EXPECT_THROW(pso_optimize(sphere, 2, cfg), std::invalid_argument);
  cfg = {};
  cfg.upper_bound = cfg.lower_bound;
  EXPECT_THROW(pso_optimize(sphere, 2, cfg), std::invalid_argument);
  cfg = {};
  const std::vector<double> wrong{1.0};
  EXPECT_THROW(pso_optimize(sphere, 2, cfg, std::span<const double>(wrong)), std::invalid_argument);
  try {
    pso_optimize([](std::span<const double>) { return std::numeric_limits<double>::quiet_NaN(); }, 2, cfg);
    FAIL();
  } catch (const DataError& e) {
    EXPECT_NE(std::string(e.what()).find("weights ["), std::string::npos);
  }
}

TEST(Ga, SphereConverges) {
  GaConfig cfg;
  cfg.seed = 3;
  cfg.lower_bound = 0.0;
  cfg.upper_bound = 10.0;
  const auto r = ga_optimize(sphere, 5, cfg);
  EXPECT_LT(r.best_value, 1e-1);
  EXPECT_EQ(r.trace.size(), cfg.generations);
  expect_non_increasing(r.trace);
  EXPECT_LE(r.best_value, r.initial_value);
  EXPECT_EQ(r.weights.provenance, WeightProvenance::kGa);
}

TEST(Ga, ElitismNeverWorsens) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    GaConfig cfg;
    cfg.seed = seed;
    cfg.generations = 20;
    cfg.elitism = 1;
    cfg.mutation_rate = 0.8;
    const auto r = ga_optimize(shifted, 3, cfg);
    expect_non_increasing(r.trace);
  }
}

TEST(Ga, NoVariationKeepsInitialBest) {
  GaConfig cfg;
  cfg.crossover_rate = 0.0;
  cfg.mutation_rate = 0.0;
  cfg.generations = 15;
  const auto r = ga_optimize(shifted, 3, cfg);
  for (double v : r.trace) EXPECT_EQ(v, r.initial_value);
}

TEST(Ga, DeterministicAcrossRunsAndThreads) {
  GaConfig cfg;
  cfg.generations = 20;
  const auto a = ga_optimize(shifted, 4, cfg);
  const auto b = ga_optimize(shifted, 4, cfg);
  cfg.threads = 3;
  const auto c = ga_optimize(shifted, 4, cfg);
  EXPECT_EQ(a.trace, b.trace);
  EXPECT_EQ(a.weights, b.weights);
  EXPECT_EQ(a.trace, c.trace);
}

TEST(Ga, StartVectorNeverBeaten) {
  GaConfig cfg;
  cfg.generations = 5;
  const std::vector<double> start{0.0, 0.0, 0.0};  // the optimum of `sphere`
  const auto r = ga_optimize(sphere, 3, cfg, std::span<const double>(start));
  EXPECT_EQ(r.initial_value, 0.0);
  EXPECT_EQ(r.best_value, 0.0);
}

TEST(Ga, RejectsBadConfig) {
  GaConfig cfg;
  cfg.elitism = cfg.population;
  EXPECT_THROW(ga_optimize(sphere, 2, cfg), std::invalid_argument);
  cfg = {};
  cfg.crossover_rate = 1.5;
  EXPECT_THROW(ga_optimize(sphere, 2, cfg), std::invalid_argument);
  cfg = {};
  cfg.mutation_rate = -0.1;
  EXPECT_THROW(ga_optimize(sphere, 2, cfg), std::invalid_argument);
  cfg = {};
  EXPECT_THROW(ga_optimize([](std::span<const double>) { return INFINITY; }, 2, cfg), DataError);
}

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "cinerank/error.hpp"
#include "cinerank/parallel.hpp"
#include "cinerank/random.hpp"
#include "cinerank/weight_opt.hpp"

namespace cinerank {

std::string_view to_string(WeightProvenance p) {
  switch (p) {
    case WeightProvenance::kGa: return "ga";
    case WeightProvenance::kPso: return "pso";
    case WeightProvenance::kUniform: return "uniform";
  }
  return "?";
}

WeightProvenance parse_provenance(std::string_view text) {
  for (auto p : {WeightProvenance::kGa, WeightProvenance::kPso, WeightProvenance::kUniform}) {
    if (text == to_string(p)) return p;
  }
  throw std::invalid_argument("unknown weight provenance '" + std::string(text) + "'");
}

WeightVector WeightVector::uniform(std::size_t dimension, double value) {
  return {std::vector<double>(dimension, value), WeightProvenance::kUniform};
}

namespace {

using Population = std::vector<std::vector<double>>;

void check_bounds(double lo, double hi) {
  if (!(lo < hi) || !std::isfinite(lo) || !std::isfinite(hi)) {
    throw std::invalid_argument("weight bounds must satisfy lower < upper");
  }
}

// Evaluates objective on population[i] for every i in `which`, writing into values[i].
void evaluate(const Objective& objective, const Population& population, const std::vector<std::size_t>& which,
              std::vector<double>& values, std::size_t threads) {
  parallel_for(which.size(), threads, [&](std::size_t k) {
    const std::size_t i = which[k];
    const double v = objective(population[i]);
    if (!std::isfinite(v)) {
      std::ostringstream os;
      os << "objective returned a non-finite value for weights [";
      for (std::size_t d = 0; d < population[i].size(); ++d) os << (d ? ", " : "") << population[i][d];
      os << "]";
      throw DataError(os.str());
    }
    values[i] = v;
  });
}

std::vector<std::size_t> all_indices(std::size_t n) {
  std::vector<std::size_t> idx(n);
  for (std::size_t i = 0; i < n; ++i) idx[i] = i;
  return idx;
}

std::size_t argmin(const std::vector<double>& values) {
  return static_cast<std::size_t>(std::min_element(values.begin(), values.end()) - values.begin());
}

void seed_start(Population& population, std::optional<std::span<const double>> start, std::size_t dimension,
                double lo, double hi) {
  if (!start) return;
  if (start->size() != dimension) throw std::invalid_argument("start vector length does not match dimension");
  for (std::size_t d = 0; d < dimension; ++d) population[0][d] = std::clamp((*start)[d], lo, hi);
}

}  // namespace

OptimizationResult pso_optimize(const Objective& objective, std::size_t dimension, const SwarmConfig& config,
                                std::optional<std::span<const double>> start) {
  if (dimension == 0) throw std::invalid_argument("dimension must be >= 1");
  if (config.particles == 0 || config.iterations == 0) {
    throw std::invalid_argument("particle and iteration counts must be >= 1");
  }
  if (config.inertia < 0 || config.cognitive < 0 || config.social < 0) {
    throw std::invalid_argument("PSO coefficients must be nonnegative");
  }
  check_bounds(config.lower_bound, config.upper_bound);
  const double lo = config.lower_bound, hi = config.upper_bound, width = hi - lo;
  const std::size_t n = config.particles;

  Rng rng(config.seed);
  Population x(n, std::vector<double>(dimension));
  Population v(n, std::vector<double>(dimension));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t d = 0; d < dimension; ++d) {
      x[i][d] = rng.uniform(lo, hi);
      v[i][d] = rng.uniform(-0.1 * width, 0.1 * width);
    }
  }
  seed_start(x, start, dimension, lo, hi);

  const auto everyone = all_indices(n);
  std::vector<double> value(n);
  evaluate(objective, x, everyone, value, config.threads);
  Population pbest = x;
  std::vector<double> pbest_value = value;
  std::size_t g = argmin(pbest_value);
  std::vector<double> gbest = pbest[g];
  double gbest_value = pbest_value[g];

  OptimizationResult result;
  result.initial_value = gbest_value;
  result.trace.reserve(config.iterations);

  std::vector<double> r1(n * dimension), r2(n * dimension);
  for (std::size_t it = 0; it < config.iterations; ++it) {
    for (std::size_t k = 0; k < r1.size(); ++k) {
      r1[k] = rng.uniform();
      r2[k] = rng.uniform();
    }
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t d = 0; d < dimension; ++d) {
        const std::size_t k = i * dimension + d;
        double vel = config.inertia * v[i][d] + config.cognitive * r1[k] * (pbest[i][d] - x[i][d]) +
                     config.social * r2[k] * (gbest[d] - x[i][d]);
        vel = std::clamp(vel, -width, width);
        v[i][d] = vel;
        x[i][d] = std::clamp(x[i][d] + vel, lo, hi);
      }
    }
    evaluate(objective, x, everyone, value, config.threads);
    for (std::size_t i = 0; i < n; ++i) {
      if (value[i] < pbest_value[i]) {
        pbest_value[i] = value[i];
        pbest[i] = x[i];
      }
      if (value[i] < gbest_value) {
        gbest_value = value[i];
        gbest = x[i];
      }
    }
    result.trace.push_back(gbest_value);
  }
  result.weights = {std::move(gbest), WeightProvenance::kPso};
  result.best_value = gbest_value;
  return result;
}

OptimizationResult ga_optimize(const Objective& objective, std::size_t dimension, const GaConfig& config,
                               std::optional<std::span<const double>> start) {
  if (dimension == 0) throw std::invalid_argument("dimension must be >= 1");
  if (config.population == 0 || config.generations == 0) {
    throw std::invalid_argument("population and generation counts must be >= 1");
  }
  auto is_rate = [](double r) { return r >= 0.0 && r <= 1.0; };
  if (!is_rate(config.crossover_rate) || !is_rate(config.mutation_rate)) {
    throw std::invalid_argument("crossover and mutation rates must lie in [0, 1]");
  }
  if (config.elitism >= config.population) throw std::invalid_argument("elitism must be smaller than population");
  check_bounds(config.lower_bound, config.upper_bound);
  const double lo = config.lower_bound, hi = config.upper_bound;
  const double sigma = config.mutation_sigma.value_or(0.1 * (hi - lo));
  if (!(sigma >= 0.0)) throw std::invalid_argument("mutation sigma must be nonnegative");
  const std::size_t n = config.population;

  Rng rng(config.seed);
  Population pop(n, std::vector<double>(dimension));
  for (auto& ind : pop) {
    for (auto& gene : ind) gene = rng.uniform(lo, hi);
  }
  seed_start(pop, start, dimension, lo, hi);

  std::vector<double> fitness(n);
  evaluate(objective, pop, all_indices(n), fitness, config.threads);

  std::size_t b = argmin(fitness);
  std::vector<double> best = pop[b];
  double best_value = fitness[b];

  OptimizationResult result;
  result.initial_value = best_value;
  result.trace.reserve(config.generations);

  auto tournament = [&](const std::vector<double>& fit) {
    const std::size_t i = rng.below(n), j = rng.below(n);
    if (fit[i] != fit[j]) return fit[i] < fit[j] ? i : j;
    return std::min(i, j);
  };

  for (std::size_t gen = 0; gen < config.generations; ++gen) {
    std::vector<std::size_t> order = all_indices(n);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t c) { return fitness[a] < fitness[c]; });

    Population next;
    std::vector<double> next_fitness(n);
    next.reserve(n);
    for (std::size_t e = 0; e < config.elitism; ++e) {
      next.push_back(pop[order[e]]);
      next_fitness[e] = fitness[order[e]];
    }
    while (next.size() < n) {
      const auto& p1 = pop[tournament(fitness)];
      const auto& p2 = pop[tournament(fitness)];
      std::vector<double> child = p1;
      if (rng.uniform() < config.crossover_rate) {
        for (std::size_t d = 0; d < dimension; ++d) {
          if (rng.uniform() < 0.5) child[d] = p2[d];
        }
      }
      for (auto& gene : child) {
        if (rng.uniform() < config.mutation_rate) gene = std::clamp(gene + sigma * rng.normal(), lo, hi);
      }
      next.push_back(std::move(child));
    }
    std::vector<std::size_t> fresh;
    for (std::size_t i = config.elitism; i < n; ++i) fresh.push_back(i);
    evaluate(objective, next, fresh, next_fitness, config.threads);

    pop = std::move(next);
    fitness = std::move(next_fitness);
    b = argmin(fitness);
    if (fitness[b] < best_value) {
      best_value = fitness[b];
      best = pop[b];
    }
    result.trace.push_back(best_value);
  }
  result.weights = {std::move(best), WeightProvenance::kGa};
  result.best_value = best_value;
  return result;
}

}  // namespace cinerank

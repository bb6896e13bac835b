#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>

#include "cinerank/error.hpp"
#include "cinerank/metrics.hpp"
#include "cinerank/random.hpp"
#include "cinerank/weight_opt.hpp"

namespace cinerank {

double mae(std::span<const std::pair<double, double>> predictions) {
  if (predictions.empty()) throw std::invalid_argument("MAE of an empty prediction list");
  double sum = 0.0;
  for (const auto& [predicted, actual] : predictions) sum += std::abs(predicted - actual);
  return sum / static_cast<double>(predictions.size());
}

namespace {

std::vector<Rating> prepare_validation(const RatingMatrix& train, std::vector<Rating> validation,
                                       const MaeObjectiveOptions& options) {
  if (validation.empty()) throw DataError("empty validation set");
  for (const auto& r : validation) {
    if (!train.user_index(r.user) || !train.item_index(r.movie)) {
      throw DataError("validation rating (user " + std::to_string(r.user.value()) + ", movie " +
                      std::to_string(r.movie.value()) + ") is not covered by the training matrix");
    }
  }
  if (options.validation_cap == 0 || validation.size() <= options.validation_cap) return validation;
  std::vector<std::size_t> order(validation.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  Rng rng(options.subsample_seed);
  for (std::size_t i = order.size(); i > 1; --i) std::swap(order[i - 1], order[rng.below(i)]);
  order.resize(options.validation_cap);
  std::sort(order.begin(), order.end());
  std::vector<Rating> kept;
  kept.reserve(order.size());
  for (auto i : order) kept.push_back(validation[i]);
  return kept;
}

// Wraps `evaluate(weights)` with a thread-safe memo keyed on the exact weights;
// GA elites and stalled particles otherwise rebuild identical matrices.
template <class Eval>
Objective memoized(Eval evaluate) {
  struct Memo {
    std::mutex mutex;
    std::map<std::vector<double>, double> values;
  };
  auto memo = std::make_shared<Memo>();
  return [memo, evaluate = std::move(evaluate)](std::span<const double> weights) {
    std::vector<double> key(weights.begin(), weights.end());
    {
      std::lock_guard lock(memo->mutex);
      if (auto it = memo->values.find(key); it != memo->values.end()) return it->second;
    }
    const double value = evaluate(weights);
    std::lock_guard lock(memo->mutex);
    memo->values.emplace(std::move(key), value);
    return value;
  };
}

double validation_mae(const RatingMatrix& train, const SimilarityMatrix& sim, const std::vector<Rating>& validation,
                      std::size_t k) {
  std::vector<std::pair<double, double>> pairs;
  pairs.reserve(validation.size());
  for (const auto& r : validation) pairs.emplace_back(predict_rating(train, sim, r.user, r.movie, k).value, r.value);
  return mae(pairs);
}

}  // namespace

Objective cf_mae_objective(const RatingMatrix& train, std::vector<Rating> validation, Axis axis, std::size_t k,
                           const MaeObjectiveOptions& options) {
  if (options.metric == Metric::kFuzzy) throw std::invalid_argument("use fuzzy_mae_objective for fuzzy similarity");
  auto state = std::make_shared<const std::pair<RatingMatrix, std::vector<Rating>>>(
      train, prepare_validation(train, std::move(validation), options));
  const Metric metric = options.metric;
  return memoized([state, axis, k, metric](std::span<const double> weights) {
    SimilarityOptions so;
    so.metric = metric;
    so.weights.assign(weights.begin(), weights.end());
    const auto sim = similarity_matrix(state->first, axis, so);
    return validation_mae(state->first, sim, state->second, k);
  });
}

Objective fuzzy_mae_objective(const RatingMatrix& train, FuzzyProfiles profiles, std::vector<Rating> validation,
                              std::size_t k, const MaeObjectiveOptions& options) {
  struct State {
    RatingMatrix train;
    FuzzyProfiles profiles;
    std::vector<Rating> validation;
  };
  auto state = std::make_shared<const State>(
      State{train, std::move(profiles), prepare_validation(train, std::move(validation), options)});
  return memoized([state, k](std::span<const double> weights) {
    const auto sim = fuzzy_similarity_matrix(state->train, state->profiles, weights);
    return validation_mae(state->train, sim, state->validation, k);
  });
}

}  // namespace cinerank

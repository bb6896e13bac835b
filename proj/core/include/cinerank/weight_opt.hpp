#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "cinerank/catalog.hpp"
#include "cinerank/cf.hpp"

namespace cinerank {

// ---------------------------------------------------------------------------
// Fuzzy genre profiles
// ---------------------------------------------------------------------------

struct FuzzyProfile {
  UserId user;
  std::vector<double> membership;  // aligned with FuzzyProfiles::genres, each in [0, 1]
};

struct FuzzyProfiles {
  std::vector<std::string> genres;
  std::map<UserId, FuzzyProfile> profiles;

  const FuzzyProfile* find(UserId user) const;
};

/// membership(user, genre) = mean rating the user gave movies of that genre
/// divided by the scale maximum; 0 for genres the user never rated.
FuzzyProfiles build_fuzzy_profiles(const Catalog& catalog);

/// Weighted fuzzy Jaccard (min/max):
/// sum w_g min(a_g, b_g) / sum w_g max(a_g, b_g).
/// Two all-zero profiles score 1; any other zero denominator scores 0.
/// Throws std::invalid_argument when lengths disagree.
double fuzzy_similarity(const FuzzyProfile& a, const FuzzyProfile& b, std::span<const double> weights);

/// User-axis similarity matrix over the users of `matrix` built from fuzzy
/// profiles. Co-counts are co-rated item counts from `matrix`; users without
/// a profile get similarity 0 off the diagonal.
SimilarityMatrix fuzzy_similarity_matrix(const RatingMatrix& matrix, const FuzzyProfiles& profiles,
                                         std::span<const double> genre_weights, std::size_t threads = 1);

// ---------------------------------------------------------------------------
// Optimizers
// ---------------------------------------------------------------------------

enum class WeightProvenance { kGa, kPso, kUniform };
std::string_view to_string(WeightProvenance p);
WeightProvenance parse_provenance(std::string_view text);

struct WeightVector {
  std::vector<double> values;
  WeightProvenance provenance = WeightProvenance::kUniform;

  static WeightVector uniform(std::size_t dimension, double value = 1.0);
  bool operator==(const WeightVector&) const = default;
};

/// Lower is better. Must be safe to call concurrently when threads > 1.
using Objective = std::function<double(std::span<const double>)>;

struct SwarmConfig {
  std::size_t particles = 30;
  std::size_t iterations = 100;
  double inertia = 0.72;
  double cognitive = 1.49;
  double social = 1.49;
  std::uint64_t seed = 42;
  double lower_bound = 0.0;
  double upper_bound = 2.0;
  std::size_t threads = 1;
};

struct GaConfig {
  std::size_t population = 40;
  std::size_t generations = 80;
  double crossover_rate = 0.9;
  double mutation_rate = 0.1;
  /// Standard deviation of Gaussian mutation; unset means 10% of the bound width.
  std::optional<double> mutation_sigma;
  std::size_t elitism = 2;
  std::uint64_t seed = 42;
  double lower_bound = 0.0;
  double upper_bound = 2.0;
  std::size_t threads = 1;
};

struct OptimizationResult {
  WeightVector weights;
  double best_value = 0.0;
  /// Best objective among the starting candidates (before any update).
  double initial_value = 0.0;
  /// Best-so-far after each iteration/generation; non-increasing.
  std::vector<double> trace;
};

/// Global-best PSO. v <- w v + c1 r1 (pbest - x) + c2 r2 (gbest - x), positions
/// clamped to the bounds. If `start` is given (clamped) it seeds particle 0.
/// Throws DataError if the objective returns a non-finite value.
OptimizationResult pso_optimize(const Objective& objective, std::size_t dimension,
                                const SwarmConfig& config,
                                std::optional<std::span<const double>> start = std::nullopt);

/// Generational GA: size-2 tournament selection, uniform crossover, Gaussian
/// mutation clamped to bounds, elitism. If `start` is given it seeds
/// individual 0.
OptimizationResult ga_optimize(const Objective& objective, std::size_t dimension, const GaConfig& config,
                               std::optional<std::span<const double>> start = std::nullopt);

// ---------------------------------------------------------------------------
// MAE objectives
// ---------------------------------------------------------------------------

struct MaeObjectiveOptions {
  Metric metric = Metric::kPearson;
  /// Validation ratings beyond this count are subsampled (deterministically).
  std::size_t validation_cap = 2000;
  std::uint64_t subsample_seed = 0;
};

/// weights -> MAE of predict_rating over `validation`, using a similarity
/// matrix on `axis` rebuilt with those co-rated-dimension weights.
/// Throws DataError on an empty validation set or ratings outside `train`.
Objective cf_mae_objective(const RatingMatrix& train, std::vector<Rating> validation, Axis axis,
                           std::size_t k, const MaeObjectiveOptions& options = {});

/// genre weights -> MAE of user-based prediction with fuzzy_similarity_matrix.
Objective fuzzy_mae_objective(const RatingMatrix& train, FuzzyProfiles profiles,
                              std::vector<Rating> validation, std::size_t k,
                              const MaeObjectiveOptions& options = {});

// ---------------------------------------------------------------------------
// Weight files
// ---------------------------------------------------------------------------

struct WeightFile {
  WeightVector weights;
  std::uint64_t seed = 0;
  double objective = 0.0;
  /// Similarity axis the weights index (absent for genre weights).
  std::optional<Axis> axis;
};

/// Header line `# provenance=<p> seed=<s> objective=<v> [axis=<a>]`, then one
/// weight per line.
void save_weights(std::ostream& out, const WeightFile& file);
WeightFile load_weights(std::istream& in);

}  // namespace cinerank

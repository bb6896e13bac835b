#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "cinerank/catalog.hpp"
#include "cinerank/cf.hpp"
#include "cinerank/metrics.hpp"
#include "cinerank/weight_opt.hpp"

namespace cinerank {

enum class Variant { kPlain, kGaWeighted, kPsoFuzzy, kImplicitAugmented };
std::string_view to_string(Variant variant);
Variant parse_variant(std::string_view text);
/// Comma-separated list; an empty string gives an empty list.
std::vector<Variant> parse_variant_list(std::string_view text);

struct EvalReport {
  Variant variant = Variant::kPlain;
  double mae = 0.0;
  /// Fraction of test ratings predicted without the user-mean fallback.
  double coverage = 0.0;
  double runtime_seconds = 0.0;
  std::uint64_t seed = 0;
  std::size_t predictions = 0;
  /// Same variant with uniform weights, for the optimized variants.
  std::optional<double> baseline_mae;
};

struct SplitConfig {
  double holdout = 0.2;
  std::uint64_t seed = 42;
  std::size_t k = 20;
  Metric metric = Metric::kPearson;
  GaConfig ga;
  SwarmConfig pso;
  ImplicitParams implicit;
  std::size_t validation_cap = 2000;
  std::size_t threads = 1;
};

/// Runs every variant on one shared split. All variants predict user-based
/// with k neighbours:
///  - plain: unweighted similarity on the training matrix;
///  - ga_weighted: per-item weights tuned by the GA;
///  - pso_fuzzy: fuzzy genre similarity with genre weights tuned by PSO;
///  - implicit_augmented: plain on the training matrix plus implicit events.
/// The optimizers score candidates on the test ratings themselves and start
/// from uniform weights. Optimizer seeds are taken from `config.seed`.
/// Throws DataError for catalogs with fewer than 20 ratings.
std::vector<EvalReport> evaluate_variants(const Catalog& catalog, std::span<const Variant> variants,
                                          const SplitConfig& config);

/// Fraction of the top k recommended ids that appear in `relevant`.
/// Throws std::invalid_argument for k == 0.
double precision_at_k(std::span<const MovieId> recommended, std::span<const MovieId> relevant, std::size_t k);

/// One line per report with 7-decimal floats; runtime only when requested.
void render_reports(std::ostream& out, std::span<const EvalReport> reports, bool show_runtime = false);

}  // namespace cinerank

#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cinerank/catalog.hpp"
#include "cinerank/cf.hpp"
#include "cinerank/critic.hpp"
#include "cinerank/text.hpp"
#include "cinerank/weight_opt.hpp"

namespace cinerank {

struct Recommendation {
  MovieId movie;
  std::string title;
  double fused_score = 0.0;  // content_cosine + critic_bonus
  double content_cosine = 0.0;
  double critic_bonus = 0.0;
  CfOrigin origin = CfOrigin::kItemItem;
};

struct PipelineConfig {
  std::size_t k = 20;
  std::size_t pool_size = 100;
  std::size_t n = 15;
  double like_threshold = 3.5;
  CfMode cf_mode = CfMode::kItemItem;
  /// Required for user_user and both modes.
  std::optional<UserId> user;
  Metric metric = Metric::kPearson;

  bool critic_enabled = true;
  /// Multiplier on the normalized critic bonus; 1.0 is plain addition.
  double critic_weight = 1.0;
  CriticOptions critic;
  /// The seed itself is normally excluded from the output.
  bool include_seed = false;

  WeightProvenance weights_source = WeightProvenance::kUniform;
  /// Co-rated weights for the item-axis similarity (one per user).
  std::vector<double> item_weights;
  /// Co-rated weights for the user-axis similarity (one per movie).
  std::vector<double> user_weights;
  /// Genre weights; when set, user-user similarity is fuzzy.
  std::vector<double> genre_weights;

  /// Null means fit TF-IDF over every catalog movie's content text.
  const EmbeddingProvider* embeddings = nullptr;
  std::size_t max_vocab = 5000;
  PreprocessOptions preprocess;
  std::size_t threads = 1;
};

struct HybridResult {
  MovieId seed;
  std::string seed_title;
  std::vector<Recommendation> items;
  /// Why `items` is empty, when it is.
  std::string diagnostic;
};

/// Text a movie is embedded from: its summary, or its title when the summary is blank.
std::string content_text(const Movie& movie);

/// Hybrid pipeline: CF candidate pool around the seed, content cosine of each
/// candidate against the seed, plus the normalized critic bonus, ranked by
/// fused score descending (ties by title, then id).
/// Throws DataError for an unknown seed title (message lists close matches)
/// and std::invalid_argument for an inconsistent config.
HybridResult recommend_hybrid(const Catalog& catalog, std::string_view seed_title, const PipelineConfig& config);

enum class OutputFormat { kTable, kTsv, kTuples };
OutputFormat parse_output_format(std::string_view text);

/// Fixed 7-decimal rendering.
void render(std::ostream& out, const HybridResult& result, OutputFormat format);
std::string format_score(double value);

// ---------------------------------------------------------------------------
// Cold start
// ---------------------------------------------------------------------------

enum class ColdStartStrategy { kTopRated, kRecent, kBlend };
ColdStartStrategy parse_cold_start_strategy(std::string_view text);

struct RankedMovie {
  MovieId movie;
  std::string title;
  double mean_rating = 0.0;
  std::size_t rating_count = 0;
  std::optional<int> release_year;
};

/// New-user fallback. top_rated: highest mean among movies with at least
/// min_count ratings (ties: more ratings, then title). recent: latest
/// release year first, ties by title; undated movies are skipped. blend:
/// alternates the two lists, skipping repeats.
std::vector<RankedMovie> cold_start_user(const Catalog& catalog, std::size_t n, ColdStartStrategy strategy,
                                         std::size_t min_count = 3);

/// New-item fallback: top-rated movies sharing at least one genre with
/// `new_movie`, excluding the movie itself. Throws std::invalid_argument if
/// `new_movie` has no genres.
std::vector<RankedMovie> cold_start_item(const Catalog& catalog, const Movie& new_movie, std::size_t n,
                                         std::size_t min_count = 1);

}  // namespace cinerank

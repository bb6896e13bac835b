#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "cinerank/ids.hpp"

namespace cinerank {

/// Discrete rating scale. MovieLens uses 0.5..5.0 in half steps.
struct RatingScale {
  double min = 0.5;
  double max = 5.0;
  double step = 0.5;

  /// True when value lies in [min, max] on the step grid.
  bool contains(double value) const;
  bool in_range(double value) const { return value >= min && value <= max; }
  double clamp(double value) const;
  std::size_t bin_count() const;
  /// Histogram bin for an on-grid value; off-grid values round to nearest.
  std::size_t bin_of(double value) const;
  double bin_value(std::size_t bin) const { return min + step * static_cast<double>(bin); }

  bool operator==(const RatingScale&) const = default;
};

struct Movie {
  MovieId id;
  std::string title;
  std::vector<std::string> genres;  // sorted, unique
  std::string summary;
  std::optional<int> release_year;
  std::optional<int> release_month;  // 1..12 when the date column carries one

  bool operator==(const Movie&) const = default;
};

struct Rating {
  UserId user;
  MovieId movie;
  double value = 0.0;
  std::optional<std::int64_t> timestamp;

  bool operator==(const Rating&) const = default;
};

struct CriticReview {
  MovieId movie;
  std::string source;
  std::string review_text;
  double raw_score = 0.0;

  bool operator==(const CriticReview&) const = default;
};

struct ImplicitEvent {
  UserId user;
  MovieId movie;
  bool watched = false;
  double watch_fraction = 0.0;
  std::int64_t watch_count = 0;

  bool operator==(const ImplicitEvent&) const = default;
};

/// Lowercases, drops a trailing "(YYYY)", strips punctuation and collapses
/// whitespace. "River's Edge (1986)" -> "rivers edge".
std::string normalize_title(std::string_view title);

/// Year carried as a trailing "(YYYY)" in a title, if any.
std::optional<int> title_year(std::string_view title);

struct CatalogPaths {
  std::filesystem::path movies;
  std::filesystem::path ratings;
  std::filesystem::path reviews;
  std::optional<std::filesystem::path> implicit;

  /// movies.csv, ratings.csv, reviews.csv and (if present) implicit.csv.
  static CatalogPaths in_directory(const std::filesystem::path& dir);
};

/// Immutable, validated store of movies, ratings, critic reviews and implicit
/// events keyed by movie id. Construct through Catalog::create or
/// load_catalog; both throw DataError on invariant violations.
class Catalog {
 public:
  Catalog() = default;

  /// Validates and assembles a catalog. Reviews must already reference known
  /// movies; ratings must be on-scale and unique per (user, movie).
  static Catalog create(std::vector<Movie> movies, std::vector<Rating> ratings,
                        std::vector<CriticReview> reviews,
                        std::vector<ImplicitEvent> implicit,
                        RatingScale scale = {});

  /// Movies ordered by ascending id.
  std::span<const Movie> movies() const { return movies_; }
  std::span<const Rating> ratings() const { return ratings_; }
  std::span<const CriticReview> reviews() const { return reviews_; }
  std::span<const ImplicitEvent> implicit_events() const { return implicit_; }
  const RatingScale& scale() const { return scale_; }

  const Movie* find_movie(MovieId id) const;
  /// Throws DataError for unknown ids.
  const Movie& movie(MovieId id) const;

  /// Movies whose normalized title matches; ascending id.
  std::vector<MovieId> find_by_title(std::string_view title) const;

  /// Up to `limit` catalog titles nearest to `title` by edit distance over
  /// normalized forms.
  std::vector<std::string> closest_titles(std::string_view title, std::size_t limit = 3) const;

  /// Sorted union of all movie genres.
  std::vector<std::string> genre_universe() const;

  /// Reviews whose title/id could not be matched during load.
  std::size_t dropped_reviews() const { return dropped_reviews_; }

  /// Copy of this catalog with a different rating list (used by splits).
  Catalog with_ratings(std::vector<Rating> ratings) const;

  bool operator==(const Catalog& other) const;

 private:
  friend Catalog load_catalog(const CatalogPaths& paths, RatingScale scale);

  std::vector<Movie> movies_;
  std::vector<Rating> ratings_;
  std::vector<CriticReview> reviews_;
  std::vector<ImplicitEvent> implicit_;
  RatingScale scale_;
  std::unordered_map<MovieId, std::size_t> movie_index_;
  std::map<std::string, std::vector<MovieId>> title_index_;
  std::size_t dropped_reviews_ = 0;
};

/// Reads the four delimited files and merges critic reviews onto movies by
/// normalized title (id match preferred, then year tie-break). Unmatched
/// reviews are dropped and counted. Malformed rows throw DataError naming
/// file, line and field.
Catalog load_catalog(const CatalogPaths& paths, RatingScale scale = {});

struct SummaryStats {
  std::map<int, std::size_t> movies_per_year;
  std::size_t unknown_year = 0;
  std::array<std::size_t, 12> movies_per_month{};
  std::size_t unknown_month = 0;
  /// (scale value, count) for every step of the rating scale.
  std::vector<std::pair<double, std::size_t>> rating_histogram;
};

SummaryStats summary_stats(const Catalog& catalog);

struct Split {
  Catalog train;
  std::vector<Rating> test;
};

/// Deterministic holdout split. Up to floor(fraction * |ratings|) ratings move
/// to the test side, skipping any whose removal would leave its user or movie
/// without a training rating. Requires 0 < fraction < 1.
Split train_test_split(const Catalog& catalog, double holdout_fraction, std::uint64_t seed);

}  // namespace cinerank

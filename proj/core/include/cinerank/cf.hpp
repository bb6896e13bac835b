#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "cinerank/catalog.hpp"
#include "cinerank/ids.hpp"

namespace cinerank {

enum class Axis { kUser, kItem };
enum class Metric { kPearson, kCosine, kJaccard, kFuzzy };
enum class EntrySource : std::uint8_t { kExplicit, kImplicit };

std::string_view to_string(Axis axis);
std::string_view to_string(Metric metric);
/// Accepts "user"/"item" and "pearson"/"cosine"/"jaccard"/"fuzzy".
Axis parse_axis(std::string_view text);
Metric parse_metric(std::string_view text);

/// Blend for turning implicit behaviour into a pseudo-rating:
/// scale_max * (watch*[watched] + fraction*watch_fraction + freq*min(count, cap)/cap).
struct ImplicitParams {
  double alpha_watch = 0.2;
  double alpha_fraction = 0.5;
  double alpha_freq = 0.3;
  std::int64_t frequency_cap = 10;
};

/// Pseudo-rating for one event before clamping to the scale. Validates params.
double implicit_pseudo_rating(const ImplicitEvent& event, const ImplicitParams& params,
                              double scale_max);

/// Sparse user x item ratings. Items cover every catalog movie (some may be
/// unrated); users are those with at least one entry.
class RatingMatrix {
 public:
  struct Entry {
    std::size_t index;  // item index in a user row, user index in an item column
    double value;
    EntrySource source;
  };

  /// Throws DataError("no ratings") on an empty rating list.
  static RatingMatrix from_catalog(const Catalog& catalog);

  /// Copy with pseudo-ratings inserted for implicit events on empty cells.
  /// Explicit entries are never overwritten; events for unknown users add
  /// new user rows. Throws std::invalid_argument if the alphas do not sum
  /// to 1 within 1e-9 or the cap is < 1.
  RatingMatrix augment_implicit(std::span<const ImplicitEvent> events,
                                const ImplicitParams& params = {}) const;

  std::size_t user_count() const { return users_.size(); }
  std::size_t item_count() const { return items_.size(); }
  std::span<const UserId> users() const { return users_; }
  std::span<const MovieId> items() const { return items_; }
  std::optional<std::size_t> user_index(UserId id) const;
  std::optional<std::size_t> item_index(MovieId id) const;

  /// Entries sorted by item index.
  std::span<const Entry> user_row(std::size_t user) const { return rows_[user]; }
  /// Entries sorted by user index.
  std::span<const Entry> item_column(std::size_t item) const { return columns_[item]; }
  std::optional<double> value(std::size_t user, std::size_t item) const;
  const Entry* entry(std::size_t user, std::size_t item) const;

  double user_mean(std::size_t user) const { return user_means_[user]; }
  /// 0 for unrated items.
  double item_mean(std::size_t item) const { return item_means_[item]; }

  std::size_t entry_count() const { return entry_count_; }
  std::size_t implicit_entry_count() const { return implicit_count_; }
  const RatingScale& scale() const { return scale_; }

 private:
  void rebuild_columns_and_means();

  RatingScale scale_;
  std::vector<UserId> users_;
  std::vector<MovieId> items_;
  std::unordered_map<UserId, std::size_t> user_lookup_;
  std::unordered_map<MovieId, std::size_t> item_lookup_;
  std::vector<std::vector<Entry>> rows_;
  std::vector<std::vector<Entry>> columns_;
  std::vector<double> user_means_;
  std::vector<double> item_means_;
  std::size_t entry_count_ = 0;
  std::size_t implicit_count_ = 0;
};

inline RatingMatrix build_rating_matrix(const Catalog& catalog) {
  return RatingMatrix::from_catalog(catalog);
}

/// Dense symmetric entity x entity similarity with co-rating counts.
class SimilarityMatrix {
 public:
  SimilarityMatrix() = default;
  SimilarityMatrix(Axis axis, Metric metric, std::size_t min_overlap, std::vector<std::int64_t> ids);

  Axis axis() const { return axis_; }
  Metric metric() const { return metric_; }
  std::size_t min_overlap() const { return min_overlap_; }
  std::size_t size() const { return ids_.size(); }
  std::span<const std::int64_t> ids() const { return ids_; }
  std::optional<std::size_t> index_of(std::int64_t id) const;

  double at(std::size_t a, std::size_t b) const { return values_[a * ids_.size() + b]; }
  std::uint32_t co_count(std::size_t a, std::size_t b) const { return co_counts_[a * ids_.size() + b]; }
  void set(std::size_t a, std::size_t b, double value, std::uint32_t co_count);

  /// Text cache format: header line, axis/metric/count/min_overlap line, id
  /// line, then `count` rows of similarities and `count` rows of co-counts.
  /// Doubles are written with 17 significant digits, so output is
  /// byte-identical for identical inputs and reloads exactly.
  void save(std::ostream& out) const;
  static SimilarityMatrix load(std::istream& in);

  bool operator==(const SimilarityMatrix&) const = default;

 private:
  Axis axis_ = Axis::kUser;
  Metric metric_ = Metric::kPearson;
  std::size_t min_overlap_ = 0;
  std::vector<std::int64_t> ids_;
  std::unordered_map<std::int64_t, std::size_t> lookup_;
  std::vector<double> values_;
  std::vector<std::uint32_t> co_counts_;
};

struct SimilarityOptions {
  Metric metric = Metric::kPearson;
  /// Pairs sharing fewer co-rated entries get similarity 0. Defaults to 2
  /// for Pearson and 1 otherwise.
  std::optional<std::size_t> min_overlap;
  /// One nonnegative weight per co-rated dimension (items for the user axis,
  /// users for the item axis). Empty means unweighted.
  std::vector<double> weights;
  std::size_t threads = 1;
};

/// Pearson uses the (weighted) means of each pair's co-rated entries; a pair
/// whose centred vectors have zero variance scores 0. Cosine treats missing
/// entries as 0. Jaccard compares rated sets, ignoring values. The diagonal
/// is 1 for every entity with at least one entry. Fuzzy matrices come from
/// fuzzy_similarity_matrix in weight_opt.hpp.
SimilarityMatrix similarity_matrix(const RatingMatrix& matrix, Axis axis,
                                   const SimilarityOptions& options = {});

struct Neighbor {
  std::size_t index;
  std::int64_t id;
  double similarity;
};

struct NeighborSet {
  std::int64_t target;
  std::vector<Neighbor> neighbors;  // similarity desc, id asc
};

/// Top-k entities by similarity among those sharing at least one co-rated
/// entry with the target. Throws std::invalid_argument for k == 0 and
/// DataError for an unknown target.
NeighborSet knn_neighbors(const SimilarityMatrix& sim, std::int64_t target_id, std::size_t k);

struct Prediction {
  double value = 0.0;
  bool fallback = false;  // no usable neighbour; value is the user's mean
  std::size_t neighbors_used = 0;
};

/// Mean-centred weighted-deviation prediction. With a user-axis matrix:
/// mean(u) + sum sim(u,v) (r(v,m) - mean(v)) / sum |sim(u,v)| over the k most
/// similar users that rated m. An item-axis matrix swaps the roles. Output
/// is clamped to the rating scale.
Prediction predict_rating(const RatingMatrix& matrix, const SimilarityMatrix& sim, UserId user,
                          MovieId movie, std::size_t k);

enum class CfMode { kUserUser, kItemItem, kBoth };
enum class CfOrigin { kUserUser, kItemItem, kBoth };

std::string_view to_string(CfMode mode);
std::string_view to_string(CfOrigin origin);
CfMode parse_cf_mode(std::string_view text);

struct CfTarget {
  std::optional<UserId> user;
  std::optional<MovieId> seed;
};

struct CfOptions {
  std::size_t k = 20;
  double like_threshold = 3.5;
  std::size_t min_likers = 2;
};

struct CfCandidate {
  MovieId movie;
  double score;
  CfOrigin origin;
};

/// Candidate generation.
///  - user_user: movies liked (>= like_threshold) by at least min_likers of
///    the target user's k nearest users and unrated by the target, scored by
///    predicted rating.
///  - item_item: the n movies most similar to the seed movie, scored by
///    similarity.
///  - both: union of the user_user set and item-based candidates around the
///    seed (or, without a seed, around every movie the user liked), each
///    scored by its predicted rating; duplicates keep the max score.
/// Output is score desc, movie id asc, truncated to n.
std::vector<CfCandidate> recommend_cf(const RatingMatrix& matrix, const SimilarityMatrix* user_sim,
                                      const SimilarityMatrix* item_sim, CfMode mode,
                                      const CfTarget& target, std::size_t n,
                                      const CfOptions& options = {});

}  // namespace cinerank

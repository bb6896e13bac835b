#pragma once

#include <cstddef>
#include <span>
#include <unordered_map>

#include "cinerank/catalog.hpp"

namespace cinerank {

enum class CriticAggregate { kMean, kMedian };

struct CriticOptions {
  /// Raw score assumed for movies without reviews (normalizes to 0.1).
  double neutral_raw = 2.5;
  CriticAggregate aggregate = CriticAggregate::kMean;
};

struct CriticConsensus {
  MovieId movie;
  double raw_mean = 0.0;  // aggregate raw score in [0, 5]
  std::size_t review_count = 0;
  double normalized = 0.0;  // in [0, 0.2]
};

/// Maps a raw consensus in [0, 5] linearly onto the [0, 0.2] bonus range
/// (x / 25). Throws std::invalid_argument outside [0, 5].
double normalize_critic_score(double raw);

/// Aggregates the raw scores of one movie's reviews. Order-independent:
/// scores are sorted before summation. Throws DataError for scores outside
/// [0, 5].
CriticConsensus aggregate_reviews(MovieId movie, std::span<const CriticReview> reviews,
                                  const CriticOptions& options = {});

/// Consensus for every catalog movie; unreviewed movies get the neutral default.
std::unordered_map<MovieId, CriticConsensus> critic_consensus(const Catalog& catalog,
                                                              const CriticOptions& options = {});

}  // namespace cinerank

#include "cinerank/critic.hpp"

#include <algorithm>
#include <stdexcept>
#include <vector>

#include "cinerank/error.hpp"

namespace cinerank {

double normalize_critic_score(double raw) {
  if (!(raw >= 0.0 && raw <= 5.0)) {
    throw std::invalid_argument("critic score " + std::to_string(raw) + " outside [0, 5]");
  }
  return raw / 25.0;
}

CriticConsensus aggregate_reviews(MovieId movie, std::span<const CriticReview> reviews,
                                  const CriticOptions& options) {
  CriticConsensus c{movie, options.neutral_raw, reviews.size(), 0.0};
  if (!reviews.empty()) {
    std::vector<double> scores;
    scores.reserve(reviews.size());
    for (const auto& r : reviews) {
      if (!(r.raw_score >= 0.0 && r.raw_score <= 5.0)) {
        throw DataError("review score " + std::to_string(r.raw_score) + " for movie " +
                        std::to_string(movie.value()) + " outside [0, 5]");
      }
      scores.push_back(r.raw_score);
    }
    std::sort(scores.begin(), scores.end());
    if (options.aggregate == CriticAggregate::kMedian) {
      const std::size_t mid = scores.size() / 2;
      c.raw_mean = scores.size() % 2 ? scores[mid] : (scores[mid - 1] + scores[mid]) / 2.0;
    } else {
      double sum = 0.0;
      for (double s : scores) sum += s;
      c.raw_mean = std::clamp(sum / static_cast<double>(scores.size()), 0.0, 5.0);
    }
  }
  c.normalized = normalize_critic_score(c.raw_mean);
  return c;
}

std::unordered_map<MovieId, CriticConsensus> critic_consensus(const Catalog& catalog,
                                                              const CriticOptions& options) {
  std::unordered_map<MovieId, std::vector<CriticReview>> grouped;
  for (const auto& r : catalog.reviews()) grouped[r.movie].push_back(r);
  std::unordered_map<MovieId, CriticConsensus> out;
  for (const auto& m : catalog.movies()) {
    const auto it = grouped.find(m.id);
    const std::span<const CriticReview> reviews =
        it == grouped.end() ? std::span<const CriticReview>() : std::span<const CriticReview>(it->second);
    out.emplace(m.id, aggregate_reviews(m.id, reviews, options));
  }
  return out;
}

}  // namespace cinerank

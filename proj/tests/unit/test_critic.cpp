#include <algorithm>

#include <gtest/gtest.h>

#include "cinerank/critic.hpp"
#include "cinerank/error.hpp"
#include "cinerank/random.hpp"

using namespace cinerank;

namespace {

std::vector<CriticReview> reviews(std::initializer_list<double> scores) {
  std::vector<CriticReview> out;
  for (double s : scores) out.push_back({MovieId(1), "critic", "text", s});
  return out;
}

}  // namespace

TEST(CriticNormalize, Endpoints) {
  EXPECT_EQ(normalize_critic_score(0.0), 0.0);
  EXPECT_EQ(normalize_critic_score(5.0), 0.2);
  EXPECT_DOUBLE_EQ(normalize_critic_score(2.5), 0.1);
  EXPECT_THROW(normalize_critic_score(-0.01), std::invalid_argument);
  EXPECT_THROW(normalize_critic_score(5.01), std::invalid_argument);
}

TEST(CriticNormalize, BoundedExactAndMonotone) {
  Rng rng(17);
  std::vector<double> draws(1000);
  for (auto& x : draws) x = rng.uniform(0.0, 5.0);
  std::sort(draws.begin(), draws.end());
  double prev = -1;
  for (double x : draws) {
    const double y = normalize_critic_score(x);
    EXPECT_EQ(y, x / 25.0);
    EXPECT_GE(y, 0.0);
    EXPECT_LE(y, 0.2);
    EXPECT_GE(y, prev);
    prev = y;
  }
}

TEST(CriticAggregate, Examples) {
  const auto five = aggregate_reviews(MovieId(1), reviews({5, 5, 5}));
  EXPECT_EQ(five.raw_mean, 5.0);
  EXPECT_EQ(five.review_count, 3u);
  EXPECT_EQ(five.normalized, 0.2);
  EXPECT_EQ(aggregate_reviews(MovieId(1), reviews({1.0, 4.0})).raw_mean, 2.5);
  const auto none = aggregate_reviews(MovieId(1), {});
  EXPECT_EQ(none.review_count, 0u);
  EXPECT_EQ(none.raw_mean, 2.5);
  EXPECT_DOUBLE_EQ(none.normalized, 0.1);
  CriticOptions zero;
  zero.neutral_raw = 0.0;
  EXPECT_EQ(aggregate_reviews(MovieId(1), {}, zero).normalized, 0.0);
}

TEST(CriticAggregate, Median) {
  CriticOptions o;
  o.aggregate = CriticAggregate::kMedian;
  EXPECT_EQ(aggregate_reviews(MovieId(1), reviews({5, 0, 1}), o).raw_mean, 1.0);
  EXPECT_EQ(aggregate_reviews(MovieId(1), reviews({5, 0, 1, 2}), o).raw_mean, 1.5);
}

TEST(CriticAggregate, OutOfRangeScoreThrows) {
  EXPECT_THROW(aggregate_reviews(MovieId(1), reviews({3, 5.5})), DataError);
  EXPECT_THROW(aggregate_reviews(MovieId(1), reviews({-1})), DataError);
}

TEST(CriticAggregate, PermutationInvariant) {
  Rng rng(23);
  for (int t = 0; t < 200; ++t) {
    std::vector<CriticReview> r;
    const auto n = 1 + rng.below(9);
    double sum = 0;
    for (std::uint64_t i = 0; i < n; ++i) {
      r.push_back({MovieId(1), "c", "", rng.uniform(0.0, 5.0)});
      sum += r.back().raw_score;
    }
    const auto base = aggregate_reviews(MovieId(1), r);
    EXPECT_NEAR(base.raw_mean, sum / static_cast<double>(n), 1e-12);
    EXPECT_DOUBLE_EQ(base.normalized, base.raw_mean / 25.0);
    for (int p = 0; p < 5; ++p) {
      for (std::size_t i = r.size(); i > 1; --i) std::swap(r[i - 1], r[rng.below(i)]);
      EXPECT_EQ(aggregate_reviews(MovieId(1), r).raw_mean, base.raw_mean);
    }
  }
}

TEST(CriticConsensus, FixtureCoversEveryMovie) {
  const auto c = load_catalog(CatalogPaths::in_directory(CINERANK_FIXTURE_DIR));
  const auto all = critic_consensus(c);
  EXPECT_EQ(all.size(), c.movies().size());
  std::size_t reviewed = 0;
  for (const auto& [id, cc] : all) {
    EXPECT_EQ(cc.movie, id);
    EXPECT_GE(cc.normalized, 0.0);
    EXPECT_LE(cc.normalized, 0.2);
    reviewed += cc.review_count;
  }
  EXPECT_EQ(reviewed, c.reviews().size());
}

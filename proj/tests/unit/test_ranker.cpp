#include <algorithm>
#include <sstream>

#include <gtest/gtest.h>

#include "cinerank/error.hpp"
#include "cinerank/random.hpp"
#include "cinerank/ranker.hpp"

using namespace cinerank;

namespace {

Catalog fixture() { return load_catalog(CatalogPaths::in_directory(CINERANK_FIXTURE_DIR)); }

// Every user rates every movie, so each movie is in the seed's item-item pool.
Catalog dense_catalog(std::size_t movies, const std::vector<CriticReview>& reviews, std::uint64_t seed = 1) {
  std::vector<Movie> m;
  for (std::size_t i = 1; i <= movies; ++i) {
    m.push_back({MovieId(static_cast<std::int64_t>(i)), "Film " + std::string(1, static_cast<char>('A' + i - 1)),
                 {"Drama"}, "", {}, {}});
  }
  Rng rng(seed);
  std::vector<Rating> r;
  for (int u = 1; u <= 4; ++u) {
    for (std::size_t i = 1; i <= movies; ++i) {
      r.push_back({UserId(u), MovieId(static_cast<std::int64_t>(i)), 0.5 * static_cast<double>(1 + rng.below(10)), {}});
    }
  }
  return Catalog::create(m, r, reviews, {});
}

PrecomputedProvider provider(const std::map<MovieId, std::vector<double>>& vectors) {
  std::stringstream buf;
  PrecomputedProvider::write(buf, vectors.begin()->second.size(), vectors);
  return PrecomputedProvider::load(buf);
}

std::size_t position(const HybridResult& r, MovieId id) {
  for (std::size_t i = 0; i < r.items.size(); ++i) {
    if (r.items[i].movie == id) return i;
  }
  return r.items.size();
}

}  // namespace

TEST(Ranker, ContentTextFallsBackToTitle) {
  EXPECT_EQ(content_text({MovieId(1), "Crystal", {}, "", {}, {}}), "Crystal");
  EXPECT_EQ(content_text({MovieId(1), "Crystal", {}, "  ", {}, {}}), "Crystal");
  EXPECT_EQ(content_text({MovieId(1), "Crystal", {}, "A gem.", {}, {}}), "A gem.");
}

TEST(Ranker, EqualCosineCriticGapIsExactlyPointTwo) {
  const auto c = dense_catalog(3, {{MovieId(2), "x", "", 0.0}, {MovieId(3), "y", "", 5.0}});
  const auto p = provider({{MovieId(1), {1, 0}}, {MovieId(2), {1, 1}}, {MovieId(3), {1, 1}}});
  PipelineConfig cfg;
  cfg.embeddings = &p;
  cfg.n = 2;
  const auto r = recommend_hybrid(c, "Film A", cfg);
  ASSERT_EQ(r.items.size(), 2u);
  EXPECT_EQ(r.items[0].movie, MovieId(3));
  EXPECT_EQ(r.items[1].movie, MovieId(2));
  EXPECT_EQ(r.items[0].content_cosine, r.items[1].content_cosine);
  EXPECT_NEAR(r.items[0].fused_score - r.items[1].fused_score, 0.2, 1e-12);
}

TEST(Ranker, CriticDisabledGivesCosineOrder) {
  const auto c = fixture();
  PipelineConfig on, off;
  on.n = off.n = on.pool_size = off.pool_size = 100;
  off.critic_enabled = false;
  const auto with = recommend_hybrid(c, "Grown Ups 2", on);
  const auto without = recommend_hybrid(c, "Grown Ups 2", off);
  ASSERT_EQ(with.items.size(), without.items.size());
  ASSERT_FALSE(without.items.empty());
  for (std::size_t i = 0; i < without.items.size(); ++i) {
    EXPECT_EQ(without.items[i].critic_bonus, 0.0);
    EXPECT_EQ(without.items[i].fused_score, without.items[i].content_cosine);
    if (i > 0) {
      const auto& a = without.items[i - 1];
      const auto& b = without.items[i];
      EXPECT_TRUE(a.content_cosine > b.content_cosine || (a.content_cosine == b.content_cosine && a.title <= b.title));
    }
  }
  std::vector<MovieId> x, y;
  for (const auto& r : with.items) x.push_back(r.movie);
  for (const auto& r : without.items) y.push_back(r.movie);
  std::sort(x.begin(), x.end());
  std::sort(y.begin(), y.end());
  EXPECT_EQ(x, y);
}

TEST(Ranker, FixtureEqualSummariesFollowCriticMean) {
  PipelineConfig cfg;
  cfg.n = cfg.pool_size = 100;
  const auto r = recommend_hybrid(fixture(), "Grown Ups 2", cfg);
  const auto a = position(r, MovieId(23));  // critic mean 5.0
  const auto b = position(r, MovieId(22));  // 2.5
  const auto d = position(r, MovieId(21));  // 0.0
  ASSERT_LT(d, r.items.size());
  EXPECT_LT(a, b);
  EXPECT_LT(b, d);
  EXPECT_EQ(r.items[a].content_cosine, r.items[d].content_cosine);
  EXPECT_NEAR(r.items[a].fused_score - r.items[d].fused_score, 0.2, 1e-12);
}

TEST(Ranker, IncludedSeedTopsTheList) {
  PipelineConfig cfg;
  cfg.include_seed = true;
  const auto r = recommend_hybrid(fixture(), "Grown Ups 2", cfg);
  ASSERT_FALSE(r.items.empty());
  EXPECT_EQ(r.items[0].movie, MovieId(1));
  EXPECT_NEAR(r.items[0].content_cosine, 1.0, 1e-12);
  EXPECT_EQ(r.items.size(), cfg.n);
  PipelineConfig plain;
  for (const auto& item : recommend_hybrid(fixture(), "Grown Ups 2", plain).items) EXPECT_NE(item.movie, MovieId(1));
}

TEST(Ranker, AdditiveSortedAndThreadInvariant) {
  const auto c = fixture();
  PipelineConfig cfg;
  const auto r = recommend_hybrid(c, "Grown Ups 2", cfg);
  ASSERT_EQ(r.items.size(), 15u);
  EXPECT_EQ(r.seed, MovieId(1));
  for (std::size_t i = 0; i < r.items.size(); ++i) {
    const auto& x = r.items[i];
    EXPECT_NEAR(x.fused_score - x.content_cosine - x.critic_bonus, 0.0, 1e-12);
    EXPECT_GE(x.critic_bonus, 0.0);
    EXPECT_LE(x.critic_bonus, 0.2);
    if (i > 0) EXPECT_GE(r.items[i - 1].fused_score, x.fused_score);
  }
  cfg.threads = 4;
  const auto t = recommend_hybrid(c, "Grown Ups 2", cfg);
  ASSERT_EQ(t.items.size(), r.items.size());
  for (std::size_t i = 0; i < r.items.size(); ++i) {
    EXPECT_EQ(t.items[i].movie, r.items[i].movie);
    EXPECT_EQ(t.items[i].fused_score, r.items[i].fused_score);
  }
}

TEST(Ranker, RaisingCriticMeanNeverLowersRank) {
  Rng rng(77);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t count = 3 + rng.below(6);
    std::map<MovieId, std::vector<double>> vectors;
    std::vector<CriticReview> reviews;
    for (std::size_t i = 1; i <= count; ++i) {
      // Few distinct directions, so equal cosines are common.
      const double angle = static_cast<double>(rng.below(3));
      vectors[MovieId(static_cast<std::int64_t>(i))] = {1.0, angle};
      if (i > 1 && rng.uniform() < 0.8) {
        reviews.push_back({MovieId(static_cast<std::int64_t>(i)), "c", "", 0.5 * static_cast<double>(rng.below(11))});
      }
    }
    const auto p = provider(vectors);
    PipelineConfig cfg;
    cfg.embeddings = &p;
    cfg.n = cfg.pool_size = count;
    const auto target = MovieId(static_cast<std::int64_t>(2 + rng.below(count - 1)));
    double old_score = 2.5;
    auto raised = reviews;
    bool found = false;
    for (auto& r : raised) {
      if (r.movie == target) {
        old_score = r.raw_score;
        r.raw_score = std::min(5.0, r.raw_score + 0.5 * static_cast<double>(1 + rng.below(4)));
        found = true;
      }
    }
    if (!found) raised.push_back({target, "c", "", std::min(5.0, old_score + 1.0)});
    const auto before = recommend_hybrid(dense_catalog(count, reviews, trial), "Film A", cfg);
    const auto after = recommend_hybrid(dense_catalog(count, raised, trial), "Film A", cfg);
    EXPECT_LE(position(after, target), position(before, target));
  }
}

TEST(Ranker, CriticWeightScalesBonus) {
  PipelineConfig cfg;
  cfg.critic_weight = 0.5;
  for (const auto& r : recommend_hybrid(fixture(), "Grown Ups 2", cfg).items) EXPECT_LE(r.critic_bonus, 0.1 + 1e-15);
}

TEST(Ranker, Errors) {
  const auto c = fixture();
  try {
    recommend_hybrid(c, "Grown Ups 3", {});
    FAIL();
  } catch (const DataError& e) {
    const std::string msg = e.what();
    EXPECT_NE(msg.find("unknown seed title 'Grown Ups 3'"), std::string::npos);
    EXPECT_NE(msg.find("'Grown Ups 2 (2013)'"), std::string::npos);
  }
  PipelineConfig cfg;
  cfg.n = 10;
  cfg.pool_size = 5;
  EXPECT_THROW(recommend_hybrid(c, "Psycho", cfg), std::invalid_argument);
  cfg = {};
  cfg.k = 0;
  EXPECT_THROW(recommend_hybrid(c, "Psycho", cfg), std::invalid_argument);
  cfg = {};
  cfg.cf_mode = CfMode::kUserUser;
  EXPECT_THROW(recommend_hybrid(c, "Psycho", cfg), std::invalid_argument);
}

TEST(Ranker, DiagnosticsForEmptyPools) {
  const auto bare = Catalog::create({{MovieId(1), "Alone", {"Drama"}, "", {}, {}}}, {}, {}, {});
  const auto r = recommend_hybrid(bare, "Alone", {});
  EXPECT_TRUE(r.items.empty());
  EXPECT_FALSE(r.diagnostic.empty());
  const auto isolated = Catalog::create(
      {{MovieId(1), "Alone", {"Drama"}, "", {}, {}}, {MovieId(2), "Other", {"Drama"}, "", {}, {}}},
      {{UserId(1), MovieId(1), 4.0, {}}, {UserId(2), MovieId(2), 3.0, {}}}, {}, {});
  const auto s = recommend_hybrid(isolated, "Alone", {});
  EXPECT_TRUE(s.items.empty());
  EXPECT_NE(s.diagnostic.find("no candidates"), std::string::npos);
}

TEST(Ranker, YearDisambiguatesTitles) {
  const auto c = Catalog::create({{MovieId(1), "Jumper (1999)", {"Drama"}, "", {}, {}},
                                  {MovieId(2), "Jumper (2008)", {"Drama"}, "", {}, {}}},
                                 {{UserId(1), MovieId(1), 4.0, {}}, {UserId(1), MovieId(2), 3.0, {}}}, {}, {});
  EXPECT_EQ(recommend_hybrid(c, "Jumper (2008)", {}).seed, MovieId(2));
  EXPECT_EQ(recommend_hybrid(c, "jumper (1999)", {}).seed, MovieId(1));
}

TEST(Render, Formats) {
  HybridResult r;
  r.items = {{MovieId(1), "River's Edge", 0.25, 0.15, 0.1, CfOrigin::kItemItem},
             {MovieId(2), "Psycho", 0.19, 0.0, 0.19, CfOrigin::kItemItem}};
  std::ostringstream tsv, tuples, table;
  render(tsv, r, OutputFormat::kTsv);
  EXPECT_EQ(tsv.str(), "River's Edge\t0.2500000\t0.1500000\t0.1000000\nPsycho\t0.1900000\t0.0000000\t0.1900000\n");
  render(tuples, r, OutputFormat::kTuples);
  EXPECT_EQ(tuples.str(), "[(\"River's Edge\", 0.2500000),\n ('Psycho', 0.1900000)]\n");
  render(table, r, OutputFormat::kTable);
  EXPECT_NE(table.str().find("River's Edge"), std::string::npos);
  EXPECT_EQ(parse_output_format("tsv"), OutputFormat::kTsv);
  EXPECT_THROW(parse_output_format("xml"), std::invalid_argument);
  EXPECT_EQ(format_score(1.0 / 3.0), "0.3333333");
}

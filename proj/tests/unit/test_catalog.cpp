#include <algorithm>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include <gtest/gtest.h>

#include "cinerank/catalog.hpp"
#include "cinerank/csv.hpp"
#include "cinerank/error.hpp"
#include "support/temp_dir.hpp"

using namespace cinerank;
using cinerank::testkit::TempDir;

namespace {

const char* kMovies =
    "movieId,title,genres,year,summary\n"
    "1,Alpha (1995),Comedy,1995,First film\n"
    "2,Beta (1995),Drama|Comedy,1995-03,\"Second, with comma\"\n"
    "3,Gamma (1995),Drama,1995-11-02,Third\n"
    "4,Delta,Horror,,\n"
    "5,Epsilon (2001),Sci-Fi,,Fifth\n";

const char* kRatings =
    "userId,movieId,rating,timestamp\n"
    "1,1,4.0,100\n1,2,3.5,101\n1,3,5.0,\n"
    "2,1,2.0,102\n2,4,1.5,103\n2,5,3.0,104\n"
    "3,2,4.5,105\n3,3,4.0,106\n3,5,0.5,107\n"
    "4,1,5.0,108\n4,4,2.5,109\n4,5,3.5,110\n";

const char* kReviews =
    "movieId,title,source,rawScore,reviewText\n"
    "1,Alpha (1995),A,4.0,good\n"
    "2,Beta,B,3.0,fine\n"
    ",Gamma (1995),C,2.0,no id\n"
    "4,Delta,D,1.0,\n"
    "5,EPSILON!,E,5.0,shouting\n"
    "3,Gamma,F,2.5,\"quoted, text\"\n";

CatalogPaths write_toy(const TempDir& dir, const std::string& movies = kMovies,
                       const std::string& ratings = kRatings, const std::string& reviews = kReviews) {
  dir.write("movies.csv", movies);
  dir.write("ratings.csv", ratings);
  dir.write("reviews.csv", reviews);
  return CatalogPaths::in_directory(dir.path());
}

std::string error_of(const CatalogPaths& paths) {
  try {
    load_catalog(paths);
  } catch (const DataError& e) {
    return e.what();
  }
  return "";
}

Catalog fixture() { return load_catalog(CatalogPaths::in_directory(CINERANK_FIXTURE_DIR)); }

}  // namespace

TEST(NormalizeTitle, Rules) {
  EXPECT_EQ(normalize_title("River's Edge (1986)"), "rivers edge");
  EXPECT_EQ(normalize_title("  The   Family-Man "), "the familyman");
  EXPECT_EQ(normalize_title("GROWN UPS 2"), "grown ups 2");
  EXPECT_EQ(normalize_title("Psycho (1960)"), normalize_title("psycho"));
  EXPECT_EQ(normalize_title(""), "");
}

TEST(TitleYear, TrailingParenthesizedYear) {
  EXPECT_EQ(title_year("Psycho (1960)"), 1960);
  EXPECT_EQ(title_year("Psycho (1960) "), 1960);
  EXPECT_EQ(title_year("Psycho"), std::nullopt);
  EXPECT_EQ(title_year("1984"), std::nullopt);
  EXPECT_EQ(title_year("Movie (19x0)"), std::nullopt);
}

TEST(LoadCatalog, ToyFixtureCounts) {
  TempDir dir;
  const auto c = load_catalog(write_toy(dir));
  EXPECT_EQ(c.movies().size(), 5u);
  EXPECT_EQ(c.ratings().size(), 12u);
  EXPECT_EQ(c.reviews().size(), 6u);
  EXPECT_EQ(c.dropped_reviews(), 0u);
  EXPECT_TRUE(c.implicit_events().empty());
  std::set<UserId> users;
  for (const auto& r : c.ratings()) users.insert(r.user);
  EXPECT_EQ(users.size(), 4u);
}

TEST(LoadCatalog, ParsesFieldsAndDates) {
  TempDir dir;
  const auto c = load_catalog(write_toy(dir));
  const auto& beta = c.movie(MovieId(2));
  EXPECT_EQ(beta.genres, (std::vector<std::string>{"Comedy", "Drama"}));
  EXPECT_EQ(beta.summary, "Second, with comma");
  EXPECT_EQ(beta.release_year, 1995);
  EXPECT_EQ(beta.release_month, 3);
  EXPECT_EQ(c.movie(MovieId(3)).release_month, 11);
  EXPECT_EQ(c.movie(MovieId(1)).release_month, std::nullopt);
  EXPECT_EQ(c.movie(MovieId(4)).release_year, std::nullopt);
  EXPECT_EQ(c.movie(MovieId(5)).release_year, 2001);  // from the title
  EXPECT_EQ(c.ratings()[2].timestamp, std::nullopt);
  EXPECT_EQ(c.ratings()[0].timestamp, 100);
}

TEST(LoadCatalog, ReviewMerge) {
  TempDir dir;
  const auto c = load_catalog(write_toy(dir));
  std::map<std::string, MovieId> by_source;
  for (const auto& r : c.reviews()) by_source[r.source] = r.movie;
  EXPECT_EQ(by_source.at("C"), MovieId(3));  // no id, unique title
  EXPECT_EQ(by_source.at("E"), MovieId(5));  // punctuation and case ignored
  EXPECT_EQ(by_source.at("F"), MovieId(3));
}

TEST(LoadCatalog, UnknownReviewTitlesAreDroppedAndCounted) {
  TempDir dir;
  const std::string reviews = std::string(kReviews) + "9,Nowhere (2000),X,3.0,\n,Lost Film,Y,1.0,\n";
  const auto c = load_catalog(write_toy(dir, kMovies, kRatings, reviews));
  EXPECT_EQ(c.dropped_reviews(), 2u);
  EXPECT_EQ(c.reviews().size(), 6u);
}

TEST(LoadCatalog, AmbiguousTitlesUseIdThenYear) {
  TempDir dir;
  const std::string movies =
      "movieId,title,genres,year,summary\n"
      "1,Twin (1990),Drama,1990,\n"
      "2,Twin (2010),Drama,2010,\n";
  const std::string ratings = "userId,movieId,rating,timestamp\n1,1,3.0,\n";
  const std::string reviews =
      "movieId,title,source,rawScore,reviewText\n"
      "2,Twin,by-id,1.0,\n"
      ",Twin (1990),by-year,2.0,\n"
      ",Twin,ambiguous,3.0,\n"
      "7,Twin (2010),wrong-id-right-year,4.0,\n";
  const auto c = load_catalog(write_toy(dir, movies, ratings, reviews));
  std::map<std::string, MovieId> by_source;
  for (const auto& r : c.reviews()) by_source[r.source] = r.movie;
  EXPECT_EQ(by_source.at("by-id"), MovieId(2));
  EXPECT_EQ(by_source.at("by-year"), MovieId(1));
  EXPECT_EQ(by_source.at("wrong-id-right-year"), MovieId(2));
  EXPECT_FALSE(by_source.contains("ambiguous"));
  EXPECT_EQ(c.dropped_reviews(), 1u);
}

TEST(LoadCatalog, OutOfScaleRatingNamesLine) {
  TempDir dir;
  const auto msg = error_of(write_toy(dir, kMovies, "userId,movieId,rating,timestamp\n1,1,4.0,\n1,2,7.0,\n"));
  EXPECT_NE(msg.find("value out of scale at line 3"), std::string::npos) << msg;
}

TEST(LoadCatalog, OffGridRatingRejected) {
  TempDir dir;
  EXPECT_FALSE(error_of(write_toy(dir, kMovies, "userId,movieId,rating,timestamp\n1,1,3.3,\n")).empty());
}

TEST(LoadCatalog, MalformedRowNamesFileLineAndField) {
  TempDir dir;
  const auto msg = error_of(write_toy(dir, kMovies, "userId,movieId,rating,timestamp\n1,1,4.0,\nabc,2,3.0,\n"));
  EXPECT_NE(msg.find("ratings.csv"), std::string::npos) << msg;
  EXPECT_NE(msg.find(":3:"), std::string::npos) << msg;
  EXPECT_NE(msg.find("userId"), std::string::npos) << msg;
}

TEST(LoadCatalog, WrongFieldCountNamesLine) {
  TempDir dir;
  const auto msg = error_of(write_toy(dir, kMovies, "userId,movieId,rating,timestamp\n1,1,4.0\n"));
  EXPECT_NE(msg.find("ratings.csv:2"), std::string::npos) << msg;
}

TEST(LoadCatalog, DuplicateRatingRejected) {
  TempDir dir;
  const auto msg = error_of(write_toy(dir, kMovies, "userId,movieId,rating,timestamp\n1,1,4.0,\n1,1,3.0,\n"));
  EXPECT_NE(msg.find("duplicate"), std::string::npos) << msg;
}

TEST(LoadCatalog, UnknownMovieInRatingsRejected) {
  TempDir dir;
  const auto msg = error_of(write_toy(dir, kMovies, "userId,movieId,rating,timestamp\n1,42,4.0,\n"));
  EXPECT_NE(msg.find("unknown movie id 42"), std::string::npos) << msg;
}

TEST(LoadCatalog, HeaderMismatchRejected) {
  TempDir dir;
  EXPECT_FALSE(error_of(write_toy(dir, kMovies, "user,movie,rating,timestamp\n")).empty());
}

TEST(LoadCatalog, MissingFileRejected) {
  TempDir dir;
  auto paths = write_toy(dir);
  paths.reviews = dir.path() / "absent.csv";
  EXPECT_NE(error_of(paths).find("cannot open"), std::string::npos);
}

TEST(LoadCatalog, ImplicitValidation) {
  TempDir dir;
  auto paths = write_toy(dir);
  paths.implicit = dir.write("implicit.csv", "userId,movieId,watched,watchFraction,watchCount\n1,4,false,0.5,1\n");
  EXPECT_NE(error_of(paths).find("watchFraction"), std::string::npos);
  dir.write("implicit.csv", "userId,movieId,watched,watchFraction,watchCount\n1,4,true,1.5,1\n");
  EXPECT_NE(error_of(paths).find("watchFraction"), std::string::npos);
  dir.write("implicit.csv", "userId,movieId,watched,watchFraction,watchCount\n1,4,true,0.5,-1\n");
  EXPECT_NE(error_of(paths).find("watchCount"), std::string::npos);
  dir.write("implicit.csv", "userId,movieId,watched,watchFraction,watchCount\n1,99,true,0.5,1\n");
  EXPECT_NE(error_of(paths).find("unknown movie"), std::string::npos);
  dir.write("implicit.csv", "userId,movieId,watched,watchFraction,watchCount\n1,4,yes,0.5,2\n7,5,0,0,0\n");
  const auto c = load_catalog(paths);
  ASSERT_EQ(c.implicit_events().size(), 2u);
  EXPECT_TRUE(c.implicit_events()[0].watched);
  EXPECT_EQ(c.implicit_events()[1].user, UserId(7));
}

TEST(LoadCatalog, LoadingTwiceGivesEqualCatalogs) {
  EXPECT_EQ(fixture(), fixture());
}

TEST(LoadCatalog, BundledFixture) {
  const auto c = fixture();
  EXPECT_EQ(c.movies().size(), 23u);
  EXPECT_EQ(c.ratings().size(), 72u);
  EXPECT_EQ(c.reviews().size() + c.dropped_reviews(), 29u);
  EXPECT_EQ(c.dropped_reviews(), 2u);
  EXPECT_EQ(c.implicit_events().size(), 15u);
  std::set<UserId> users;
  for (const auto& r : c.ratings()) users.insert(r.user);
  EXPECT_EQ(users.size(), 8u);
  for (const auto& r : c.ratings()) EXPECT_NE(c.find_movie(r.movie), nullptr);
  for (const auto& r : c.reviews()) EXPECT_NE(c.find_movie(r.movie), nullptr);
  for (const auto& e : c.implicit_events()) EXPECT_NE(c.find_movie(e.movie), nullptr);
}

TEST(Catalog, FindByTitleAndClosest) {
  const auto c = fixture();
  EXPECT_EQ(c.find_by_title("grown ups 2"), std::vector<MovieId>{MovieId(1)});
  EXPECT_EQ(c.find_by_title("Grown Ups 2 (2013)"), std::vector<MovieId>{MovieId(1)});
  EXPECT_TRUE(c.find_by_title("Grown Ups 3").empty());
  const auto near = c.closest_titles("Grown Ups 3", 2);
  ASSERT_EQ(near.size(), 2u);
  EXPECT_EQ(near[0], "Grown Ups 2 (2013)");
  EXPECT_THROW(c.movie(MovieId(404)), DataError);
}

TEST(Catalog, CreateValidatesInvariants) {
  std::vector<Movie> movies{{MovieId(1), "A", {}, "", {}, {}}};
  EXPECT_THROW(Catalog::create(movies, {{UserId(1), MovieId(2), 3.0, {}}}, {}, {}), DataError);
  EXPECT_THROW(Catalog::create(movies, {{UserId(1), MovieId(1), 9.0, {}}}, {}, {}), DataError);
  EXPECT_THROW(Catalog::create({{MovieId(1), "", {}, "", {}, {}}}, {}, {}, {}), DataError);
  EXPECT_THROW(Catalog::create(movies, {}, {{MovieId(1), "s", "", 6.0}}, {}), DataError);
  EXPECT_NO_THROW(Catalog::create(movies, {{UserId(1), MovieId(1), 3.0, {}}}, {}, {}));
}

TEST(RatingScale, GridAndBins) {
  RatingScale s;
  EXPECT_TRUE(s.contains(0.5));
  EXPECT_TRUE(s.contains(5.0));
  EXPECT_FALSE(s.contains(0.0));
  EXPECT_FALSE(s.contains(2.25));
  EXPECT_EQ(s.bin_count(), 10u);
  EXPECT_EQ(s.bin_of(0.5), 0u);
  EXPECT_EQ(s.bin_of(5.0), 9u);
  EXPECT_DOUBLE_EQ(s.bin_value(3), 2.0);
  EXPECT_EQ(s.clamp(7.0), 5.0);
  EXPECT_EQ(s.clamp(-1.0), 0.5);
}

TEST(SummaryStats, EmptyCatalogIsAllZero) {
  const auto s = summary_stats(Catalog::create({}, {}, {}, {}));
  EXPECT_TRUE(s.movies_per_year.empty());
  EXPECT_EQ(s.unknown_year, 0u);
  for (auto n : s.movies_per_month) EXPECT_EQ(n, 0u);
  ASSERT_EQ(s.rating_histogram.size(), 10u);
  for (const auto& [v, n] : s.rating_histogram) EXPECT_EQ(n, 0u);
}

TEST(SummaryStats, ThreeMoviesSameYear) {
  TempDir dir;
  const auto s = summary_stats(load_catalog(write_toy(dir)));
  EXPECT_EQ(s.movies_per_year.at(1995), 3u);
  EXPECT_EQ(s.movies_per_year.at(2001), 1u);
  EXPECT_EQ(s.unknown_year, 1u);
  EXPECT_EQ(s.movies_per_month[2], 1u);
  EXPECT_EQ(s.movies_per_month[10], 1u);
  EXPECT_EQ(s.unknown_month, 3u);
}

TEST(SummaryStats, FixtureHistogramMatchesDirectTally) {
  // Independent tally straight from the CSV text.
  std::ifstream in(std::string(CINERANK_FIXTURE_DIR) + "/ratings.csv");
  csv::Reader reader(in, "ratings.csv");
  reader.next();
  std::map<double, std::size_t> tally;
  while (auto rec = reader.next()) tally[std::stod(rec->fields[2])]++;

  const auto s = summary_stats(fixture());
  std::size_t total = 0;
  for (const auto& [value, count] : s.rating_histogram) {
    EXPECT_EQ(count, tally.contains(value) ? tally[value] : 0u) << value;
    total += count;
  }
  EXPECT_EQ(total, 72u);
  std::size_t dated = s.unknown_year;
  for (const auto& [y, n] : s.movies_per_year) dated += n;
  EXPECT_EQ(dated, 23u);
}

TEST(Split, DeterministicPartitionWithoutOrphans) {
  const auto c = fixture();
  const auto a = train_test_split(c, 0.2, 42);
  const auto b = train_test_split(c, 0.2, 42);
  EXPECT_EQ(a.test, b.test);
  EXPECT_EQ(a.train, b.train);
  EXPECT_LE(a.test.size(), c.ratings().size() / 5 + 1);
  EXPECT_FALSE(a.test.empty());

  std::multiset<std::tuple<std::int64_t, std::int64_t, double>> all, parts;
  for (const auto& r : c.ratings()) all.emplace(r.user.value(), r.movie.value(), r.value);
  for (const auto& r : a.train.ratings()) parts.emplace(r.user.value(), r.movie.value(), r.value);
  for (const auto& r : a.test) parts.emplace(r.user.value(), r.movie.value(), r.value);
  EXPECT_EQ(all, parts);
  EXPECT_EQ(a.train.ratings().size() + a.test.size(), c.ratings().size());

  std::set<UserId> train_users;
  std::set<MovieId> train_movies;
  for (const auto& r : a.train.ratings()) {
    train_users.insert(r.user);
    train_movies.insert(r.movie);
  }
  for (const auto& r : a.test) {
    EXPECT_TRUE(train_users.contains(r.user));
    EXPECT_TRUE(train_movies.contains(r.movie));
  }
}

TEST(Split, HalfOfTenRatingsByEnumeration) {
  std::vector<Movie> movies;
  for (int m = 1; m <= 4; ++m) movies.push_back({MovieId(m), "M" + std::to_string(m), {}, "", {}, {}});
  std::vector<Rating> ratings;
  const int cells[10][2] = {{1, 1}, {1, 2}, {1, 3}, {2, 1}, {2, 2}, {3, 3}, {3, 4}, {4, 4}, {4, 1}, {2, 4}};
  for (const auto& c : cells) ratings.push_back({UserId(c[0]), MovieId(c[1]), 3.0, {}});
  const auto catalog = Catalog::create(movies, ratings, {}, {});
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const auto s = train_test_split(catalog, 0.5, seed);
    EXPECT_LE(s.test.size(), 5u);
    for (const auto& t : s.test) {
      const auto& tr = s.train.ratings();
      EXPECT_TRUE(std::any_of(tr.begin(), tr.end(), [&](const Rating& r) { return r.user == t.user; }));
      EXPECT_TRUE(std::any_of(tr.begin(), tr.end(), [&](const Rating& r) { return r.movie == t.movie; }));
    }
  }
}

TEST(Split, FractionOutOfRangeThrows) {
  const auto c = fixture();
  EXPECT_THROW(train_test_split(c, 0.0, 1), std::invalid_argument);
  EXPECT_THROW(train_test_split(c, 1.0, 1), std::invalid_argument);
  EXPECT_THROW(train_test_split(c, -0.1, 1), std::invalid_argument);
}

#include "cinerank/catalog.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>
#include <unordered_set>

#include "cinerank/csv.hpp"
#include "cinerank/error.hpp"
#include "cinerank/random.hpp"

namespace cinerank {

bool RatingScale::contains(double value) const {
  if (!in_range(value)) return false;
  const double steps = (value - min) / step;
  return std::abs(steps - std::round(steps)) < 1e-9;
}

double RatingScale::clamp(double value) const { return std::clamp(value, min, max); }

std::size_t RatingScale::bin_count() const {
  return static_cast<std::size_t>(std::llround((max - min) / step)) + 1;
}

std::size_t RatingScale::bin_of(double value) const {
  const auto bin = std::llround((clamp(value) - min) / step);
  return std::min(static_cast<std::size_t>(bin), bin_count() - 1);
}

namespace {

std::string trim(std::string_view s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

// Returns the title with a trailing "(YYYY)" removed, and the year.
std::pair<std::string_view, std::optional<int>> split_title_year(std::string_view title) {
  std::size_t end = title.size();
  while (end > 0 && std::isspace(static_cast<unsigned char>(title[end - 1]))) --end;
  if (end >= 6 && title[end - 1] == ')' && title[end - 6] == '(') {
    const auto digits = title.substr(end - 5, 4);
    if (std::all_of(digits.begin(), digits.end(),
                    [](char c) { return std::isdigit(static_cast<unsigned char>(c)); })) {
      return {title.substr(0, end - 6), std::stoi(std::string(digits))};
    }
  }
  return {title, std::nullopt};
}

std::size_t edit_distance(std::string_view a, std::string_view b) {
  std::vector<std::size_t> prev(b.size() + 1), cur(b.size() + 1);
  for (std::size_t j = 0; j <= b.size(); ++j) prev[j] = j;
  for (std::size_t i = 1; i <= a.size(); ++i) {
    cur[0] = i;
    for (std::size_t j = 1; j <= b.size(); ++j) {
      const std::size_t sub = prev[j - 1] + (a[i - 1] == b[j - 1] ? 0 : 1);
      cur[j] = std::min({prev[j] + 1, cur[j - 1] + 1, sub});
    }
    std::swap(prev, cur);
  }
  return prev[b.size()];
}

class RowContext {
 public:
  RowContext(const std::string& file, std::size_t line) : file_(file), line_(line) {}

  [[noreturn]] void fail(std::string_view field, std::string_view problem) const {
    std::ostringstream os;
    os << file_ << ":" << line_ << ": field '" << field << "': " << problem;
    throw DataError(os.str());
  }

  std::int64_t integer(std::string_view field, const std::string& text) const {
    const std::string t = trim(text);
    std::int64_t value = 0;
    const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), value);
    if (t.empty() || ec != std::errc() || ptr != t.data() + t.size()) {
      fail(field, "expected integer, got '" + text + "'");
    }
    return value;
  }

  double real(std::string_view field, const std::string& text) const {
    const std::string t = trim(text);
    double value = 0;
    const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), value);
    if (t.empty() || ec != std::errc() || ptr != t.data() + t.size() || !std::isfinite(value)) {
      fail(field, "expected number, got '" + text + "'");
    }
    return value;
  }

  bool boolean(std::string_view field, const std::string& text) const {
    std::string t = trim(text);
    std::transform(t.begin(), t.end(), t.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    if (t == "true" || t == "1" || t == "yes") return true;
    if (t == "false" || t == "0" || t == "no") return false;
    fail(field, "expected boolean, got '" + text + "'");
  }

  std::size_t line() const { return line_; }

 private:
  const std::string& file_;
  std::size_t line_;
};

struct Table {
  std::string name;
  std::vector<csv::Record> rows;
};

Table read_table(const std::filesystem::path& path, const std::vector<std::string>& header) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError(path.string() + ": cannot open file");
  Table table{path.filename().string(), {}};
  csv::Reader reader(in, table.name);
  auto first = reader.next();
  if (!first) throw DataError(table.name + ":1: missing header");
  auto& cols = first->fields;
  if (!cols.empty() && cols[0].rfind("\xEF\xBB\xBF", 0) == 0) cols[0].erase(0, 3);
  for (auto& c : cols) c = trim(c);
  if (cols != header) {
    std::string expected;
    for (const auto& h : header) expected += (expected.empty() ? "" : ",") + h;
    throw DataError(table.name + ":1: header mismatch, expected '" + expected + "'");
  }
  while (auto rec = reader.next()) {
    if (rec->fields.size() == 1 && trim(rec->fields[0]).empty()) continue;
    if (rec->fields.size() != header.size()) {
      throw DataError(table.name + ":" + std::to_string(rec->line) + ": expected " +
                      std::to_string(header.size()) + " fields, got " +
                      std::to_string(rec->fields.size()));
    }
    table.rows.push_back(std::move(*rec));
  }
  return table;
}

std::vector<std::string> split_genres(std::string_view text) {
  std::set<std::string> genres;
  std::size_t start = 0;
  while (start <= text.size()) {
    const auto bar = text.find('|', start);
    const auto piece = trim(text.substr(start, bar == std::string_view::npos ? text.npos : bar - start));
    if (!piece.empty() && piece != "(no genres listed)") genres.insert(piece);
    if (bar == std::string_view::npos) break;
    start = bar + 1;
  }
  return {genres.begin(), genres.end()};
}

void parse_release_date(const RowContext& ctx, const std::string& text, Movie& movie) {
  const std::string t = trim(text);
  if (t.empty()) return;
  // YYYY, YYYY-MM or YYYY-MM-DD
  const auto year = ctx.integer("year", t.substr(0, 4));
  if (t.size() != 4 && !(t.size() >= 7 && t[4] == '-')) ctx.fail("year", "unrecognized date '" + t + "'");
  movie.release_year = static_cast<int>(year);
  if (t.size() >= 7) {
    const auto month = ctx.integer("year", t.substr(5, 2));
    if (month < 1 || month > 12) ctx.fail("year", "month out of range in '" + t + "'");
    movie.release_month = static_cast<int>(month);
  }
}

void require(bool condition, const std::string& message) {
  if (!condition) throw DataError(message);
}

}  // namespace

std::string normalize_title(std::string_view title) {
  const auto base = split_title_year(title).first;
  std::string out;
  bool pending_space = false;
  for (char raw : base) {
    const auto c = static_cast<unsigned char>(raw);
    if (std::isspace(c)) {
      pending_space = !out.empty();
    } else if (std::isalnum(c) || c >= 0x80) {
      if (pending_space) out.push_back(' ');
      pending_space = false;
      out.push_back(static_cast<char>(std::tolower(c)));
    }
  }
  return out;
}

std::optional<int> title_year(std::string_view title) { return split_title_year(title).second; }

CatalogPaths CatalogPaths::in_directory(const std::filesystem::path& dir) {
  CatalogPaths paths{dir / "movies.csv", dir / "ratings.csv", dir / "reviews.csv", std::nullopt};
  if (std::filesystem::exists(dir / "implicit.csv")) paths.implicit = dir / "implicit.csv";
  return paths;
}

Catalog Catalog::create(std::vector<Movie> movies, std::vector<Rating> ratings,
                        std::vector<CriticReview> reviews, std::vector<ImplicitEvent> implicit,
                        RatingScale scale) {
  require(scale.step > 0 && scale.min < scale.max, "invalid rating scale");
  Catalog c;
  c.scale_ = scale;
  std::sort(movies.begin(), movies.end(), [](const Movie& a, const Movie& b) { return a.id < b.id; });
  for (std::size_t i = 0; i < movies.size(); ++i) {
    auto& m = movies[i];
    require(!trim(m.title).empty(), "movie " + std::to_string(m.id.value()) + " has an empty title");
    require(!c.movie_index_.contains(m.id), "duplicate movie id " + std::to_string(m.id.value()));
    std::sort(m.genres.begin(), m.genres.end());
    m.genres.erase(std::unique(m.genres.begin(), m.genres.end()), m.genres.end());
    c.movie_index_.emplace(m.id, i);
    c.title_index_[normalize_title(m.title)].push_back(m.id);
  }
  c.movies_ = std::move(movies);

  std::set<std::pair<UserId, MovieId>> seen;
  for (const auto& r : ratings) {
    require(c.movie_index_.contains(r.movie),
            "rating references unknown movie " + std::to_string(r.movie.value()));
    require(scale.contains(r.value), "rating value out of scale: " + std::to_string(r.value));
    require(seen.emplace(r.user, r.movie).second,
            "duplicate rating for user " + std::to_string(r.user.value()) + ", movie " +
                std::to_string(r.movie.value()));
  }
  c.ratings_ = std::move(ratings);

  for (const auto& r : reviews) {
    require(c.movie_index_.contains(r.movie),
            "review references unknown movie " + std::to_string(r.movie.value()));
    require(r.raw_score >= 0.0 && r.raw_score <= 5.0,
            "review score out of [0, 5]: " + std::to_string(r.raw_score));
  }
  c.reviews_ = std::move(reviews);

  seen.clear();
  for (const auto& e : implicit) {
    require(c.movie_index_.contains(e.movie),
            "implicit event references unknown movie " + std::to_string(e.movie.value()));
    require(e.watch_fraction >= 0.0 && e.watch_fraction <= 1.0, "watch fraction out of [0, 1]");
    require(e.watch_count >= 0, "negative watch count");
    require(e.watched || e.watch_fraction == 0.0, "unwatched event with nonzero watch fraction");
    require(seen.emplace(e.user, e.movie).second,
            "duplicate implicit event for user " + std::to_string(e.user.value()) + ", movie " +
                std::to_string(e.movie.value()));
  }
  c.implicit_ = std::move(implicit);
  return c;
}

const Movie* Catalog::find_movie(MovieId id) const {
  const auto it = movie_index_.find(id);
  return it == movie_index_.end() ? nullptr : &movies_[it->second];
}

const Movie& Catalog::movie(MovieId id) const {
  const auto* m = find_movie(id);
  if (!m) throw DataError("unknown movie id " + std::to_string(id.value()));
  return *m;
}

std::vector<MovieId> Catalog::find_by_title(std::string_view title) const {
  const auto it = title_index_.find(normalize_title(title));
  if (it == title_index_.end()) return {};
  return it->second;
}

std::vector<std::string> Catalog::closest_titles(std::string_view title, std::size_t limit) const {
  const std::string key = normalize_title(title);
  std::vector<std::pair<std::size_t, std::string>> scored;
  scored.reserve(movies_.size());
  for (const auto& m : movies_) scored.emplace_back(edit_distance(key, normalize_title(m.title)), m.title);
  std::sort(scored.begin(), scored.end());
  std::vector<std::string> out;
  for (const auto& [dist, t] : scored) {
    if (out.size() == limit) break;
    if (std::find(out.begin(), out.end(), t) == out.end()) out.push_back(t);
  }
  return out;
}

std::vector<std::string> Catalog::genre_universe() const {
  std::set<std::string> all;
  for (const auto& m : movies_) all.insert(m.genres.begin(), m.genres.end());
  return {all.begin(), all.end()};
}

Catalog Catalog::with_ratings(std::vector<Rating> ratings) const {
  Catalog c = create(movies_, std::move(ratings), reviews_, implicit_, scale_);
  c.dropped_reviews_ = dropped_reviews_;
  return c;
}

bool Catalog::operator==(const Catalog& other) const {
  return movies_ == other.movies_ && ratings_ == other.ratings_ && reviews_ == other.reviews_ &&
         implicit_ == other.implicit_ && scale_ == other.scale_ &&
         dropped_reviews_ == other.dropped_reviews_;
}

Catalog load_catalog(const CatalogPaths& paths, RatingScale scale) {
  std::vector<Movie> movies;
  {
    const auto table = read_table(paths.movies, {"movieId", "title", "genres", "year", "summary"});
    std::unordered_set<MovieId> ids;
    for (const auto& row : table.rows) {
      const RowContext ctx(table.name, row.line);
      Movie m;
      m.id = MovieId(ctx.integer("movieId", row.fields[0]));
      m.title = trim(row.fields[1]);
      if (m.title.empty()) ctx.fail("title", "empty title");
      if (!ids.insert(m.id).second) ctx.fail("movieId", "duplicate movie id " + row.fields[0]);
      m.genres = split_genres(row.fields[2]);
      parse_release_date(ctx, row.fields[3], m);
      if (!m.release_year) m.release_year = title_year(m.title);
      m.summary = row.fields[4];
      movies.push_back(std::move(m));
    }
  }
  std::unordered_set<MovieId> movie_ids;
  std::map<std::string, std::vector<const Movie*>> by_title;
  for (const auto& m : movies) {
    movie_ids.insert(m.id);
    by_title[normalize_title(m.title)].push_back(&m);
  }

  std::vector<Rating> ratings;
  {
    const auto table = read_table(paths.ratings, {"userId", "movieId", "rating", "timestamp"});
    std::set<std::pair<UserId, MovieId>> seen;
    for (const auto& row : table.rows) {
      const RowContext ctx(table.name, row.line);
      Rating r;
      r.user = UserId(ctx.integer("userId", row.fields[0]));
      r.movie = MovieId(ctx.integer("movieId", row.fields[1]));
      r.value = ctx.real("rating", row.fields[2]);
      if (!trim(row.fields[3]).empty()) r.timestamp = ctx.integer("timestamp", row.fields[3]);
      if (!scale.contains(r.value)) {
        throw DataError(table.name + ": value out of scale at line " + std::to_string(row.line) +
                        " (field 'rating' = " + trim(row.fields[2]) + ")");
      }
      if (!movie_ids.contains(r.movie)) ctx.fail("movieId", "unknown movie id " + trim(row.fields[1]));
      if (!seen.emplace(r.user, r.movie).second) {
        ctx.fail("movieId", "duplicate rating for user " + trim(row.fields[0]) + " and movie " +
                                trim(row.fields[1]));
      }
      ratings.push_back(r);
    }
  }

  std::vector<CriticReview> reviews;
  std::size_t dropped = 0;
  {
    const auto table = read_table(paths.reviews, {"movieId", "title", "source", "rawScore", "reviewText"});
    for (const auto& row : table.rows) {
      const RowContext ctx(table.name, row.line);
      CriticReview rv;
      const std::string id_text = trim(row.fields[0]);
      const bool has_claim = !id_text.empty();
      const MovieId claimed = has_claim ? MovieId(ctx.integer("movieId", id_text)) : MovieId();
      rv.source = trim(row.fields[2]);
      rv.raw_score = ctx.real("rawScore", row.fields[3]);
      if (rv.raw_score < 0.0 || rv.raw_score > 5.0) ctx.fail("rawScore", "score out of [0, 5]");
      rv.review_text = row.fields[4];

      const auto it = by_title.find(normalize_title(row.fields[1]));
      if (it == by_title.end()) {
        ++dropped;
        continue;
      }
      std::vector<const Movie*> candidates = it->second;
      const auto claimed_match = std::find_if(candidates.begin(), candidates.end(),
                                              [&](const Movie* m) { return has_claim && m->id == claimed; });
      if (claimed_match != candidates.end()) {
        rv.movie = (*claimed_match)->id;
      } else {
        if (candidates.size() > 1) {
          if (const auto year = title_year(row.fields[1])) {
            std::erase_if(candidates, [&](const Movie* m) { return m->release_year != year; });
          }
        }
        if (candidates.size() != 1) {
          ++dropped;
          continue;
        }
        rv.movie = candidates.front()->id;
      }
      reviews.push_back(std::move(rv));
    }
  }

  std::vector<ImplicitEvent> implicit;
  if (paths.implicit) {
    const auto table =
        read_table(*paths.implicit, {"userId", "movieId", "watched", "watchFraction", "watchCount"});
    std::set<std::pair<UserId, MovieId>> seen;
    for (const auto& row : table.rows) {
      const RowContext ctx(table.name, row.line);
      ImplicitEvent e;
      e.user = UserId(ctx.integer("userId", row.fields[0]));
      e.movie = MovieId(ctx.integer("movieId", row.fields[1]));
      e.watched = ctx.boolean("watched", row.fields[2]);
      e.watch_fraction = ctx.real("watchFraction", row.fields[3]);
      e.watch_count = ctx.integer("watchCount", row.fields[4]);
      if (!movie_ids.contains(e.movie)) ctx.fail("movieId", "unknown movie id " + trim(row.fields[1]));
      if (e.watch_fraction < 0.0 || e.watch_fraction > 1.0) ctx.fail("watchFraction", "out of [0, 1]");
      if (e.watch_count < 0) ctx.fail("watchCount", "negative count");
      if (!e.watched && e.watch_fraction != 0.0) {
        ctx.fail("watchFraction", "must be 0 when watched is false");
      }
      if (!seen.emplace(e.user, e.movie).second) ctx.fail("movieId", "duplicate implicit event");
      implicit.push_back(e);
    }
  }

  Catalog catalog = Catalog::create(std::move(movies), std::move(ratings), std::move(reviews),
                                    std::move(implicit), scale);
  catalog.dropped_reviews_ = dropped;
  return catalog;
}

SummaryStats summary_stats(const Catalog& catalog) {
  SummaryStats stats;
  for (const auto& m : catalog.movies()) {
    if (m.release_year) {
      ++stats.movies_per_year[*m.release_year];
    } else {
      ++stats.unknown_year;
    }
    if (m.release_month) {
      ++stats.movies_per_month[static_cast<std::size_t>(*m.release_month - 1)];
    } else {
      ++stats.unknown_month;
    }
  }
  const auto& scale = catalog.scale();
  stats.rating_histogram.resize(scale.bin_count());
  for (std::size_t b = 0; b < stats.rating_histogram.size(); ++b) {
    stats.rating_histogram[b] = {scale.bin_value(b), 0};
  }
  for (const auto& r : catalog.ratings()) ++stats.rating_histogram[scale.bin_of(r.value)].second;
  return stats;
}

Split train_test_split(const Catalog& catalog, double holdout_fraction, std::uint64_t seed) {
  if (!(holdout_fraction > 0.0 && holdout_fraction < 1.0)) {
    throw std::invalid_argument("holdout fraction must lie strictly between 0 and 1");
  }
  const auto ratings = catalog.ratings();
  const auto target = static_cast<std::size_t>(std::floor(holdout_fraction * static_cast<double>(ratings.size())));

  std::vector<std::size_t> order(ratings.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  Rng rng(seed);
  for (std::size_t i = order.size(); i > 1; --i) {
    std::swap(order[i - 1], order[rng.below(i)]);
  }

  std::unordered_map<UserId, std::size_t> per_user;
  std::unordered_map<MovieId, std::size_t> per_movie;
  for (const auto& r : ratings) {
    ++per_user[r.user];
    ++per_movie[r.movie];
  }
  std::vector<bool> held(ratings.size(), false);
  std::size_t taken = 0;
  for (const std::size_t i : order) {
    if (taken == target) break;
    const auto& r = ratings[i];
    if (per_user[r.user] < 2 || per_movie[r.movie] < 2) continue;
    --per_user[r.user];
    --per_movie[r.movie];
    held[i] = true;
    ++taken;
  }

  Split split;
  std::vector<Rating> train;
  for (std::size_t i = 0; i < ratings.size(); ++i) {
    (held[i] ? split.test : train).push_back(ratings[i]);
  }
  split.train = catalog.with_ratings(std::move(train));
  return split;
}

}  // namespace cinerank

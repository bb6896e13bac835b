#include <algorithm>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

#include "cinerank/ranker.hpp"

namespace cinerank {

namespace {

std::vector<RankedMovie> rated_movies(const Catalog& catalog) {
  std::unordered_map<MovieId, std::pair<double, std::size_t>> acc;
  for (const auto& r : catalog.ratings()) {
    auto& [sum, count] = acc[r.movie];
    sum += r.value;
    ++count;
  }
  std::vector<RankedMovie> out;
  for (const auto& m : catalog.movies()) {
    RankedMovie rm{m.id, m.title, 0.0, 0, m.release_year};
    if (const auto it = acc.find(m.id); it != acc.end()) {
      rm.rating_count = it->second.second;
      rm.mean_rating = it->second.first / static_cast<double>(rm.rating_count);
    }
    out.push_back(std::move(rm));
  }
  return out;
}

bool by_rating(const RankedMovie& a, const RankedMovie& b) {
  if (a.mean_rating != b.mean_rating) return a.mean_rating > b.mean_rating;
  if (a.rating_count != b.rating_count) return a.rating_count > b.rating_count;
  if (a.title != b.title) return a.title < b.title;
  return a.movie < b.movie;
}

std::vector<RankedMovie> top_rated(const Catalog& catalog, std::size_t min_count) {
  auto all = rated_movies(catalog);
  std::erase_if(all, [&](const RankedMovie& m) { return m.rating_count == 0 || m.rating_count < min_count; });
  std::sort(all.begin(), all.end(), by_rating);
  return all;
}

std::vector<RankedMovie> recent(const Catalog& catalog) {
  auto all = rated_movies(catalog);
  std::erase_if(all, [](const RankedMovie& m) { return !m.release_year; });
  std::sort(all.begin(), all.end(), [](const RankedMovie& a, const RankedMovie& b) {
    if (*a.release_year != *b.release_year) return *a.release_year > *b.release_year;
    if (a.title != b.title) return a.title < b.title;
    return a.movie < b.movie;
  });
  return all;
}

}  // namespace

ColdStartStrategy parse_cold_start_strategy(std::string_view text) {
  if (text == "top_rated") return ColdStartStrategy::kTopRated;
  if (text == "recent") return ColdStartStrategy::kRecent;
  if (text == "blend") return ColdStartStrategy::kBlend;
  throw std::invalid_argument("unknown cold-start strategy '" + std::string(text) +
                              "' (expected top_rated|recent|blend)");
}

std::vector<RankedMovie> cold_start_user(const Catalog& catalog, std::size_t n, ColdStartStrategy strategy,
                                         std::size_t min_count) {
  std::vector<RankedMovie> out;
  switch (strategy) {
    case ColdStartStrategy::kTopRated: out = top_rated(catalog, min_count); break;
    case ColdStartStrategy::kRecent: out = recent(catalog); break;
    case ColdStartStrategy::kBlend: {
      const auto a = top_rated(catalog, min_count);
      const auto b = recent(catalog);
      std::unordered_set<MovieId> seen;
      for (std::size_t i = 0; i < std::max(a.size(), b.size()); ++i) {
        if (i < a.size() && seen.insert(a[i].movie).second) out.push_back(a[i]);
        if (i < b.size() && seen.insert(b[i].movie).second) out.push_back(b[i]);
      }
      break;
    }
  }
  if (out.size() > n) out.resize(n);
  return out;
}

std::vector<RankedMovie> cold_start_item(const Catalog& catalog, const Movie& new_movie, std::size_t n,
                                         std::size_t min_count) {
  if (new_movie.genres.empty()) {
    throw std::invalid_argument("new movie '" + new_movie.title + "' has no genres to match on");
  }
  auto out = top_rated(catalog, std::max<std::size_t>(min_count, 1));
  std::erase_if(out, [&](const RankedMovie& rm) {
    if (rm.movie == new_movie.id) return true;
    const auto& genres = catalog.movie(rm.movie).genres;
    return std::none_of(genres.begin(), genres.end(), [&](const std::string& g) {
      return std::find(new_movie.genres.begin(), new_movie.genres.end(), g) != new_movie.genres.end();
    });
  });
  if (out.size() > n) out.resize(n);
  return out;
}

}  // namespace cinerank

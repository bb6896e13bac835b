#include <algorithm>
#include <stdexcept>

#include "cinerank/parallel.hpp"
#include "cinerank/weight_opt.hpp"

namespace cinerank {

const FuzzyProfile* FuzzyProfiles::find(UserId user) const {
  const auto it = profiles.find(user);
  return it == profiles.end() ? nullptr : &it->second;
}

FuzzyProfiles build_fuzzy_profiles(const Catalog& catalog) {
  FuzzyProfiles out;
  out.genres = catalog.genre_universe();
  const std::size_t g = out.genres.size();
  std::map<UserId, std::pair<std::vector<double>, std::vector<std::size_t>>> tallies;
  for (const auto& r : catalog.ratings()) {
    auto& [sums, counts] = tallies[r.user];
    if (sums.empty()) {
      sums.assign(g, 0.0);
      counts.assign(g, 0);
    }
    for (const auto& genre : catalog.movie(r.movie).genres) {
      const auto idx = static_cast<std::size_t>(
          std::lower_bound(out.genres.begin(), out.genres.end(), genre) - out.genres.begin());
      sums[idx] += r.value;
      ++counts[idx];
    }
  }
  const double scale_max = catalog.scale().max;
  for (const auto& [user, tally] : tallies) {
    FuzzyProfile p{user, std::vector<double>(g, 0.0)};
    for (std::size_t i = 0; i < g; ++i) {
      if (tally.second[i] > 0) {
        p.membership[i] = std::clamp(tally.first[i] / static_cast<double>(tally.second[i]) / scale_max, 0.0, 1.0);
      }
    }
    out.profiles.emplace(user, std::move(p));
  }
  return out;
}

double fuzzy_similarity(const FuzzyProfile& a, const FuzzyProfile& b, std::span<const double> weights) {
  if (a.membership.size() != b.membership.size() || weights.size() != a.membership.size()) {
    throw std::invalid_argument("fuzzy profiles and weights must share the genre universe");
  }
  double num = 0.0, den = 0.0;
  bool both_zero = true;
  for (std::size_t g = 0; g < weights.size(); ++g) {
    const double x = a.membership[g], y = b.membership[g];
    if (x != 0.0 || y != 0.0) both_zero = false;
    num += weights[g] * std::min(x, y);
    den += weights[g] * std::max(x, y);
  }
  if (both_zero) return 1.0;
  if (den <= 0.0) return 0.0;
  return std::clamp(num / den, 0.0, 1.0);
}

SimilarityMatrix fuzzy_similarity_matrix(const RatingMatrix& matrix, const FuzzyProfiles& profiles,
                                         std::span<const double> genre_weights, std::size_t threads) {
  if (genre_weights.size() != profiles.genres.size()) {
    throw std::invalid_argument("genre weight vector has length " + std::to_string(genre_weights.size()) +
                                ", expected " + std::to_string(profiles.genres.size()));
  }
  for (double w : genre_weights) {
    if (!(w >= 0.0)) throw std::invalid_argument("weights must be nonnegative");
  }
  const std::size_t n = matrix.user_count();
  std::vector<std::int64_t> ids(n);
  std::vector<const FuzzyProfile*> prof(n);
  for (std::size_t u = 0; u < n; ++u) {
    ids[u] = matrix.users()[u].value();
    prof[u] = profiles.find(matrix.users()[u]);
  }
  std::vector<std::uint32_t> co(n * n, 0);
  for (std::size_t i = 0; i < matrix.item_count(); ++i) {
    const auto col = matrix.item_column(i);
    for (std::size_t x = 0; x < col.size(); ++x) {
      for (std::size_t y = x + 1; y < col.size(); ++y) {
        ++co[col[x].index * n + col[y].index];
        ++co[col[y].index * n + col[x].index];
      }
    }
  }
  SimilarityMatrix sim(Axis::kUser, Metric::kFuzzy, 0, std::move(ids));
  parallel_for(n, threads, [&](std::size_t a) {
    const auto own = static_cast<std::uint32_t>(matrix.user_row(a).size());
    sim.set(a, a, own > 0 ? 1.0 : 0.0, own);
    for (std::size_t b = a + 1; b < n; ++b) {
      const double s = (prof[a] && prof[b]) ? fuzzy_similarity(*prof[a], *prof[b], genre_weights) : 0.0;
      sim.set(a, b, s, co[a * n + b]);
      sim.set(b, a, s, co[a * n + b]);
    }
  });
  return sim;
}

}  // namespace cinerank

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

#include "cinerank/cf.hpp"
#include "cinerank/error.hpp"

namespace cinerank {

std::string_view to_string(CfMode mode) {
  switch (mode) {
    case CfMode::kUserUser: return "user_user";
    case CfMode::kItemItem: return "item_item";
    case CfMode::kBoth: return "both";
  }
  return "?";
}

std::string_view to_string(CfOrigin origin) {
  switch (origin) {
    case CfOrigin::kUserUser: return "user_user";
    case CfOrigin::kItemItem: return "item_item";
    case CfOrigin::kBoth: return "both";
  }
  return "?";
}

CfMode parse_cf_mode(std::string_view text) {
  for (CfMode m : {CfMode::kUserUser, CfMode::kItemItem, CfMode::kBoth}) {
    if (text == to_string(m)) return m;
  }
  throw std::invalid_argument("unknown cf mode '" + std::string(text) +
                              "' (expected user_user|item_item|both)");
}

namespace {

bool by_similarity(const Neighbor& a, const Neighbor& b) {
  if (a.similarity != b.similarity) return a.similarity > b.similarity;
  return a.id < b.id;
}

}  // namespace

NeighborSet knn_neighbors(const SimilarityMatrix& sim, std::int64_t target_id, std::size_t k) {
  if (k == 0) throw std::invalid_argument("k must be >= 1");
  const auto target = sim.index_of(target_id);
  if (!target) {
    throw DataError("unknown " + std::string(to_string(sim.axis())) + " id " + std::to_string(target_id));
  }
  NeighborSet out{target_id, {}};
  for (std::size_t j = 0; j < sim.size(); ++j) {
    if (j == *target || sim.co_count(*target, j) == 0) continue;
    out.neighbors.push_back({j, sim.ids()[j], sim.at(*target, j)});
  }
  const auto keep = std::min(k, out.neighbors.size());
  std::partial_sort(out.neighbors.begin(), out.neighbors.begin() + static_cast<std::ptrdiff_t>(keep),
                    out.neighbors.end(), by_similarity);
  out.neighbors.resize(keep);
  return out;
}

Prediction predict_rating(const RatingMatrix& matrix, const SimilarityMatrix& sim, UserId user,
                          MovieId movie, std::size_t k) {
  if (k == 0) throw std::invalid_argument("k must be >= 1");
  const auto u = matrix.user_index(user);
  if (!u) throw DataError("unknown user id " + std::to_string(user.value()));
  const auto m = matrix.item_index(movie);
  if (!m) throw DataError("unknown movie id " + std::to_string(movie.value()));

  const bool by_user = sim.axis() == Axis::kUser;
  const std::int64_t target_id = by_user ? user.value() : movie.value();
  const auto target = sim.index_of(target_id);
  if (!target) {
    throw DataError(std::string(to_string(sim.axis())) + " " + std::to_string(target_id) +
                    " is not in the similarity matrix");
  }

  struct Term {
    double similarity;
    std::int64_t id;
    double deviation;
  };
  std::vector<Term> terms;
  if (by_user) {
    for (const auto& e : matrix.item_column(*m)) {
      if (e.index == *u) continue;
      const auto other = sim.index_of(matrix.users()[e.index].value());
      if (!other || sim.co_count(*target, *other) == 0) continue;
      terms.push_back({sim.at(*target, *other), matrix.users()[e.index].value(),
                       e.value - matrix.user_mean(e.index)});
    }
  } else {
    for (const auto& e : matrix.user_row(*u)) {
      if (e.index == *m) continue;
      const auto other = sim.index_of(matrix.items()[e.index].value());
      if (!other || sim.co_count(*target, *other) == 0) continue;
      terms.push_back({sim.at(*target, *other), matrix.items()[e.index].value(),
                       e.value - matrix.item_mean(e.index)});
    }
  }
  const auto keep = std::min(k, terms.size());
  std::partial_sort(terms.begin(), terms.begin() + static_cast<std::ptrdiff_t>(keep), terms.end(),
                    [](const Term& a, const Term& b) {
                      if (a.similarity != b.similarity) return a.similarity > b.similarity;
                      return a.id < b.id;
                    });
  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < keep; ++i) {
    num += terms[i].similarity * terms[i].deviation;
    den += std::abs(terms[i].similarity);
  }
  Prediction p;
  p.neighbors_used = keep;
  if (den == 0.0) {
    p.value = matrix.scale().clamp(matrix.user_mean(*u));
    p.fallback = true;
    return p;
  }
  const double base = by_user ? matrix.user_mean(*u) : matrix.item_mean(*m);
  p.value = matrix.scale().clamp(base + num / den);
  return p;
}

std::vector<CfCandidate> recommend_cf(const RatingMatrix& matrix, const SimilarityMatrix* user_sim,
                                      const SimilarityMatrix* item_sim, CfMode mode,
                                      const CfTarget& target, std::size_t n, const CfOptions& options) {
  const bool wants_user = mode != CfMode::kItemItem;
  const bool wants_item = mode != CfMode::kUserUser;
  if (wants_user && (!user_sim || user_sim->axis() != Axis::kUser)) {
    throw std::invalid_argument("user-axis similarity matrix required for mode " + std::string(to_string(mode)));
  }
  if (wants_item && (!item_sim || item_sim->axis() != Axis::kItem)) {
    throw std::invalid_argument("item-axis similarity matrix required for mode " + std::string(to_string(mode)));
  }
  if (wants_user && !target.user) throw std::invalid_argument("mode " + std::string(to_string(mode)) + " needs a target user");
  if (mode == CfMode::kItemItem && !target.seed) throw std::invalid_argument("item_item mode needs a seed movie");

  std::optional<std::size_t> u;
  if (target.user) {
    u = matrix.user_index(*target.user);
    if (!u) throw DataError("unknown user id " + std::to_string(target.user->value()));
  }
  if (target.seed && !matrix.item_index(*target.seed)) {
    throw DataError("unknown movie id " + std::to_string(target.seed->value()));
  }
  auto rated_by_target = [&](std::size_t item) { return u && matrix.entry(*u, item) != nullptr; };

  std::map<MovieId, CfCandidate> pool;
  auto offer = [&](MovieId movie, double score, CfOrigin origin) {
    auto [it, inserted] = pool.try_emplace(movie, CfCandidate{movie, score, origin});
    if (inserted) return;
    if (it->second.origin != origin) it->second.origin = CfOrigin::kBoth;
    it->second.score = std::max(it->second.score, score);
  };

  if (wants_user) {
    const auto neighbors = knn_neighbors(*user_sim, target.user->value(), options.k);
    std::map<std::size_t, std::size_t> likers;
    for (const auto& nb : neighbors.neighbors) {
      const auto v = matrix.user_index(UserId(nb.id));
      if (!v) continue;
      for (const auto& e : matrix.user_row(*v)) {
        if (e.value >= options.like_threshold) ++likers[e.index];
      }
    }
    for (const auto& [item, count] : likers) {
      if (count < options.min_likers || rated_by_target(item)) continue;
      const MovieId movie = matrix.items()[item];
      offer(movie, predict_rating(matrix, *user_sim, *target.user, movie, options.k).value, CfOrigin::kUserUser);
    }
  }

  if (mode == CfMode::kItemItem) {
    const auto neighbors = knn_neighbors(*item_sim, target.seed->value(), std::max<std::size_t>(n, 1));
    for (const auto& nb : neighbors.neighbors) {
      const auto item = matrix.item_index(MovieId(nb.id));
      if (item && rated_by_target(*item)) continue;
      offer(MovieId(nb.id), nb.similarity, CfOrigin::kItemItem);
    }
  } else if (mode == CfMode::kBoth) {
    std::vector<MovieId> seeds;
    if (target.seed) {
      seeds.push_back(*target.seed);
    } else {
      for (const auto& e : matrix.user_row(*u)) {
        if (e.value >= options.like_threshold) seeds.push_back(matrix.items()[e.index]);
      }
    }
    for (const MovieId seed : seeds) {
      for (const auto& nb : knn_neighbors(*item_sim, seed.value(), options.k).neighbors) {
        const auto item = matrix.item_index(MovieId(nb.id));
        if (!item || rated_by_target(*item) || MovieId(nb.id) == target.seed) continue;
        offer(MovieId(nb.id), predict_rating(matrix, *item_sim, *target.user, MovieId(nb.id), options.k).value,
              CfOrigin::kItemItem);
      }
    }
  }

  std::vector<CfCandidate> out;
  out.reserve(pool.size());
  for (auto& [movie, c] : pool) out.push_back(c);
  std::sort(out.begin(), out.end(), [](const CfCandidate& a, const CfCandidate& b) {
    if (a.score != b.score) return a.score > b.score;
    return a.movie < b.movie;
  });
  if (out.size() > n) out.resize(n);
  return out;
}

}  // namespace cinerank

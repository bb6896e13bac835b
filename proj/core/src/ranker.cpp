#include "cinerank/ranker.hpp"

#include <algorithm>
#include <cstdio>
#include <memory>
#include <ostream>
#include <stdexcept>

#include "cinerank/error.hpp"
#include "cinerank/parallel.hpp"

namespace cinerank {

namespace {

MovieId resolve_seed(const Catalog& catalog, std::string_view title) {
  auto ids = catalog.find_by_title(title);
  if (ids.empty()) {
    std::string msg = "unknown seed title '" + std::string(title) + "'";
    const auto near = catalog.closest_titles(title, 3);
    if (!near.empty()) {
      msg += "; closest matches:";
      for (std::size_t i = 0; i < near.size(); ++i) msg += (i ? ", '" : " '") + near[i] + "'";
    }
    throw DataError(msg);
  }
  if (ids.size() > 1) {
    if (const auto year = title_year(title)) {
      const auto it = std::find_if(ids.begin(), ids.end(),
                                   [&](MovieId id) {
                                     const Movie& m = catalog.movie(id);
                                     return (m.release_year ? m.release_year : title_year(m.title)) == year;
                                   });
      if (it != ids.end()) return *it;
    }
  }
  return ids.front();
}

CfOrigin origin_of(CfMode mode) {
  switch (mode) {
    case CfMode::kUserUser: return CfOrigin::kUserUser;
    case CfMode::kItemItem: return CfOrigin::kItemItem;
    case CfMode::kBoth: return CfOrigin::kBoth;
  }
  return CfOrigin::kItemItem;
}

std::string python_quote(std::string_view s) {
  const char q = (s.find('\'') != std::string_view::npos && s.find('"') == std::string_view::npos) ? '"' : '\'';
  std::string out(1, q);
  for (char c : s) {
    if (c == q || c == '\\') out.push_back('\\');
    out.push_back(c);
  }
  out.push_back(q);
  return out;
}

}  // namespace

std::string content_text(const Movie& movie) {
  const bool blank = std::all_of(movie.summary.begin(), movie.summary.end(),
                                 [](unsigned char c) { return std::isspace(c); });
  return blank ? movie.title : movie.summary;
}

HybridResult recommend_hybrid(const Catalog& catalog, std::string_view seed_title, const PipelineConfig& config) {
  if (config.k == 0) throw std::invalid_argument("k must be >= 1");
  if (config.n > config.pool_size) throw std::invalid_argument("output size n must not exceed the candidate pool size");
  if (config.cf_mode != CfMode::kItemItem && !config.user) {
    throw std::invalid_argument("cf mode " + std::string(to_string(config.cf_mode)) + " needs a target user");
  }

  HybridResult result;
  result.seed = resolve_seed(catalog, seed_title);
  const Movie& seed = catalog.movie(result.seed);
  result.seed_title = seed.title;

  std::vector<CfCandidate> pool;
  if (catalog.ratings().empty()) {
    result.diagnostic = "catalog has no ratings; collaborative filtering cannot produce candidates";
  } else {
    const auto matrix = build_rating_matrix(catalog);
    std::optional<SimilarityMatrix> user_sim, item_sim;
    if (config.cf_mode != CfMode::kItemItem) {
      if (!config.genre_weights.empty()) {
        user_sim = fuzzy_similarity_matrix(matrix, build_fuzzy_profiles(catalog), config.genre_weights, config.threads);
      } else {
        user_sim = similarity_matrix(matrix, Axis::kUser, {config.metric, std::nullopt, config.user_weights, config.threads});
      }
    }
    if (config.cf_mode != CfMode::kUserUser) {
      item_sim = similarity_matrix(matrix, Axis::kItem, {config.metric, std::nullopt, config.item_weights, config.threads});
    }
    CfTarget target{config.user, result.seed};
    pool = recommend_cf(matrix, user_sim ? &*user_sim : nullptr, item_sim ? &*item_sim : nullptr, config.cf_mode,
                        target, config.pool_size, {config.k, config.like_threshold, 2});
    std::erase_if(pool, [&](const CfCandidate& c) { return c.movie == result.seed; });
    if (pool.empty()) {
      result.diagnostic = "collaborative filtering found no candidates for '" + seed.title + "'";
    }
  }
  if (config.include_seed) pool.push_back({result.seed, 0.0, origin_of(config.cf_mode)});
  if (pool.empty()) return result;

  std::unique_ptr<TfidfProvider> fitted;
  const EmbeddingProvider* provider = config.embeddings;
  if (!provider) {
    std::vector<std::string> texts;
    texts.reserve(catalog.movies().size());
    for (const auto& m : catalog.movies()) texts.push_back(content_text(m));
    fitted = std::make_unique<TfidfProvider>(TfidfProvider::fit_texts(texts, config.max_vocab, config.preprocess));
    provider = fitted.get();
  }
  const auto seed_vec = provider->embed_document(seed.id, content_text(seed));
  const auto consensus = config.critic_enabled ? critic_consensus(catalog, config.critic)
                                               : std::unordered_map<MovieId, CriticConsensus>{};

  std::vector<Recommendation> rows(pool.size());
  parallel_for(pool.size(), config.threads, [&](std::size_t i) {
    const Movie& m = catalog.movie(pool[i].movie);
    Recommendation& r = rows[i];
    r.movie = m.id;
    r.title = m.title;
    r.origin = pool[i].origin;
    r.content_cosine = cosine_similarity(seed_vec, provider->embed_document(m.id, content_text(m)));
    r.critic_bonus = config.critic_enabled ? config.critic_weight * consensus.at(m.id).normalized : 0.0;
    r.fused_score = r.content_cosine + r.critic_bonus;
  });
  std::sort(rows.begin(), rows.end(), [](const Recommendation& a, const Recommendation& b) {
    if (a.fused_score != b.fused_score) return a.fused_score > b.fused_score;
    if (a.title != b.title) return a.title < b.title;
    return a.movie < b.movie;
  });
  if (rows.size() > config.n) rows.resize(config.n);
  result.items = std::move(rows);
  return result;
}

OutputFormat parse_output_format(std::string_view text) {
  if (text == "table") return OutputFormat::kTable;
  if (text == "tsv") return OutputFormat::kTsv;
  if (text == "tuples") return OutputFormat::kTuples;
  throw std::invalid_argument("unknown output format '" + std::string(text) + "' (expected table|tsv|tuples)");
}

std::string format_score(double value) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.7f", value);
  return buf;
}

void render(std::ostream& out, const HybridResult& result, OutputFormat format) {
  switch (format) {
    case OutputFormat::kTsv:
      for (const auto& r : result.items) {
        out << r.title << '\t' << format_score(r.fused_score) << '\t' << format_score(r.content_cosine) << '\t'
            << format_score(r.critic_bonus) << '\n';
      }
      break;
    case OutputFormat::kTuples:
      out << '[';
      for (std::size_t i = 0; i < result.items.size(); ++i) {
        const auto& r = result.items[i];
        out << (i ? " " : "") << '(' << python_quote(r.title) << ", " << format_score(r.fused_score) << ')'
            << (i + 1 < result.items.size() ? ",\n" : "");
      }
      out << "]\n";
      break;
    case OutputFormat::kTable: {
      std::size_t width = 5;
      for (const auto& r : result.items) width = std::max(width, r.title.size());
      char line[512];
      std::snprintf(line, sizeof line, "%4s  %-*s  %10s  %10s  %10s  %s\n", "rank", static_cast<int>(width), "title",
                    "fused", "cosine", "critic", "origin");
      out << line;
      for (std::size_t i = 0; i < result.items.size(); ++i) {
        const auto& r = result.items[i];
        std::snprintf(line, sizeof line, "%4zu  %-*s  %10s  %10s  %10s  %s\n", i + 1, static_cast<int>(width),
                      r.title.c_str(), format_score(r.fused_score).c_str(), format_score(r.content_cosine).c_str(),
                      format_score(r.critic_bonus).c_str(), std::string(to_string(r.origin)).c_str());
        out << line;
      }
      break;
    }
  }
}

}  // namespace cinerank

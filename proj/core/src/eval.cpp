#include "cinerank/eval.hpp"

#include <algorithm>
#include <chrono>
#include <ostream>
#include <stdexcept>

#include "cinerank/error.hpp"
#include "cinerank/ranker.hpp"

namespace cinerank {

namespace {

struct Scored {
  double mae = 0.0;
  double coverage = 0.0;
  std::size_t count = 0;
};

Scored score(const RatingMatrix& train, const SimilarityMatrix& sim, std::span<const Rating> test, std::size_t k) {
  std::vector<std::pair<double, double>> pairs;
  pairs.reserve(test.size());
  std::size_t covered = 0;
  for (const auto& r : test) {
    const auto p = predict_rating(train, sim, r.user, r.movie, k);
    pairs.emplace_back(p.value, r.value);
    if (!p.fallback) ++covered;
  }
  return {mae(pairs), static_cast<double>(covered) / static_cast<double>(test.size()), test.size()};
}

}  // namespace

std::string_view to_string(Variant variant) {
  switch (variant) {
    case Variant::kPlain: return "plain";
    case Variant::kGaWeighted: return "ga_weighted";
    case Variant::kPsoFuzzy: return "pso_fuzzy";
    case Variant::kImplicitAugmented: return "implicit_augmented";
  }
  return "plain";
}

Variant parse_variant(std::string_view text) {
  for (auto v : {Variant::kPlain, Variant::kGaWeighted, Variant::kPsoFuzzy, Variant::kImplicitAugmented}) {
    if (to_string(v) == text) return v;
  }
  throw std::invalid_argument("unknown variant '" + std::string(text) +
                              "' (expected plain|ga_weighted|pso_fuzzy|implicit_augmented)");
}

std::vector<Variant> parse_variant_list(std::string_view text) {
  std::vector<Variant> out;
  while (!text.empty()) {
    const auto comma = text.find(',');
    out.push_back(parse_variant(text.substr(0, comma)));
    if (comma == std::string_view::npos) break;
    text.remove_prefix(comma + 1);
  }
  return out;
}

std::vector<EvalReport> evaluate_variants(const Catalog& catalog, std::span<const Variant> variants,
                                          const SplitConfig& config) {
  if (catalog.ratings().size() < 20) {
    throw DataError("evaluation needs at least 20 ratings, catalog has " + std::to_string(catalog.ratings().size()));
  }
  if (variants.empty()) return {};
  const auto split = train_test_split(catalog, config.holdout, config.seed);
  if (split.test.empty()) throw DataError("holdout split produced no test ratings");
  const auto train = build_rating_matrix(split.train);

  SimilarityOptions plain_options{config.metric, std::nullopt, {}, config.threads};
  MaeObjectiveOptions objective_options{config.metric, config.validation_cap, config.seed};

  std::vector<EvalReport> reports;
  for (const Variant variant : variants) {
    const auto start = std::chrono::steady_clock::now();
    EvalReport report;
    report.variant = variant;
    report.seed = config.seed;
    Scored s;
    switch (variant) {
      case Variant::kPlain:
        s = score(train, similarity_matrix(train, Axis::kUser, plain_options), split.test, config.k);
        break;
      case Variant::kGaWeighted: {
        const auto uniform = WeightVector::uniform(train.item_count());
        auto ga = config.ga;
        ga.seed = config.seed;
        ga.threads = config.threads;
        const auto objective = cf_mae_objective(train, split.test, Axis::kUser, config.k, objective_options);
        const auto result = ga_optimize(objective, train.item_count(), ga, std::span<const double>(uniform.values));
        auto options = plain_options;
        options.weights = result.weights.values;
        s = score(train, similarity_matrix(train, Axis::kUser, options), split.test, config.k);
        report.baseline_mae = score(train, similarity_matrix(train, Axis::kUser, plain_options), split.test, config.k).mae;
        break;
      }
      case Variant::kPsoFuzzy: {
        auto profiles = build_fuzzy_profiles(split.train);
        const auto dim = profiles.genres.size();
        const auto uniform = WeightVector::uniform(dim);
        auto pso = config.pso;
        pso.seed = config.seed;
        pso.threads = config.threads;
        const auto objective = fuzzy_mae_objective(train, profiles, split.test, config.k, objective_options);
        const auto result = pso_optimize(objective, dim, pso, std::span<const double>(uniform.values));
        s = score(train, fuzzy_similarity_matrix(train, profiles, result.weights.values, config.threads), split.test,
                  config.k);
        report.baseline_mae =
            score(train, fuzzy_similarity_matrix(train, profiles, uniform.values, config.threads), split.test, config.k)
                .mae;
        break;
      }
      case Variant::kImplicitAugmented: {
        const auto augmented = train.augment_implicit(catalog.implicit_events(), config.implicit);
        s = score(augmented, similarity_matrix(augmented, Axis::kUser, plain_options), split.test, config.k);
        break;
      }
    }
    report.mae = s.mae;
    report.coverage = s.coverage;
    report.predictions = s.count;
    report.runtime_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    reports.push_back(report);
  }
  return reports;
}

double precision_at_k(std::span<const MovieId> recommended, std::span<const MovieId> relevant, std::size_t k) {
  if (k == 0) throw std::invalid_argument("precision@k needs k >= 1");
  const auto top = std::min(k, recommended.size());
  std::size_t hits = 0;
  for (std::size_t i = 0; i < top; ++i) {
    if (std::find(relevant.begin(), relevant.end(), recommended[i]) != relevant.end()) ++hits;
  }
  return static_cast<double>(hits) / static_cast<double>(k);
}

void render_reports(std::ostream& out, std::span<const EvalReport> reports, bool show_runtime) {
  for (const auto& r : reports) {
    out << "variant=" << to_string(r.variant) << " mae=" << format_score(r.mae)
        << " coverage=" << format_score(r.coverage) << " predictions=" << r.predictions << " seed=" << r.seed;
    if (r.baseline_mae) out << " baseline_mae=" << format_score(*r.baseline_mae);
    if (show_runtime) out << " runtime_s=" << format_score(r.runtime_seconds);
    out << '\n';
  }
}

}  // namespace cinerank

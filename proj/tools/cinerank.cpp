#include <charconv>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "cinerank/catalog.hpp"
#include "cinerank/cf.hpp"
#include "cinerank/error.hpp"
#include "cinerank/eval.hpp"
#include "cinerank/ranker.hpp"
#include "cinerank/weight_opt.hpp"

#ifndef CINERANK_DEFAULT_DATA_DIR
#define CINERANK_DEFAULT_DATA_DIR "data/fixture"
#endif

namespace fs = std::filesystem;
using namespace cinerank;

namespace {

struct DataOptions {
  std::string data_dir = CINERANK_DEFAULT_DATA_DIR;
  std::string movies, ratings, reviews, implicit;
  std::size_t threads = 1;
};

Catalog open_catalog(const DataOptions& o) {
  auto paths = CatalogPaths::in_directory(o.data_dir);
  if (!o.movies.empty()) paths.movies = o.movies;
  if (!o.ratings.empty()) paths.ratings = o.ratings;
  if (!o.reviews.empty()) paths.reviews = o.reviews;
  if (!o.implicit.empty()) paths.implicit = fs::path(o.implicit);
  return load_catalog(paths);
}

std::ofstream open_output(const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write '" + path + "'");
  return out;
}

WeightFile read_weight_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open weights file '" + path + "'");
  return load_weights(in);
}

// --- subcommands -----------------------------------------------------------

int run_load_check(const DataOptions& data) {
  const auto c = open_catalog(data);
  std::cout << "movies=" << c.movies().size() << " ratings=" << c.ratings().size()
            << " reviews=" << c.reviews().size() << " dropped_reviews=" << c.dropped_reviews()
            << " implicit_events=" << c.implicit_events().size() << '\n';
  return 0;
}

int run_stats(const DataOptions& data) {
  const auto s = summary_stats(open_catalog(data));
  std::cout << "movies per year\n";
  for (const auto& [year, count] : s.movies_per_year) std::cout << "  " << year << '\t' << count << '\n';
  std::cout << "  unknown\t" << s.unknown_year << '\n';
  std::cout << "movies per month\n";
  for (std::size_t m = 0; m < 12; ++m) std::cout << "  " << m + 1 << '\t' << s.movies_per_month[m] << '\n';
  std::cout << "  unknown\t" << s.unknown_month << '\n';
  std::cout << "rating histogram\n";
  for (const auto& [value, count] : s.rating_histogram) std::cout << "  " << format_score(value) << '\t' << count << '\n';
  return 0;
}

struct IndexArgs {
  std::string metric = "pearson";
  std::string axis = "item";
  std::string out;
  std::string weights;
};

int run_build_index(const DataOptions& data, const IndexArgs& a) {
  const auto catalog = open_catalog(data);
  const auto matrix = build_rating_matrix(catalog);
  const Axis axis = parse_axis(a.axis);
  const Metric metric = parse_metric(a.metric);
  SimilarityMatrix sim;
  if (metric == Metric::kFuzzy) {
    if (axis != Axis::kUser) throw std::invalid_argument("fuzzy similarity is only defined on the user axis");
    const auto profiles = build_fuzzy_profiles(catalog);
    std::vector<double> w(profiles.genres.size(), 1.0);
    if (!a.weights.empty()) w = read_weight_file(a.weights).weights.values;
    if (w.size() != profiles.genres.size()) throw DataError("genre weight count does not match the catalog genres");
    sim = fuzzy_similarity_matrix(matrix, profiles, w, data.threads);
  } else {
    SimilarityOptions so{metric, std::nullopt, {}, data.threads};
    if (!a.weights.empty()) {
      so.weights = read_weight_file(a.weights).weights.values;
      const auto dim = axis == Axis::kUser ? matrix.item_count() : matrix.user_count();
      if (so.weights.size() != dim) throw DataError("weight count does not match the co-rated dimension");
    }
    sim = similarity_matrix(matrix, axis, so);
  }
  auto out = open_output(a.out);
  sim.save(out);
  std::cout << "wrote " << sim.size() << "x" << sim.size() << " " << to_string(metric) << " " << to_string(axis)
            << " similarity to " << a.out << '\n';
  return 0;
}

struct RecommendArgs {
  std::vector<std::string> seed;
  std::size_t n = 15;
  std::size_t pool = 100;
  std::size_t k = 20;
  bool no_critic = false;
  bool include_seed = false;
  std::string weights;
  std::string embeddings;
  std::string format = "table";
  std::string mode = "item_item";
  std::string metric = "pearson";
  std::optional<std::int64_t> user;
};

int run_recommend(const DataOptions& data, const RecommendArgs& a) {
  // `--seed` names the seed movie; a second, integer `--seed` is the RNG
  // seed, accepted for uniformity with the other subcommands.
  if (a.seed.empty() || a.seed.size() > 2) throw std::invalid_argument("recommend takes one --seed <title>");
  if (a.seed.size() == 2) {
    std::int64_t v = 0;
    const auto& s = a.seed[1];
    const auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || p != s.data() + s.size()) {
      throw std::invalid_argument("second --seed must be an integer, got '" + s + "'");
    }
  }
  const auto format = parse_output_format(a.format);
  const auto catalog = open_catalog(data);

  PipelineConfig cfg;
  cfg.n = a.n;
  cfg.pool_size = std::max(a.pool, a.n);
  cfg.k = a.k;
  cfg.critic_enabled = !a.no_critic;
  cfg.include_seed = a.include_seed;
  cfg.cf_mode = parse_cf_mode(a.mode);
  cfg.metric = parse_metric(a.metric);
  cfg.threads = data.threads;
  if (a.user) cfg.user = UserId(*a.user);
  if (!a.weights.empty()) {
    const auto wf = read_weight_file(a.weights);
    cfg.weights_source = wf.weights.provenance;
    if (!wf.axis) {
      cfg.genre_weights = wf.weights.values;
    } else if (*wf.axis == Axis::kItem) {
      cfg.item_weights = wf.weights.values;
    } else {
      cfg.user_weights = wf.weights.values;
    }
  }
  std::optional<PrecomputedProvider> precomputed;
  if (!a.embeddings.empty()) {
    precomputed = PrecomputedProvider::load(fs::path(a.embeddings));
    cfg.embeddings = &*precomputed;
  }
  const auto result = recommend_hybrid(catalog, a.seed.front(), cfg);
  if (result.items.empty()) std::cerr << "note: " << result.diagnostic << '\n';
  render(std::cout, result, format);
  return 0;
}

struct EvaluateArgs {
  std::string variants = "plain,ga_weighted,pso_fuzzy,implicit_augmented";
  double holdout = 0.2;
  std::uint64_t seed = 42;
  std::size_t k = 20;
  std::size_t population = 40, generations = 80, particles = 30, iterations = 100;
  bool show_runtime = false;
};

int run_evaluate(const DataOptions& data, const EvaluateArgs& a) {
  const auto variants = parse_variant_list(a.variants);
  const auto catalog = open_catalog(data);
  SplitConfig cfg;
  cfg.holdout = a.holdout;
  cfg.seed = a.seed;
  cfg.k = a.k;
  cfg.ga.population = a.population;
  cfg.ga.generations = a.generations;
  cfg.pso.particles = a.particles;
  cfg.pso.iterations = a.iterations;
  cfg.threads = data.threads;
  const auto reports = evaluate_variants(catalog, variants, cfg);
  render_reports(std::cout, reports, a.show_runtime);
  return 0;
}

struct OptimizeArgs {
  std::string method = "ga";
  std::string axis = "user";
  std::string out;
  double holdout = 0.2;
  std::uint64_t seed = 42;
  std::size_t k = 20;
};

int run_optimize(const DataOptions& data, const OptimizeArgs& a) {
  const auto catalog = open_catalog(data);
  const auto split = train_test_split(catalog, a.holdout, a.seed);
  const auto train = build_rating_matrix(split.train);
  MaeObjectiveOptions mo;
  mo.subsample_seed = a.seed;
  WeightFile wf;
  wf.seed = a.seed;
  OptimizationResult result;
  if (a.method == "ga") {
    const Axis axis = parse_axis(a.axis);
    const auto dim = axis == Axis::kUser ? train.item_count() : train.user_count();
    const auto start = WeightVector::uniform(dim);
    GaConfig ga;
    ga.seed = a.seed;
    ga.threads = data.threads;
    result = ga_optimize(cf_mae_objective(train, split.test, axis, a.k, mo), dim, ga,
                         std::span<const double>(start.values));
    wf.axis = axis;
  } else if (a.method == "pso") {
    const auto profiles = build_fuzzy_profiles(split.train);
    const auto start = WeightVector::uniform(profiles.genres.size());
    SwarmConfig pso;
    pso.seed = a.seed;
    pso.threads = data.threads;
    result = pso_optimize(fuzzy_mae_objective(train, profiles, split.test, a.k, mo), profiles.genres.size(), pso,
                          std::span<const double>(start.values));
  } else {
    throw std::invalid_argument("unknown method '" + a.method + "' (expected ga|pso)");
  }
  wf.weights = result.weights;
  wf.objective = result.best_value;
  auto out = open_output(a.out);
  save_weights(out, wf);
  std::cout << "method=" << a.method << " initial_mae=" << format_score(result.initial_value)
            << " best_mae=" << format_score(result.best_value) << " weights=" << wf.weights.values.size()
            << " out=" << a.out << '\n';
  return 0;
}

struct ColdStartArgs {
  std::string strategy = "top_rated";
  std::size_t n = 10;
  std::size_t min_count = 3;
  std::string genres;
};

int run_cold_start(const DataOptions& data, const ColdStartArgs& a) {
  const auto catalog = open_catalog(data);
  std::vector<RankedMovie> rows;
  if (!a.genres.empty()) {
    Movie probe;
    probe.id = MovieId(-1);
    probe.title = "new movie";
    std::size_t start = 0;
    while (start <= a.genres.size()) {
      const auto bar = a.genres.find('|', start);
      const auto piece = a.genres.substr(start, bar == std::string::npos ? std::string::npos : bar - start);
      if (!piece.empty()) probe.genres.push_back(piece);
      if (bar == std::string::npos) break;
      start = bar + 1;
    }
    std::sort(probe.genres.begin(), probe.genres.end());
    rows = cold_start_item(catalog, probe, a.n);
  } else {
    rows = cold_start_user(catalog, a.n, parse_cold_start_strategy(a.strategy), a.min_count);
  }
  for (const auto& r : rows) {
    std::cout << r.title << '\t' << format_score(r.mean_rating) << '\t' << r.rating_count << '\t'
              << (r.release_year ? std::to_string(*r.release_year) : std::string("-")) << '\n';
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"cinerank: hybrid collaborative/content movie recommender"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_config("--config", "", "key=value file mirroring the command-line flags");

  DataOptions data;
  app.add_option("--data-dir", data.data_dir, "Directory holding movies/ratings/reviews[/implicit].csv");
  app.add_option("--movies", data.movies, "Override path to movies.csv");
  app.add_option("--ratings", data.ratings, "Override path to ratings.csv");
  app.add_option("--reviews", data.reviews, "Override path to reviews.csv");
  app.add_option("--implicit", data.implicit, "Override path to implicit.csv");
  app.add_option("--threads", data.threads, "Worker threads (output does not depend on it)")
      ->check(CLI::PositiveNumber);

  auto* load = app.add_subcommand("load-check", "Load and validate the data files");
  auto* stats = app.add_subcommand("stats", "Movies per year/month and rating histogram");

  IndexArgs index;
  auto* build = app.add_subcommand("build-index", "Write a similarity cache");
  build->add_option("--metric", index.metric, "pearson|cosine|jaccard|fuzzy");
  build->add_option("--axis", index.axis, "user|item");
  build->add_option("--out", index.out, "Output file")->required();
  build->add_option("--weights", index.weights, "Weights file from optimize-weights");

  RecommendArgs rec;
  auto* recommend = app.add_subcommand("recommend", "Hybrid recommendations around a seed movie");
  recommend->add_option("--seed", rec.seed, "Seed movie title")->required();
  recommend->add_option("--n", rec.n, "Number of recommendations")->check(CLI::PositiveNumber);
  recommend->add_option("--pool", rec.pool, "Collaborative candidate pool size")->check(CLI::PositiveNumber);
  recommend->add_option("--k", rec.k, "Neighbourhood size")->check(CLI::PositiveNumber);
  recommend->add_flag("--no-critic", rec.no_critic, "Rank by content cosine only");
  recommend->add_flag("--include-seed", rec.include_seed, "Keep the seed movie in the output");
  recommend->add_option("--weights", rec.weights, "Weights file from optimize-weights");
  recommend->add_option("--embeddings", rec.embeddings, "Precomputed embedding file");
  recommend->add_option("--format", rec.format, "table|tsv|tuples");
  recommend->add_option("--mode", rec.mode, "item_item|user_user|both");
  recommend->add_option("--metric", rec.metric, "pearson|cosine|jaccard");
  recommend->add_option("--user", rec.user, "Target user id (user_user and both modes)");

  EvaluateArgs ev;
  auto* evaluate = app.add_subcommand("evaluate", "MAE and coverage of model variants on a holdout split");
  evaluate->add_option("--variants", ev.variants, "Comma list of plain,ga_weighted,pso_fuzzy,implicit_augmented");
  evaluate->add_option("--holdout", ev.holdout, "Test fraction in (0, 1)");
  evaluate->add_option("--seed", ev.seed, "Split and optimizer seed");
  evaluate->add_option("--k", ev.k, "Neighbourhood size")->check(CLI::PositiveNumber);
  evaluate->add_option("--population", ev.population, "GA population");
  evaluate->add_option("--generations", ev.generations, "GA generations");
  evaluate->add_option("--particles", ev.particles, "PSO particles");
  evaluate->add_option("--iterations", ev.iterations, "PSO iterations");
  evaluate->add_flag("--show-runtime", ev.show_runtime, "Append wall-clock seconds (not deterministic)");

  OptimizeArgs opt;
  auto* optimize = app.add_subcommand("optimize-weights", "Tune similarity weights and write them to a file");
  optimize->add_option("--method", opt.method, "ga (co-rated weights) | pso (fuzzy genre weights)");
  optimize->add_option("--axis", opt.axis, "user|item (ga only)");
  optimize->add_option("--out", opt.out, "Output weights file")->required();
  optimize->add_option("--holdout", opt.holdout, "Validation fraction in (0, 1)");
  optimize->add_option("--seed", opt.seed, "Split and optimizer seed");
  optimize->add_option("--k", opt.k, "Neighbourhood size")->check(CLI::PositiveNumber);

  ColdStartArgs cold;
  auto* cold_start = app.add_subcommand("cold-start", "Fallback lists for new users or new movies");
  cold_start->add_option("--strategy", cold.strategy, "top_rated|recent|blend");
  cold_start->add_option("--n", cold.n, "Number of movies")->check(CLI::PositiveNumber);
  cold_start->add_option("--min-count", cold.min_count, "Minimum ratings for top_rated");
  cold_start->add_option("--genres", cold.genres, "Genres of a new movie, '|' separated");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }

  try {
    if (*load) return run_load_check(data);
    if (*stats) return run_stats(data);
    if (*build) return run_build_index(data, index);
    if (*recommend) return run_recommend(data, rec);
    if (*evaluate) return run_evaluate(data, ev);
    if (*optimize) return run_optimize(data, opt);
    if (*cold_start) return run_cold_start(data, cold);
  } catch (const DataError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 2;
}

#include <algorithm>
#include <charconv>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>

#include "cinerank/cf.hpp"
#include "cinerank/error.hpp"
#include "cinerank/parallel.hpp"

namespace cinerank {

SimilarityMatrix::SimilarityMatrix(Axis axis, Metric metric, std::size_t min_overlap,
                                   std::vector<std::int64_t> ids)
    : axis_(axis), metric_(metric), min_overlap_(min_overlap), ids_(std::move(ids)) {
  for (std::size_t i = 0; i < ids_.size(); ++i) {
    if (!lookup_.emplace(ids_[i], i).second) {
      throw std::invalid_argument("duplicate id in similarity matrix axis");
    }
  }
  values_.assign(ids_.size() * ids_.size(), 0.0);
  co_counts_.assign(ids_.size() * ids_.size(), 0);
}

std::optional<std::size_t> SimilarityMatrix::index_of(std::int64_t id) const {
  const auto it = lookup_.find(id);
  return it == lookup_.end() ? std::nullopt : std::optional(it->second);
}

void SimilarityMatrix::set(std::size_t a, std::size_t b, double value, std::uint32_t co_count) {
  values_[a * ids_.size() + b] = value;
  co_counts_[a * ids_.size() + b] = co_count;
}

namespace {

constexpr std::string_view kCacheMagic = "cinerank-similarity 1";

std::string format_double(double v) {
  char buf[32];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

template <class T>
T parse_number(std::string_view token, std::string_view what) {
  T value{};
  const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc() || ptr != token.data() + token.size()) {
    throw DataError("similarity cache: bad " + std::string(what) + " '" + std::string(token) + "'");
  }
  return value;
}

std::string expect_key(std::istringstream& line, std::string_view key) {
  std::string token;
  line >> token;
  const auto prefix = std::string(key) + "=";
  if (token.rfind(prefix, 0) != 0) throw DataError("similarity cache: expected '" + prefix + "'");
  return token.substr(prefix.size());
}

struct PairStats {
  double value = 0.0;
  std::uint32_t co_count = 0;
};

// Weight of dimension d; 1 when unweighted.
inline double weight_of(const std::vector<double>& w, std::size_t d) { return w.empty() ? 1.0 : w[d]; }

PairStats pair_similarity(std::span<const RatingMatrix::Entry> a, std::span<const RatingMatrix::Entry> b,
                          Metric metric, std::size_t min_overlap, const std::vector<double>& w) {
  // Merge-join on dimension index to collect co-rated entries.
  std::vector<std::tuple<double, double, double>> common;  // (weight, a, b)
  std::size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    if (a[i].index < b[j].index) {
      ++i;
    } else if (b[j].index < a[i].index) {
      ++j;
    } else {
      common.emplace_back(weight_of(w, a[i].index), a[i].value, b[j].value);
      ++i;
      ++j;
    }
  }
  PairStats out;
  out.co_count = static_cast<std::uint32_t>(common.size());
  if (common.size() < min_overlap || common.empty()) return out;

  switch (metric) {
    case Metric::kPearson: {
      double wsum = 0.0, asum = 0.0, bsum = 0.0;
      for (const auto& [wt, x, y] : common) {
        wsum += wt;
        asum += wt * x;
        bsum += wt * y;
      }
      if (wsum <= 0.0) return out;
      const double amean = asum / wsum, bmean = bsum / wsum;
      double num = 0.0, da = 0.0, db = 0.0;
      for (const auto& [wt, x, y] : common) {
        num += wt * (x - amean) * (y - bmean);
        da += wt * (x - amean) * (x - amean);
        db += wt * (y - bmean) * (y - bmean);
      }
      if (da < 1e-12 || db < 1e-12) return out;
      out.value = std::clamp(num / std::sqrt(da * db), -1.0, 1.0);
      break;
    }
    case Metric::kCosine: {
      double num = 0.0, na = 0.0, nb = 0.0;
      for (const auto& [wt, x, y] : common) num += wt * x * y;
      for (const auto& e : a) na += weight_of(w, e.index) * e.value * e.value;
      for (const auto& e : b) nb += weight_of(w, e.index) * e.value * e.value;
      if (na <= 0.0 || nb <= 0.0) return out;
      out.value = std::clamp(num / std::sqrt(na * nb), -1.0, 1.0);
      break;
    }
    case Metric::kJaccard: {
      double inter = 0.0, uni = 0.0;
      for (const auto& [wt, x, y] : common) inter += wt;
      for (const auto& e : a) uni += weight_of(w, e.index);
      for (const auto& e : b) uni += weight_of(w, e.index);
      uni -= inter;
      if (uni <= 0.0) return out;
      out.value = std::clamp(inter / uni, 0.0, 1.0);
      break;
    }
    case Metric::kFuzzy:
      throw std::invalid_argument("fuzzy similarity is built from profiles, not ratings");
  }
  return out;
}

}  // namespace

void SimilarityMatrix::save(std::ostream& out) const {
  const std::size_t n = ids_.size();
  out << kCacheMagic << '\n';
  out << "axis=" << to_string(axis_) << " metric=" << to_string(metric_) << " count=" << n
      << " min_overlap=" << min_overlap_ << '\n';
  out << "ids";
  for (auto id : ids_) out << ' ' << id;
  out << '\n';
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) out << (b ? " " : "") << format_double(at(a, b));
    out << '\n';
  }
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) out << (b ? " " : "") << co_count(a, b);
    out << '\n';
  }
}

SimilarityMatrix SimilarityMatrix::load(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line != kCacheMagic) throw DataError("similarity cache: bad magic line");
  if (!std::getline(in, line)) throw DataError("similarity cache: missing header");
  std::istringstream header(line);
  const Axis axis = parse_axis(expect_key(header, "axis"));
  const Metric metric = parse_metric(expect_key(header, "metric"));
  const auto n = parse_number<std::size_t>(expect_key(header, "count"), "count");
  const auto min_overlap = parse_number<std::size_t>(expect_key(header, "min_overlap"), "min_overlap");

  if (!std::getline(in, line)) throw DataError("similarity cache: missing id line");
  std::istringstream id_line(line);
  std::string token;
  id_line >> token;
  if (token != "ids") throw DataError("similarity cache: expected id line");
  std::vector<std::int64_t> ids;
  while (id_line >> token) ids.push_back(parse_number<std::int64_t>(token, "id"));
  if (ids.size() != n) throw DataError("similarity cache: id count does not match header");

  SimilarityMatrix sim(axis, metric, min_overlap, std::move(ids));
  auto read_rows = [&](auto&& store) {
    for (std::size_t a = 0; a < n; ++a) {
      if (!std::getline(in, line)) throw DataError("similarity cache: truncated matrix");
      std::istringstream row(line);
      std::size_t b = 0;
      while (row >> token) {
        if (b >= n) throw DataError("similarity cache: row too long");
        store(a, b++, token);
      }
      if (b != n) throw DataError("similarity cache: row too short");
    }
  };
  read_rows([&](std::size_t a, std::size_t b, const std::string& t) {
    sim.values_[a * n + b] = parse_number<double>(t, "value");
  });
  read_rows([&](std::size_t a, std::size_t b, const std::string& t) {
    sim.co_counts_[a * n + b] = parse_number<std::uint32_t>(t, "co-count");
  });
  return sim;
}

SimilarityMatrix similarity_matrix(const RatingMatrix& matrix, Axis axis, const SimilarityOptions& options) {
  const bool by_user = axis == Axis::kUser;
  const std::size_t n = by_user ? matrix.user_count() : matrix.item_count();
  const std::size_t dims = by_user ? matrix.item_count() : matrix.user_count();
  if (!options.weights.empty()) {
    if (options.weights.size() != dims) {
      throw std::invalid_argument("weight vector has length " + std::to_string(options.weights.size()) +
                                  ", expected " + std::to_string(dims));
    }
    for (double w : options.weights) {
      if (!(w >= 0.0) || !std::isfinite(w)) throw std::invalid_argument("weights must be finite and nonnegative");
    }
  }
  if (options.metric == Metric::kFuzzy) {
    throw std::invalid_argument("fuzzy similarity is built with fuzzy_similarity_matrix");
  }
  const std::size_t min_overlap =
      options.min_overlap.value_or(options.metric == Metric::kPearson ? 2 : 1);

  std::vector<std::int64_t> ids(n);
  for (std::size_t i = 0; i < n; ++i) {
    ids[i] = by_user ? matrix.users()[i].value() : matrix.items()[i].value();
  }
  SimilarityMatrix sim(axis, options.metric, min_overlap, std::move(ids));
  auto vec = [&](std::size_t e) { return by_user ? matrix.user_row(e) : matrix.item_column(e); };

  parallel_for(n, options.threads, [&](std::size_t a) {
    const auto va = vec(a);
    sim.set(a, a, va.empty() ? 0.0 : 1.0, static_cast<std::uint32_t>(va.size()));
    for (std::size_t b = a + 1; b < n; ++b) {
      const auto s = pair_similarity(va, vec(b), options.metric, min_overlap, options.weights);
      sim.set(a, b, s.value, s.co_count);
      sim.set(b, a, s.value, s.co_count);
    }
  });
  return sim;
}

}  // namespace cinerank

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

#include "cinerank/cf.hpp"
#include "cinerank/error.hpp"

namespace cinerank {

std::string_view to_string(Axis axis) { return axis == Axis::kUser ? "user" : "item"; }

std::string_view to_string(Metric metric) {
  switch (metric) {
    case Metric::kPearson: return "pearson";
    case Metric::kCosine: return "cosine";
    case Metric::kJaccard: return "jaccard";
    case Metric::kFuzzy: return "fuzzy";
  }
  return "?";
}

Axis parse_axis(std::string_view text) {
  if (text == "user") return Axis::kUser;
  if (text == "item") return Axis::kItem;
  throw std::invalid_argument("unknown axis '" + std::string(text) + "' (expected user|item)");
}

Metric parse_metric(std::string_view text) {
  for (Metric m : {Metric::kPearson, Metric::kCosine, Metric::kJaccard, Metric::kFuzzy}) {
    if (text == to_string(m)) return m;
  }
  throw std::invalid_argument("unknown metric '" + std::string(text) +
                              "' (expected pearson|cosine|jaccard|fuzzy)");
}

double implicit_pseudo_rating(const ImplicitEvent& event, const ImplicitParams& params,
                              double scale_max) {
  const double sum = params.alpha_watch + params.alpha_fraction + params.alpha_freq;
  if (std::abs(sum - 1.0) > 1e-9) {
    throw std::invalid_argument("implicit blend coefficients must sum to 1");
  }
  if (params.alpha_watch < 0 || params.alpha_fraction < 0 || params.alpha_freq < 0) {
    throw std::invalid_argument("implicit blend coefficients must be nonnegative");
  }
  if (params.frequency_cap < 1) throw std::invalid_argument("frequency cap must be >= 1");
  const double freq = static_cast<double>(std::min(event.watch_count, params.frequency_cap)) /
                      static_cast<double>(params.frequency_cap);
  return scale_max * (params.alpha_watch * (event.watched ? 1.0 : 0.0) +
                      params.alpha_fraction * event.watch_fraction + params.alpha_freq * freq);
}

RatingMatrix RatingMatrix::from_catalog(const Catalog& catalog) {
  if (catalog.ratings().empty()) throw DataError("no ratings");
  RatingMatrix m;
  m.scale_ = catalog.scale();
  for (const auto& movie : catalog.movies()) {
    m.item_lookup_.emplace(movie.id, m.items_.size());
    m.items_.push_back(movie.id);
  }
  for (const auto& r : catalog.ratings()) m.users_.push_back(r.user);
  std::sort(m.users_.begin(), m.users_.end());
  m.users_.erase(std::unique(m.users_.begin(), m.users_.end()), m.users_.end());
  for (std::size_t u = 0; u < m.users_.size(); ++u) m.user_lookup_.emplace(m.users_[u], u);

  m.rows_.resize(m.users_.size());
  for (const auto& r : catalog.ratings()) {
    m.rows_[m.user_lookup_.at(r.user)].push_back({m.item_lookup_.at(r.movie), r.value, EntrySource::kExplicit});
  }
  m.rebuild_columns_and_means();
  return m;
}

RatingMatrix RatingMatrix::augment_implicit(std::span<const ImplicitEvent> events,
                                            const ImplicitParams& params) const {
  // Validate up front so a bad parameter set fails even with no events.
  implicit_pseudo_rating(ImplicitEvent{}, params, scale_.max);

  std::map<UserId, std::vector<Entry>> rows;
  for (std::size_t u = 0; u < users_.size(); ++u) rows[users_[u]] = rows_[u];
  for (const auto& e : events) {
    const auto item = item_index(e.movie);
    if (!item) throw DataError("implicit event references unknown movie " + std::to_string(e.movie.value()));
    auto& row = rows[e.user];
    const auto pos = std::lower_bound(row.begin(), row.end(), *item,
                                      [](const Entry& en, std::size_t i) { return en.index < i; });
    if (pos != row.end() && pos->index == *item) continue;
    const double value = scale_.clamp(implicit_pseudo_rating(e, params, scale_.max));
    row.insert(pos, Entry{*item, value, EntrySource::kImplicit});
  }

  RatingMatrix m;
  m.scale_ = scale_;
  m.items_ = items_;
  m.item_lookup_ = item_lookup_;
  for (auto& [user, row] : rows) {
    m.user_lookup_.emplace(user, m.users_.size());
    m.users_.push_back(user);
    m.rows_.push_back(std::move(row));
  }
  m.rebuild_columns_and_means();
  return m;
}

void RatingMatrix::rebuild_columns_and_means() {
  columns_.assign(items_.size(), {});
  user_means_.assign(users_.size(), 0.0);
  item_means_.assign(items_.size(), 0.0);
  entry_count_ = 0;
  implicit_count_ = 0;
  for (std::size_t u = 0; u < rows_.size(); ++u) {
    auto& row = rows_[u];
    std::sort(row.begin(), row.end(), [](const Entry& a, const Entry& b) { return a.index < b.index; });
    double sum = 0.0;
    for (const auto& e : row) {
      sum += e.value;
      columns_[e.index].push_back({u, e.value, e.source});
      if (e.source == EntrySource::kImplicit) ++implicit_count_;
    }
    entry_count_ += row.size();
    user_means_[u] = row.empty() ? 0.0 : sum / static_cast<double>(row.size());
  }
  for (std::size_t i = 0; i < columns_.size(); ++i) {
    double sum = 0.0;
    for (const auto& e : columns_[i]) sum += e.value;
    item_means_[i] = columns_[i].empty() ? 0.0 : sum / static_cast<double>(columns_[i].size());
  }
}

std::optional<std::size_t> RatingMatrix::user_index(UserId id) const {
  const auto it = user_lookup_.find(id);
  return it == user_lookup_.end() ? std::nullopt : std::optional(it->second);
}

std::optional<std::size_t> RatingMatrix::item_index(MovieId id) const {
  const auto it = item_lookup_.find(id);
  return it == item_lookup_.end() ? std::nullopt : std::optional(it->second);
}

const RatingMatrix::Entry* RatingMatrix::entry(std::size_t user, std::size_t item) const {
  const auto& row = rows_[user];
  const auto pos = std::lower_bound(row.begin(), row.end(), item,
                                    [](const Entry& en, std::size_t i) { return en.index < i; });
  return (pos != row.end() && pos->index == item) ? &*pos : nullptr;
}

std::optional<double> RatingMatrix::value(std::size_t user, std::size_t item) const {
  const auto* e = entry(user, item);
  return e ? std::optional(e->value) : std::nullopt;
}

}  // namespace cinerank

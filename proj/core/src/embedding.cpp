#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <set>
#include <stdexcept>

#include "cinerank/error.hpp"
#include "cinerank/text.hpp"

namespace cinerank {

std::string_view to_string(ProviderKind kind) {
  return kind == ProviderKind::kTfidf ? "tfidf" : "precomputed";
}

double cosine_similarity(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) {
    throw std::invalid_argument("cosine of vectors with dimensions " + std::to_string(a.size()) + " and " +
                                std::to_string(b.size()));
  }
  double dot = 0.0, na = 0.0, nb = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    dot += a[i] * b[i];
    na += a[i] * a[i];
    nb += b[i] * b[i];
  }
  if (na == 0.0 || nb == 0.0) return 0.0;
  return std::clamp(dot / (std::sqrt(na) * std::sqrt(nb)), -1.0, 1.0);
}

double cosine_similarity(const EmbeddingVector& a, const EmbeddingVector& b) {
  return cosine_similarity(a.values, b.values);
}

// ---------------------------------------------------------------------------

TfidfProvider TfidfProvider::fit(std::span<const TokenStream> corpus, std::size_t max_vocab,
                                 PreprocessOptions options) {
  if (corpus.empty()) throw std::invalid_argument("cannot fit TF-IDF on an empty corpus");
  std::unordered_map<std::string, std::size_t> df;
  for (const auto& doc : corpus) {
    std::set<std::string_view> unique(doc.tokens.begin(), doc.tokens.end());
    for (auto t : unique) ++df[std::string(t)];
  }
  std::vector<std::pair<std::string, std::size_t>> ranked(df.begin(), df.end());
  std::sort(ranked.begin(), ranked.end(), [](const auto& a, const auto& b) {
    if (a.second != b.second) return a.second > b.second;
    return a.first < b.first;
  });
  if (ranked.size() > max_vocab) ranked.resize(max_vocab);

  TfidfProvider p;
  p.documents_ = corpus.size();
  p.options_ = options;
  const auto n = static_cast<double>(corpus.size());
  for (auto& [token, freq] : ranked) {
    p.column_.emplace(token, p.vocabulary_.size());
    p.idf_.push_back(std::log(n / (1.0 + static_cast<double>(freq))) + 1.0);
    p.vocabulary_.push_back(std::move(token));
  }
  return p;
}

TfidfProvider TfidfProvider::fit_texts(std::span<const std::string> texts, std::size_t max_vocab,
                                       PreprocessOptions options) {
  std::vector<TokenStream> corpus;
  corpus.reserve(texts.size());
  for (const auto& t : texts) corpus.push_back(preprocess(t, options));
  return fit(corpus, max_vocab, options);
}

EmbeddingVector TfidfProvider::embed(const TokenStream& tokens) const {
  EmbeddingVector v{std::vector<double>(vocabulary_.size(), 0.0), ProviderKind::kTfidf};
  for (const auto& t : tokens.tokens) {
    if (const auto it = column_.find(t); it != column_.end()) v.values[it->second] += 1.0;
  }
  double norm = 0.0;
  for (std::size_t i = 0; i < v.values.size(); ++i) {
    v.values[i] *= idf_[i];
    norm += v.values[i] * v.values[i];
  }
  if (norm > 0.0) {
    norm = std::sqrt(norm);
    for (auto& x : v.values) x /= norm;
  }
  return v;
}

EmbeddingVector TfidfProvider::embed_document(MovieId, std::string_view text) const {
  return embed(preprocess(text, options_));
}

// ---------------------------------------------------------------------------

PrecomputedProvider PrecomputedProvider::load(std::istream& in, std::string source_name) {
  PrecomputedProvider p;
  std::string line;
  std::size_t line_no = 1;
  auto fail = [&](const std::string& msg) -> DataError {
    return DataError(source_name + ":" + std::to_string(line_no) + ": " + msg);
  };
  if (!std::getline(in, line)) throw fail("missing 'dim=' header");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line.rfind("dim=", 0) != 0) throw fail("expected 'dim=<D>' header");
  {
    const auto text = std::string_view(line).substr(4);
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), p.dimension_);
    if (ec != std::errc() || ptr != text.data() + text.size() || p.dimension_ == 0) {
      throw fail("bad dimension '" + std::string(text) + "'");
    }
  }
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto tab = line.find('\t');
    if (tab == std::string::npos) throw fail("expected movieId<TAB>values");
    std::int64_t id = 0;
    {
      const auto [ptr, ec] = std::from_chars(line.data(), line.data() + tab, id);
      if (ec != std::errc() || ptr != line.data() + tab) throw fail("bad movie id");
    }
    std::vector<double> values;
    const char* cur = line.data() + tab + 1;
    const char* end = line.data() + line.size();
    while (cur < end) {
      while (cur < end && *cur == ' ') ++cur;
      if (cur == end) break;
      double v = 0;
      const auto [ptr, ec] = std::from_chars(cur, end, v);
      if (ec != std::errc() || (ptr != end && *ptr != ' ') || !std::isfinite(v)) throw fail("bad value");
      values.push_back(v);
      cur = ptr;
    }
    if (values.size() != p.dimension_) {
      throw fail("expected " + std::to_string(p.dimension_) + " values, got " + std::to_string(values.size()));
    }
    if (!p.vectors_.emplace(MovieId(id), std::move(values)).second) {
      throw fail("duplicate movie id " + std::to_string(id));
    }
  }
  return p;
}

PrecomputedProvider PrecomputedProvider::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError(path.string() + ": cannot open file");
  return load(in, path.filename().string());
}

void PrecomputedProvider::write(std::ostream& out, std::size_t dimension,
                                const std::map<MovieId, std::vector<double>>& vectors) {
  out << "dim=" << dimension << '\n';
  char buf[32];
  for (const auto& [id, values] : vectors) {
    if (values.size() != dimension) throw std::invalid_argument("vector dimension mismatch");
    out << id.value() << '\t';
    for (std::size_t i = 0; i < values.size(); ++i) {
      const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, values[i]);
      if (i) out << ' ';
      out.write(buf, ptr - buf);
    }
    out << '\n';
  }
}

EmbeddingVector PrecomputedProvider::embed(MovieId movie) const {
  const auto it = vectors_.find(movie);
  if (it == vectors_.end()) throw DataError("no precomputed embedding for movie " + std::to_string(movie.value()));
  return {it->second, ProviderKind::kPrecomputed};
}

EmbeddingVector PrecomputedProvider::embed_document(MovieId movie, std::string_view) const { return embed(movie); }

}  // namespace cinerank

#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "cinerank/ids.hpp"

namespace cinerank {

/// Each stage can be switched off independently; stages run in declaration
/// order (tokenization always runs between emoji and stopwords).
struct PreprocessOptions {
  bool lowercase = true;
  bool emoji = true;
  bool remove_stopwords = true;
  bool stem = true;
  bool lemmatize = true;
};

struct TokenStream {
  std::vector<std::string> tokens;
  std::uint64_t source_hash = 0;  // FNV-1a of the original text

  bool operator==(const TokenStream&) const = default;
};

/// lowercase -> emoji to words -> split on non-alphanumeric -> stopwords ->
/// Porter stem -> lexicon lemmatization.
TokenStream preprocess(std::string_view text, const PreprocessOptions& options = {});

/// Classic Porter (1980) stemmer for lowercase ASCII words. Words of two
/// letters or fewer are returned unchanged.
std::string porter_stem(std::string_view word);

/// Bundled English stopword list, sorted.
std::span<const std::string_view> stopwords();
bool is_stopword(std::string_view token);

/// Space-separated words for an emoji code point, e.g. U+1F3AC -> "movie camera".
std::optional<std::string_view> emoji_name(char32_t code_point);

/// Irregular-form lexicon lookup with identity fallback. With `stemmed`, the
/// lookup runs over Porter stems of the lexicon so it composes with stemming.
std::string lemmatize(std::string_view token, bool stemmed);

std::uint64_t fnv1a64(std::string_view text);

// ---------------------------------------------------------------------------
// Embeddings
// ---------------------------------------------------------------------------

enum class ProviderKind { kTfidf, kPrecomputed };
std::string_view to_string(ProviderKind kind);

struct EmbeddingVector {
  std::vector<double> values;
  ProviderKind provider = ProviderKind::kTfidf;

  std::size_t dimension() const { return values.size(); }
};

/// dot(a, b) / (|a| |b|), or 0 when either norm is 0. Throws
/// std::invalid_argument on a dimension mismatch.
double cosine_similarity(std::span<const double> a, std::span<const double> b);
double cosine_similarity(const EmbeddingVector& a, const EmbeddingVector& b);

class EmbeddingProvider {
 public:
  virtual ~EmbeddingProvider() = default;
  virtual ProviderKind kind() const = 0;
  virtual std::size_t dimension() const = 0;
  /// Embedding for a catalog movie whose content text is `text`.
  virtual EmbeddingVector embed_document(MovieId movie, std::string_view text) const = 0;
};

class TfidfProvider final : public EmbeddingProvider {
 public:
  /// Vocabulary = top `max_vocab` tokens by document frequency (ties
  /// lexicographic); idf = ln(N / (1 + df)) + 1. Throws std::invalid_argument
  /// on an empty corpus.
  static TfidfProvider fit(std::span<const TokenStream> corpus, std::size_t max_vocab = 5000,
                           PreprocessOptions options = {});
  static TfidfProvider fit_texts(std::span<const std::string> texts, std::size_t max_vocab = 5000,
                                 PreprocessOptions options = {});

  ProviderKind kind() const override { return ProviderKind::kTfidf; }
  std::size_t dimension() const override { return vocabulary_.size(); }
  EmbeddingVector embed_document(MovieId movie, std::string_view text) const override;

  /// L2-normalized tf*idf; all zeros if no token is in the vocabulary.
  EmbeddingVector embed(const TokenStream& tokens) const;

  std::span<const std::string> vocabulary() const { return vocabulary_; }
  std::span<const double> idf() const { return idf_; }
  std::size_t document_count() const { return documents_; }

 private:
  std::vector<std::string> vocabulary_;
  std::unordered_map<std::string, std::size_t> column_;
  std::vector<double> idf_;
  std::size_t documents_ = 0;
  PreprocessOptions options_;
};

/// Vectors produced elsewhere (e.g. a sentence encoder), keyed by movie id.
class PrecomputedProvider final : public EmbeddingProvider {
 public:
  /// File format: `dim=<D>` then lines `movieId<TAB>f1 f2 ... fD`.
  static PrecomputedProvider load(std::istream& in, std::string source_name = "embeddings");
  static PrecomputedProvider load(const std::filesystem::path& path);
  static void write(std::ostream& out, std::size_t dimension,
                    const std::map<MovieId, std::vector<double>>& vectors);

  ProviderKind kind() const override { return ProviderKind::kPrecomputed; }
  std::size_t dimension() const override { return dimension_; }
  /// Ignores `text`; throws DataError for ids without a stored vector.
  EmbeddingVector embed_document(MovieId movie, std::string_view text) const override;
  EmbeddingVector embed(MovieId movie) const;

  bool covers(MovieId movie) const { return vectors_.contains(movie); }
  std::size_t size() const { return vectors_.size(); }

 private:
  std::size_t dimension_ = 0;
  std::map<MovieId, std::vector<double>> vectors_;
};

}  // namespace cinerank

#pragma once

#include "semtab/text.hpp"

#include <cstddef>
#include <filesystem>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace semtab {

enum class SimilarityKind { binary_match, edit_distance, embedding_cosine };

std::string_view to_string(SimilarityKind kind) noexcept;
/// Accepts "binary", "edit", "embedding" and the full enumerator names.
std::optional<SimilarityKind> parse_similarity_kind(std::string_view name) noexcept;

/// Static word vectors in the common text layout: `token v1 v2 ... vd` per line.
/// An optional word2vec-style "count dim" first line is skipped.
class WordVectors {
public:
  /// Throws ConfigError when the file is unreadable or ragged.
  static WordVectors load(const std::filesystem::path& path);
  static WordVectors from_text(std::string_view text, const std::string& source = "<memory>");

  std::size_t dimension() const noexcept { return dim_; }
  std::size_t size() const noexcept { return index_.size(); }
  /// Null when the token has no vector.
  const float* find(std::string_view token) const;

private:
  std::size_t dim_ = 0;
  std::vector<float> data_;
  std::unordered_map<std::string, std::size_t> index_;
};

/// Levenshtein distance over Unicode code points (invalid UTF-8 bytes count as one unit each).
std::size_t levenshtein(std::string_view a, std::string_view b);

/// A token with the forms each similarity kind needs, computed once.
struct PreparedToken {
  std::string lower;
  std::string canonical;
  const float* vector = nullptr;
};

/// Token-level similarity with values in [0, 1]. Immutable after construction.
class Similarity {
public:
  static Similarity binary_match();
  static Similarity edit_distance();
  static Similarity embedding_cosine(const std::filesystem::path& vectors);
  static Similarity embedding_cosine(std::shared_ptr<const WordVectors> vectors);

  SimilarityKind kind() const noexcept { return kind_; }

  PreparedToken prepare(std::string_view token) const;
  std::vector<PreparedToken> prepare(std::span<const std::string> tokens) const;

  double score(const PreparedToken& a, const PreparedToken& b) const;
  double operator()(std::string_view a, std::string_view b) const;

private:
  explicit Similarity(SimilarityKind kind, std::shared_ptr<const WordVectors> vectors = nullptr)
      : kind_(kind), vectors_(std::move(vectors)) {}

  SimilarityKind kind_;
  std::shared_ptr<const WordVectors> vectors_;
};

} // namespace semtab

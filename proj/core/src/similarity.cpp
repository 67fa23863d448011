#include "semtab/similarity.hpp"

#include "semtab/errors.hpp"
#include "util.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numeric>

namespace semtab {

std::string_view to_string(SimilarityKind kind) noexcept {
  switch (kind) {
  case SimilarityKind::binary_match:
    return "binary";
  case SimilarityKind::edit_distance:
    return "edit";
  case SimilarityKind::embedding_cosine:
    return "embedding";
  }
  return "unknown";
}

std::optional<SimilarityKind> parse_similarity_kind(std::string_view name) noexcept {
  if (name == "binary" || name == "binary_match") {
    return SimilarityKind::binary_match;
  }
  if (name == "edit" || name == "edit_distance") {
    return SimilarityKind::edit_distance;
  }
  if (name == "embedding" || name == "embedding_cosine") {
    return SimilarityKind::embedding_cosine;
  }
  return std::nullopt;
}

namespace {

std::vector<std::string_view> split_ws(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) {
      ++i;
    }
    const auto start = i;
    while (i < line.size() && line[i] != ' ' && line[i] != '\t' && line[i] != '\r') {
      ++i;
    }
    if (i > start) {
      out.push_back(line.substr(start, i - start));
    }
  }
  return out;
}

bool parse_float(std::string_view s, float& out) {
  const auto* end = s.data() + s.size();
  const auto [ptr, ec] = std::from_chars(s.data(), end, out);
  return ec == std::errc() && ptr == end;
}

bool is_count_header(const std::vector<std::string_view>& fields) {
  if (fields.size() != 2) {
    return false;
  }
  return std::all_of(fields.begin(), fields.end(), [](std::string_view f) {
    return std::all_of(f.begin(), f.end(), [](char ch) { return ch >= '0' && ch <= '9'; });
  });
}

std::u32string decode_utf8(std::string_view s) {
  std::u32string out;
  out.reserve(s.size());
  for (std::size_t i = 0; i < s.size();) {
    const auto b0 = static_cast<unsigned char>(s[i]);
    std::size_t len = b0 < 0x80 ? 1 : (b0 >> 5) == 0x6 ? 2 : (b0 >> 4) == 0xE ? 3 : (b0 >> 3) == 0x1E ? 4 : 0;
    bool ok = len != 0 && i + len <= s.size();
    char32_t cp = len == 1 ? b0 : len == 2 ? (b0 & 0x1F) : len == 3 ? (b0 & 0x0F) : (b0 & 0x07);
    for (std::size_t k = 1; ok && k < len; ++k) {
      const auto b = static_cast<unsigned char>(s[i + k]);
      ok = (b & 0xC0) == 0x80;
      cp = (cp << 6) | (b & 0x3F);
    }
    if (!ok) {
      // Map stray bytes into a private range so they compare as themselves.
      out.push_back(0x110000 + b0);
      ++i;
      continue;
    }
    out.push_back(cp);
    i += len;
  }
  return out;
}

} // namespace

WordVectors WordVectors::from_text(std::string_view text, const std::string& source) {
  WordVectors wv;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  bool first = true;
  while (pos < text.size()) {
    auto nl = text.find('\n', pos);
    if (nl == std::string_view::npos) {
      nl = text.size();
    }
    const auto line = text.substr(pos, nl - pos);
    pos = nl + 1;
    ++line_no;
    const auto fields = split_ws(line);
    if (fields.empty()) {
      continue;
    }
    if (first && is_count_header(fields)) {
      first = false;
      continue;
    }
    if (fields.size() < 2) {
      throw ConfigError(source + ":" + std::to_string(line_no) + ": vector line has no components");
    }
    const auto dim = fields.size() - 1;
    if (wv.dim_ == 0) {
      wv.dim_ = dim;
    } else if (dim != wv.dim_) {
      throw ConfigError(source + ":" + std::to_string(line_no) + ": expected " +
                        std::to_string(wv.dim_) + " components, found " + std::to_string(dim));
    }
    first = false;
    const auto offset = wv.data_.size();
    for (std::size_t k = 1; k < fields.size(); ++k) {
      float v = 0;
      if (!parse_float(fields[k], v)) {
        throw ConfigError(source + ":" + std::to_string(line_no) + ": bad component '" +
                          std::string(fields[k]) + "'");
      }
      wv.data_.push_back(v);
    }
    // First occurrence wins, as in most loaders.
    wv.index_.try_emplace(to_lower_ascii(fields[0]), offset);
  }
  if (wv.index_.empty()) {
    throw ConfigError(source + ": no word vectors found");
  }
  return wv;
}

WordVectors WordVectors::load(const std::filesystem::path& path) {
  std::string text;
  try {
    text = detail::read_file(path);
  } catch (const DataError& e) {
    throw ConfigError(std::string("embedding file: ") + e.what());
  }
  return from_text(text, path.string());
}

const float* WordVectors::find(std::string_view token) const {
  const auto it = index_.find(std::string(token));
  return it == index_.end() ? nullptr : data_.data() + it->second;
}

std::size_t levenshtein(std::string_view a, std::string_view b) {
  const auto x = decode_utf8(a);
  const auto y = decode_utf8(b);
  if (x.empty()) {
    return y.size();
  }
  if (y.empty()) {
    return x.size();
  }
  std::vector<std::size_t> costs(y.size() + 1);
  std::iota(costs.begin(), costs.end(), std::size_t{0});
  for (std::size_t i = 0; i < x.size(); ++i) {
    std::size_t corner = costs[0];
    costs[0] = i + 1;
    for (std::size_t j = 0; j < y.size(); ++j) {
      const std::size_t upper = costs[j + 1];
      costs[j + 1] = x[i] == y[j] ? corner : 1 + std::min({upper, corner, costs[j]});
      corner = upper;
    }
  }
  return costs.back();
}

Similarity Similarity::binary_match() {
  return Similarity(SimilarityKind::binary_match);
}

Similarity Similarity::edit_distance() {
  return Similarity(SimilarityKind::edit_distance);
}

Similarity Similarity::embedding_cosine(const std::filesystem::path& vectors) {
  return embedding_cosine(std::make_shared<const WordVectors>(WordVectors::load(vectors)));
}

Similarity Similarity::embedding_cosine(std::shared_ptr<const WordVectors> vectors) {
  if (!vectors) {
    throw ConfigError("embedding similarity needs word vectors");
  }
  return Similarity(SimilarityKind::embedding_cosine, std::move(vectors));
}

PreparedToken Similarity::prepare(std::string_view token) const {
  PreparedToken p;
  p.lower = to_lower_ascii(token);
  if (kind_ == SimilarityKind::embedding_cosine) {
    p.vector = vectors_->find(p.lower);
  } else {
    p.canonical = canonicalize(p.lower);
  }
  return p;
}

std::vector<PreparedToken> Similarity::prepare(std::span<const std::string> tokens) const {
  std::vector<PreparedToken> out;
  out.reserve(tokens.size());
  for (const auto& t : tokens) {
    out.push_back(prepare(t));
  }
  return out;
}

double Similarity::score(const PreparedToken& a, const PreparedToken& b) const {
  switch (kind_) {
  case SimilarityKind::binary_match:
    return a.canonical == b.canonical ? 1.0 : 0.0;
  case SimilarityKind::edit_distance: {
    const auto longest = std::max(decode_utf8(a.canonical).size(), decode_utf8(b.canonical).size());
    if (longest == 0) {
      return 1.0;
    }
    const auto d = levenshtein(a.canonical, b.canonical);
    return 1.0 - static_cast<double>(d) / static_cast<double>(longest);
  }
  case SimilarityKind::embedding_cosine: {
    if (a.vector == nullptr || b.vector == nullptr) {
      return 0.0;
    }
    double dot = 0;
    double na = 0;
    double nb = 0;
    for (std::size_t k = 0; k < vectors_->dimension(); ++k) {
      dot += static_cast<double>(a.vector[k]) * b.vector[k];
      na += static_cast<double>(a.vector[k]) * a.vector[k];
      nb += static_cast<double>(b.vector[k]) * b.vector[k];
    }
    if (na == 0 || nb == 0) {
      return 0.0;
    }
    return std::clamp(dot / (std::sqrt(na) * std::sqrt(nb)), 0.0, 1.0);
  }
  }
  return 0.0;
}

double Similarity::operator()(std::string_view a, std::string_view b) const {
  return score(prepare(a), prepare(b));
}

} // namespace semtab

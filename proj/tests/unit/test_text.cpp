#include "doctest.h"

#include "fixtures.hpp"
#include "oracles.hpp"

#include <semtab/errors.hpp>
#include <semtab/similarity.hpp>
#include <semtab/text.hpp>

#include <fstream>
#include <random>
#include <set>
#include <sstream>

using namespace semtab;

namespace {

std::vector<std::pair<std::string, std::string>> porter_reference() {
  std::ifstream in(fixtures::data_dir() / "porter_reference.tsv");
  std::vector<std::pair<std::string, std::string>> out;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') {
      continue;
    }
    const auto tab = line.find('\t');
    out.emplace_back(line.substr(0, tab), line.substr(tab + 1));
  }
  return out;
}

std::string random_word(std::mt19937& rng, std::size_t max_len) {
  static constexpr std::string_view letters = "abcdefghijklmnopqrstuvwxyzeeaaiioosy";
  std::string w(1 + rng() % max_len, 'a');
  for (auto& ch : w) {
    ch = letters[rng() % letters.size()];
  }
  return w;
}

} // namespace

TEST_CASE("tokenize") {
  CHECK(tokenize("Palpitation is a bodily sensation", true) ==
        TokenList{"palpitation", "bodily", "sensation"});
  CHECK(tokenize("", true).empty());
  CHECK(tokenize("Body Sensation", false) == TokenList{"body", "sensation"});
  CHECK(tokenize("Joyous and boat have same strength", true) ==
        TokenList{"joyous", "boat", "strength"});
  CHECK(tokenize("(a) -- b, c.", false) == TokenList{"a", "b", "c"});
  CHECK(tokenize("value 5.6 and 1,000.", false) == TokenList{"value", "5.6", "and", "1,000"});
  CHECK(tokenize("don't", true).empty());
  CHECK(tokenize("Naïve café", false) == TokenList{"naïve", "café"});
  CHECK(tokenize("!!! ...", false).empty());
}

TEST_CASE("stop-word list has the standard 179 distinct entries") {
  const auto words = stopwords();
  CHECK(words.size() == 179);
  CHECK(std::set<std::string_view>(words.begin(), words.end()).size() == 179);
  CHECK(is_stopword("the"));
  CHECK(is_stopword("same"));
  CHECK_FALSE(is_stopword("boat"));
}

TEST_CASE("porter_stem matches the reference table") {
  const auto ref = porter_reference();
  REQUIRE(ref.size() > 1500);
  std::size_t mismatches = 0;
  for (const auto& [word, stem] : ref) {
    const auto got = porter_stem(word);
    if (got != stem) {
      ++mismatches;
      MESSAGE(word << ": expected " << stem << ", got " << got);
    }
  }
  CHECK(mismatches == 0);
}

TEST_CASE("lemmatize strips regular inflections") {
  CHECK(lemmatize("palpitations") == "palpitation");
  CHECK(lemmatize("ponies") == "pony");
  CHECK(lemmatize("boxes") == "box");
  CHECK(lemmatize("glasses") == "glass");
  CHECK(lemmatize("stopped") == "stop");
  CHECK(lemmatize("hopping") == "hop");
  CHECK(lemmatize("sized") == "size");
  CHECK(lemmatize("falling") == "fall");
  CHECK(lemmatize("joyous") == "joyous");
  CHECK(lemmatize("analysis") == "analysis");
  CHECK(lemmatize("bus") == "bus");
}

TEST_CASE("canonicalize") {
  CHECK(canonicalize("Sensation") == "sensat");
  CHECK(canonicalize("boat") == "boat");
  CHECK(canonicalize("palpitations") == "palpit");
  CHECK(canonicalize("heartbeats") == "heartbeat");
  CHECK(canonicalize("5.6") == "5.6");
  CHECK(canonicalize("Café") == "café");
  CHECK(canonicalize("sized") == canonicalize("size"));
  CHECK(canonicalize("body") != canonicalize("bodily"));
}

TEST_CASE("oracle vocabulary classes hold under canonicalize") {
  std::map<int, std::string> canon;
  for (const auto& w : oracle::kVocab) {
    if (w.class_id < 0) {
      CHECK(is_stopword(to_lower_ascii(w.text)));
      continue;
    }
    const auto c = canonicalize(w.text);
    const auto [it, inserted] = canon.emplace(w.class_id, c);
    CHECK_MESSAGE(it->second == c, w.text);
  }
  std::set<std::string> distinct;
  for (const auto& [id, c] : canon) {
    distinct.insert(c);
  }
  CHECK(distinct.size() == canon.size());
}

TEST_CASE("canonicalize is idempotent") {
  for (const auto& [word, stem] : porter_reference()) {
    const auto once = canonicalize(word);
    CHECK_MESSAGE(canonicalize(once) == once, word);
  }
  std::mt19937 rng(3);
  for (int i = 0; i < 5000; ++i) {
    const auto w = random_word(rng, 14);
    const auto once = canonicalize(w);
    CHECK_MESSAGE(canonicalize(once) == once, w);
  }
}

TEST_CASE("binary_match") {
  const auto sim = Similarity::binary_match();
  CHECK(sim("Sensation", "sensation") == 1.0);
  CHECK(sim("boat", "museum") == 0.0);
  CHECK(sim("palpitations", "Palpitation") == 1.0);
  CHECK(sim("5.6", "5.60") == 0.0);
}

TEST_CASE("edit_distance similarity") {
  const auto sim = Similarity::edit_distance();
  CHECK(sim("heartbeat", "heartbeats") == 1.0);
  CHECK(sim("boat", "coat") == doctest::Approx(0.75));
  CHECK(sim("abc", "xyz") == 0.0);
}

TEST_CASE("levenshtein agrees with the full-matrix oracle") {
  std::mt19937 rng(5);
  for (int i = 0; i < 2000; ++i) {
    const auto a = random_word(rng, 9);
    const auto b = random_word(rng, 9);
    CHECK(levenshtein(a, b) == oracle::levenshtein_matrix(a, b));
  }
  CHECK(levenshtein("", "abc") == 3);
  CHECK(levenshtein("café", "cafe") == 1);
}

TEST_CASE("binary and edit similarity: symmetric, reflexive, bounded") {
  std::mt19937 rng(9);
  for (const auto& sim : {Similarity::binary_match(), Similarity::edit_distance()}) {
    for (int i = 0; i < 2000; ++i) {
      std::string a(1 + rng() % 10, ' ');
      std::string b(1 + rng() % 10, ' ');
      for (auto& ch : a) {
        ch = static_cast<char>(33 + rng() % 94);
      }
      for (auto& ch : b) {
        ch = static_cast<char>(33 + rng() % 94);
      }
      const double ab = sim(a, b);
      CHECK(ab >= 0.0);
      CHECK(ab <= 1.0);
      CHECK(ab == sim(b, a));
      CHECK(sim(a, a) == 1.0);
    }
  }
}

TEST_CASE("embedding cosine similarity") {
  const auto vectors = std::make_shared<const WordVectors>(WordVectors::from_text(
      "3 2\n"
      "joyous 1.0 0.0\n"
      "happy 0.8 0.6\n"
      "sad -1.0 0.0\n"
      "zero 0.0 0.0\n"));
  CHECK(vectors->dimension() == 2);
  CHECK(vectors->size() == 4);
  const auto sim = Similarity::embedding_cosine(vectors);
  CHECK(sim("Joyous", "happy") == doctest::Approx(0.8));
  CHECK(sim("joyous", "sad") == 0.0);
  CHECK(sim("joyous", "missing") == 0.0);
  CHECK(sim("zero", "joyous") == 0.0);
  CHECK(sim("happy", "happy") == doctest::Approx(1.0));
}

TEST_CASE("embedding file errors surface at construction") {
  CHECK_THROWS_AS(Similarity::embedding_cosine("/nonexistent/vectors.txt"), ConfigError);
  CHECK_THROWS_AS(WordVectors::from_text("a 1 2\nb 1\n"), ConfigError);
  CHECK_THROWS_AS(WordVectors::from_text("a 1 x\n"), ConfigError);
  CHECK_THROWS_AS(WordVectors::from_text(""), ConfigError);
}

TEST_CASE("similarity kind names") {
  CHECK(parse_similarity_kind("binary") == SimilarityKind::binary_match);
  CHECK(parse_similarity_kind("edit") == SimilarityKind::edit_distance);
  CHECK(parse_similarity_kind("embedding") == SimilarityKind::embedding_cosine);
  CHECK_FALSE(parse_similarity_kind("cosine"));
}

#include "doctest.h"

#include "fixtures.hpp"
#include "generators.hpp"
#include "oracles.hpp"

#include <semtab/errors.hpp>
#include <semtab/heuristics.hpp>

#include <algorithm>
#include <numeric>
#include <random>

using namespace semtab;

namespace {

const Statement kPalpitation{"0001", "s1", "Palpitation is a bodily sensation", Label::entailed};
const Statement kJoyous{"0001", "s2", "Joyous and boat have same strength", Label::unknown};

} // namespace

TEST_CASE("cell_score on the sample table") {
  const auto sim = Similarity::binary_match();
  const auto tokens = statement_tokens(kPalpitation.text);
  CHECK(cell_score(sim, tokens, "Body Sensation") == 1.0);
  CHECK(cell_score(sim, tokens, "palpitation") == 1.0);
  CHECK(cell_score(sim, tokens, "museum") == 0.0);
  CHECK(cell_score(sim, tokens, "") == 0.0);
  CHECK(cell_score(sim, {}, "palpitation") == 0.0);
}

TEST_CASE("duplicate statement tokens count separately") {
  const auto sim = Similarity::binary_match();
  CHECK(cell_score(sim, statement_tokens("boat boat boats"), "a boat") == 3.0);
}

TEST_CASE("cell stop words are kept unless requested") {
  const auto sim = Similarity::binary_match();
  const TokenList tokens{"the"};
  CHECK(cell_score(sim, tokens, "the museum") == 1.0);
  CHECK(cell_score(sim, tokens, "the museum", ScoringOptions{true}) == 0.0);
}

TEST_CASE("table_score on the sample table") {
  const auto sim = Similarity::binary_match();
  const auto table = fixtures::sample_table();
  const auto s1 = table_score(sim, kPalpitation, table);
  CHECK(s1.total == 2.0);
  CHECK(s1.per_cell.size() == 12);
  CHECK(table_score(sim, kJoyous, table).total == 2.0);

  const NormalizedTable blank("b", "", {{"", ""}, {"", ""}});
  CHECK(table_score(sim, kPalpitation, blank).total == 0.0);
}

TEST_CASE("table_score covers every grid position and sums per-cell scores") {
  const auto sim = Similarity::binary_match();
  const auto table = fixtures::sample_table();
  const auto score = table_score(sim, kPalpitation, table);
  double sum = 0;
  for (std::size_t i = 0; i < score.per_cell.size(); ++i) {
    CHECK(score.per_cell[i].row == i / table.cols());
    CHECK(score.per_cell[i].col == i % table.cols());
    CHECK(score.per_cell[i].score <= 3.0);
    sum += score.per_cell[i].score;
  }
  CHECK(sum == score.total);
}

TEST_CASE("classify_unknown uses a strict threshold") {
  TableScore s;
  s.total = 0.0;
  CHECK(classify_unknown(s, 2.0));
  s.total = 2.0;
  CHECK_FALSE(classify_unknown(s, 2.0));
  s.total = 1.99;
  CHECK(classify_unknown(s, 2.0));
  CHECK_THROWS_AS(classify_unknown(s, -1.0), ConfigError);
}

TEST_CASE("classify_cells marks the sample table's relevant cells") {
  const auto sim = Similarity::binary_match();
  const auto table = fixtures::sample_table();
  const auto m = classify_cells(sim, kPalpitation, table, 1.0);
  CHECK(m.relevant_count() == 2);
  CHECK(m.relevant(0, 0)); // Body Sensation
  CHECK(m.relevant(2, 0)); // palpitation
  CHECK(m.has_scores());
  CHECK(m.table_id() == "0001");
  CHECK(m.statement_id() == "s1");

  const Statement empty{"0001", "e", "", std::nullopt};
  CHECK(classify_cells(sim, empty, table, 1.0).relevant_count() == 0);
  CHECK(classify_cells(sim, kPalpitation, table, 0.0).relevant_count() == 12);
}

TEST_CASE("table_score equals the brute-force triple loop") {
  const auto sim = Similarity::binary_match();
  std::mt19937 rng(1234);
  for (int iter = 0; iter < 1000; ++iter) {
    const auto rc = gen::random_word_case(rng);
    const auto table = gen::to_table(rc.words);
    const Statement st{"rand", "s", oracle::join_words(rc.statement), std::nullopt};
    const auto score = table_score(sim, st, table);
    REQUIRE(score.total == oracle::brute_force_table_score(rc.words, rc.statement));
    for (const auto& cell : score.per_cell) {
      REQUIRE(cell.score == oracle::brute_force_cell_score(rc.words[cell.row][cell.col], rc.statement));
    }
  }
}

TEST_CASE("appending a token never lowers a cell score; adding a cell never lowers the total") {
  const auto sim = Similarity::binary_match();
  std::mt19937 rng(77);
  for (int iter = 0; iter < 300; ++iter) {
    auto rc = gen::random_word_case(rng);
    const Statement st{"rand", "s", oracle::join_words(rc.statement), std::nullopt};
    const auto tokens = statement_tokens(st.text);
    auto cell = rc.words[0][0];
    const double before = cell_score(sim, tokens, oracle::join_words(cell));
    cell.push_back(rng() % oracle::kVocab.size());
    CHECK(cell_score(sim, tokens, oracle::join_words(cell)) >= before);

    const double total = table_score(sim, st, gen::to_table(rc.words)).total;
    for (auto& row : rc.words) {
      row.push_back({rng() % oracle::kVocab.size()});
    }
    CHECK(table_score(sim, st, gen::to_table(rc.words)).total >= total);
  }
}

TEST_CASE("permuting rows and columns permutes cell scores") {
  const auto sim = Similarity::binary_match();
  std::mt19937 rng(99);
  for (int iter = 0; iter < 300; ++iter) {
    const auto rc = gen::random_word_case(rng);
    const Statement st{"rand", "s", oracle::join_words(rc.statement), std::nullopt};
    const auto rows = rc.words.size();
    const auto cols = rc.words[0].size();
    std::vector<std::size_t> rp(rows);
    std::vector<std::size_t> cp(cols);
    std::iota(rp.begin(), rp.end(), std::size_t{0});
    std::iota(cp.begin(), cp.end(), std::size_t{0});
    std::shuffle(rp.begin(), rp.end(), rng);
    std::shuffle(cp.begin(), cp.end(), rng);
    oracle::WordGrid permuted(rows, std::vector<std::vector<std::size_t>>(cols));
    for (std::size_t r = 0; r < rows; ++r) {
      for (std::size_t c = 0; c < cols; ++c) {
        permuted[r][c] = rc.words[rp[r]][cp[c]];
      }
    }
    const auto a = table_score(sim, st, gen::to_table(rc.words));
    const auto b = table_score(sim, st, gen::to_table(permuted));
    CHECK(a.total == b.total);
    for (std::size_t r = 0; r < rows; ++r) {
      for (std::size_t c = 0; c < cols; ++c) {
        CHECK(b.per_cell[r * cols + c].score == a.per_cell[rp[r] * cols + cp[c]].score);
      }
    }
  }
}

TEST_CASE("classify_cells depends only on per-cell scores") {
  const auto sim = Similarity::binary_match();
  const auto table = fixtures::sample_table();
  auto score = table_score(sim, kPalpitation, table);
  const auto forward = classify_cells(score, kPalpitation, table, 1.0);
  std::reverse(score.per_cell.begin(), score.per_cell.end());
  CHECK(classify_cells(score, kPalpitation, table, 1.0) == forward);
}

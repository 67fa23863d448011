#include "doctest.h"

#include "fixtures.hpp"

#include <semtab/ensemble.hpp>
#include <semtab/errors.hpp>

#include <random>

using namespace semtab;

namespace {

PredictionA pred(const std::string& id, double refuted, double entailed) {
  return PredictionA{id, {refuted, entailed}};
}

CellMatrix random_matrix(std::mt19937& rng, std::size_t rows, std::size_t cols) {
  CellMatrix m("t", "s", rows, cols);
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) {
      m.set_relevant(r, c, rng() % 3 == 0);
    }
  }
  return m;
}

} // namespace

TEST_CASE("weighted_average") {
  SUBCASE("two models") {
    const std::vector<WeightedPrediction> in{{pred("s", 0.6, 0.4), 0.7}, {pred("s", 0.2, 0.8), 0.3}};
    const auto out = weighted_average(in);
    CHECK(out.p_refuted() == doctest::Approx(0.48).epsilon(1e-12));
    CHECK(out.p_entailed() == doctest::Approx(0.52).epsilon(1e-12));
  }
  SUBCASE("single model") {
    const std::vector<WeightedPrediction> in{{pred("s", 0.3, 0.7), 1.0}};
    CHECK(weighted_average(in).probs == std::array<double, 2>{0.3, 0.7});
  }
  SUBCASE("symmetric") {
    const std::vector<WeightedPrediction> in{{pred("s", 1, 0), 0.5}, {pred("s", 0, 1), 0.5}};
    CHECK(weighted_average(in).probs == std::array<double, 2>{0.5, 0.5});
  }
  SUBCASE("errors") {
    const std::vector<WeightedPrediction> bad_weights{{pred("s", 1, 0), 0.5}, {pred("s", 0, 1), 0.6}};
    CHECK_THROWS_AS(weighted_average(bad_weights), ConfigError);
    const std::vector<WeightedPrediction> bad_ids{{pred("a", 1, 0), 0.5}, {pred("b", 0, 1), 0.5}};
    CHECK_THROWS_AS(weighted_average(bad_ids), DataError);
    CHECK_THROWS_AS(weighted_average({}), ConfigError);
  }
}

TEST_CASE("weighted_average stays normalized") {
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int iter = 0; iter < 2000; ++iter) {
    const auto n = 1 + rng() % 5;
    std::vector<double> raw(n);
    for (auto& w : raw) {
      w = unit(rng);
    }
    raw[0] += 1e-3;
    const auto weights = normalize_weights(raw);
    std::vector<WeightedPrediction> in;
    for (std::size_t i = 0; i < n; ++i) {
      const double p = unit(rng);
      in.push_back({pred("s", p, 1.0 - p), weights[i]});
    }
    const auto out = weighted_average(in);
    CHECK(out.probs[0] >= 0.0);
    CHECK(out.probs[1] <= 1.0);
    CHECK(std::abs(out.probs[0] + out.probs[1] - 1.0) <= 1e-6);

    // Scaling every raw weight by the same factor keeps the decision.
    std::vector<double> scaled(raw.size());
    const double k = 0.1 + 10.0 * unit(rng);
    for (std::size_t i = 0; i < n; ++i) {
      scaled[i] = raw[i] * k;
    }
    const auto w2 = normalize_weights(scaled);
    auto in2 = in;
    for (std::size_t i = 0; i < n; ++i) {
      in2[i].weight = w2[i];
    }
    const auto out2 = weighted_average(in2);
    if (std::abs(out.probs[0] - out.probs[1]) > 1e-9) {
      CHECK(argmax_label(out2) == argmax_label(out));
    }
  }
}

TEST_CASE("normalize_weights rejects bad input") {
  const std::vector<double> zeros{0.0, 0.0};
  const std::vector<double> negative{1.0, -0.5};
  CHECK_THROWS_AS(normalize_weights(zeros), ConfigError);
  CHECK_THROWS_AS(normalize_weights(negative), ConfigError);
}

TEST_CASE("argmax breaks ties toward entailed") {
  CHECK(argmax_label(pred("s", 0.5, 0.5)) == Label::entailed);
  CHECK(argmax_label(pred("s", 0.9, 0.1)) == Label::refuted);
  CHECK(argmax_label(pred("s", 0.1, 0.9)) == Label::entailed);
}

TEST_CASE("PredictionA validation") {
  CHECK_NOTHROW(pred("s", 0.25, 0.75).validate());
  CHECK_THROWS_AS(pred("s", 0.6, 0.6).validate(), DataError);
  CHECK_THROWS_AS(pred("s", -0.1, 1.1).validate(), DataError);
}

TEST_CASE("PredictionTable lookup") {
  PredictionTable t;
  t.add("", pred("s1", 0.1, 0.9));
  t.add("T2", pred("s1", 0.8, 0.2));
  CHECK(t.find("T2", "s1")->p_refuted() == 0.8);
  CHECK(t.find("T1", "s1")->p_refuted() == 0.1);
  CHECK(t.find("T1", "s9") == nullptr);
  CHECK_THROWS_AS(t.add("T2", pred("s1", 0.5, 0.5)), DataError);
}

TEST_CASE("pipeline_a") {
  const auto sim = Similarity::binary_match();
  const auto table = fixtures::sample_table();
  const Statement related{"0001", "s1", "Palpitation is a bodily sensation", std::nullopt};
  const Statement unrelated{"0001", "s4", "Quantum chromodynamics predicts gluons", std::nullopt};

  PredictionTable tapas;
  PredictionTable scibert;
  tapas.add("", pred("s1", 0.6, 0.4));
  scibert.add("", pred("s1", 0.2, 0.8));
  const std::vector<PredictionSource> sources{{&tapas, 0.7}, {&scibert, 0.3}};

  CHECK(table_score(sim, related, table).total == 2.0);
  CHECK(pipeline_a(related, table, sim, 2.0, sources) == Label::entailed);
  CHECK(pipeline_a(unrelated, table, sim, 2.0, sources) == Label::unknown);
  CHECK(pipeline_a(unrelated, table, sim, 2.0, {}) == Label::unknown);

  PredictionTable confident;
  confident.add("", pred("s1", 0.9, 0.1));
  const std::vector<PredictionSource> one{{&confident, 1.0}};
  CHECK(pipeline_a(related, table, sim, 2.0, one) == Label::refuted);

  PredictionTable empty;
  const std::vector<PredictionSource> missing{{&empty, 1.0}};
  CHECK_THROWS_WITH_AS(pipeline_a(related, table, sim, 2.0, missing), doctest::Contains("s1"),
                       DataError);
}

TEST_CASE("pipeline_a never overrides a heuristic unknown") {
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  PredictionTable model;
  model.add("", pred("s", 0.0, 1.0));
  const std::vector<PredictionSource> sources{{&model, 1.0}};
  const Statement st{"t", "s", "x", std::nullopt};
  for (int i = 0; i < 1000; ++i) {
    TableScore score;
    score.total = 4.0 * unit(rng);
    const double lambda = 4.0 * unit(rng);
    const auto label = pipeline_a(st, score, lambda, sources);
    if (score.total < lambda) {
      CHECK(label == Label::unknown);
    } else {
      CHECK(label == Label::entailed);
    }
  }
}

TEST_CASE("ensemble_b rules") {
  CellMatrix heur("t", "s", 3, 2);
  CellMatrix model("t", "s", 3, 2);
  CHECK(ensemble_b(heur, model).relevant_count() == 0);

  heur.set_relevant(0, 0, true);
  model.set_relevant(2, 1, true);
  const auto both = ensemble_b(heur, model);
  CHECK(both.relevant(0, 0));
  CHECK(both.relevant(2, 1));
  CHECK(both.relevant_count() == 2);
  CHECK(ensemble_b(heur, heur) == heur);

  CHECK(ensemble_b(heur, model, CellEnsembleRule::all).relevant_count() == 0);
  const auto prio = ensemble_b(heur, model, CellEnsembleRule::model_priority);
  CHECK(prio.labels() == model.labels());

  CHECK_THROWS_AS(ensemble_b(heur, CellMatrix("t", "s", 2, 2)), DataError);
}

TEST_CASE("ensemble_b OR is commutative, associative and idempotent") {
  std::mt19937 rng(8);
  for (int i = 0; i < 500; ++i) {
    const auto rows = 1 + rng() % 5;
    const auto cols = 1 + rng() % 5;
    const auto a = random_matrix(rng, rows, cols);
    const auto b = random_matrix(rng, rows, cols);
    const auto c = random_matrix(rng, rows, cols);
    CHECK(ensemble_b(a, b).labels() == ensemble_b(b, a).labels());
    CHECK(ensemble_b(ensemble_b(a, b), c).labels() == ensemble_b(a, ensemble_b(b, c)).labels());
    CHECK(ensemble_b(a, a).labels() == a.labels());
  }
}

TEST_CASE("rule names") {
  CHECK(parse_cell_ensemble_rule("or") == CellEnsembleRule::any);
  CHECK(parse_cell_ensemble_rule("and") == CellEnsembleRule::all);
  CHECK(parse_cell_ensemble_rule("model_priority") == CellEnsembleRule::model_priority);
  CHECK_FALSE(parse_cell_ensemble_rule("xor"));
}

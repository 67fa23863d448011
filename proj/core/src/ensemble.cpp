#include "semtab/ensemble.hpp"

#include "semtab/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace semtab {

std::optional<Label> label_from_int(long long value) noexcept {
  switch (value) {
  case 0:
    return Label::refuted;
  case 1:
    return Label::entailed;
  case 2:
    return Label::unknown;
  default:
    return std::nullopt;
  }
}

std::string_view to_string(Label label) noexcept {
  switch (label) {
  case Label::refuted:
    return "refuted";
  case Label::entailed:
    return "entailed";
  case Label::unknown:
    return "unknown";
  }
  return "?";
}

CellMatrix::CellMatrix(std::string table_id, std::string statement_id, std::size_t rows,
                       std::size_t cols)
    : table_id_(std::move(table_id)),
      statement_id_(std::move(statement_id)),
      rows_(rows),
      cols_(cols),
      labels_(rows * cols, 0) {}

std::size_t CellMatrix::index(std::size_t row, std::size_t col) const {
  if (row >= rows_ || col >= cols_) {
    throw DataError("cell (" + std::to_string(row) + "," + std::to_string(col) + ") outside " +
                    std::to_string(rows_) + "x" + std::to_string(cols_) + " matrix for table '" +
                    table_id_ + "' statement '" + statement_id_ + "'");
  }
  return row * cols_ + col;
}

bool CellMatrix::relevant(std::size_t row, std::size_t col) const {
  return labels_[index(row, col)] != 0;
}

void CellMatrix::set_relevant(std::size_t row, std::size_t col, bool value) {
  labels_[index(row, col)] = value ? 1 : 0;
}

std::size_t CellMatrix::relevant_count() const noexcept {
  return static_cast<std::size_t>(std::count(labels_.begin(), labels_.end(), std::uint8_t{1}));
}

double CellMatrix::score(std::size_t row, std::size_t col) const {
  const auto i = index(row, col);
  if (scores_.empty()) {
    throw std::logic_error("cell matrix has no scores");
  }
  return scores_[i];
}

void CellMatrix::set_score(std::size_t row, std::size_t col, double value) {
  const auto i = index(row, col);
  if (scores_.empty()) {
    scores_.assign(labels_.size(), 0.0);
  }
  scores_[i] = value;
}

void PredictionA::validate() const {
  for (const double p : probs) {
    if (!(p >= 0.0 && p <= 1.0)) {
      throw DataError("prediction for '" + statement_id + "' has a probability outside [0,1]");
    }
  }
  if (std::abs(probs[0] + probs[1] - 1.0) > kProbabilityTolerance) {
    throw DataError("prediction for '" + statement_id + "' does not sum to 1");
  }
}

PredictionA weighted_average(std::span<const WeightedPrediction> preds) {
  if (preds.empty()) {
    throw ConfigError("weighted_average needs at least one prediction");
  }
  double weight_sum = 0.0;
  for (const auto& p : preds) {
    if (!(p.weight >= 0.0)) {
      throw ConfigError("ensemble weights must be non-negative");
    }
    weight_sum += p.weight;
  }
  if (std::abs(weight_sum - 1.0) > kProbabilityTolerance) {
    throw ConfigError("ensemble weights sum to " + std::to_string(weight_sum) + ", expected 1");
  }
  PredictionA out;
  out.statement_id = preds.front().prediction.statement_id;
  out.probs = {0.0, 0.0};
  for (const auto& p : preds) {
    if (p.prediction.statement_id != out.statement_id) {
      throw DataError("cannot average predictions for '" + out.statement_id + "' and '" +
                      p.prediction.statement_id + "'");
    }
    out.probs[0] += p.weight * p.prediction.probs[0];
    out.probs[1] += p.weight * p.prediction.probs[1];
  }
  return out;
}

std::vector<double> normalize_weights(std::span<const double> weights) {
  double sum = 0.0;
  for (const double w : weights) {
    if (!(w >= 0.0) || !std::isfinite(w)) {
      throw ConfigError("ensemble weights must be finite and non-negative");
    }
    sum += w;
  }
  if (!(sum > 0.0)) {
    throw ConfigError("ensemble weights must not all be zero");
  }
  std::vector<double> out(weights.begin(), weights.end());
  for (auto& w : out) {
    w /= sum;
  }
  return out;
}

Label argmax_label(const PredictionA& p) noexcept {
  return p.probs[0] > p.probs[1] ? Label::refuted : Label::entailed;
}

void PredictionTable::add(std::string table_id, PredictionA prediction) {
  prediction.validate();
  StatementKey key{std::move(table_id), prediction.statement_id};
  if (!by_key_.emplace(key, std::move(prediction)).second) {
    throw DataError("duplicate prediction for statement '" + key.statement_id + "'" +
                    (key.table_id.empty() ? "" : " in table '" + key.table_id + "'"));
  }
}

const PredictionA* PredictionTable::find(const std::string& table_id,
                                         const std::string& statement_id) const {
  if (auto it = by_key_.find(StatementKey{table_id, statement_id}); it != by_key_.end()) {
    return &it->second;
  }
  if (auto it = by_key_.find(StatementKey{"", statement_id}); it != by_key_.end()) {
    return &it->second;
  }
  return nullptr;
}

Label pipeline_a(const Statement& statement, const TableScore& score, double lambda_a,
                 std::span<const PredictionSource> sources) {
  if (classify_unknown(score, lambda_a)) {
    return Label::unknown;
  }
  if (sources.empty()) {
    throw DataError("no model predictions available for statement '" + statement.statement_id +
                    "'");
  }
  std::vector<WeightedPrediction> preds;
  preds.reserve(sources.size());
  for (const auto& source : sources) {
    const PredictionA* p =
        source.table ? source.table->find(statement.table_id, statement.statement_id) : nullptr;
    if (p == nullptr) {
      throw DataError("missing prediction for statement '" + statement.statement_id +
                      "' in table '" + statement.table_id + "'");
    }
    PredictionA copy = *p;
    copy.statement_id = statement.statement_id;
    preds.push_back({std::move(copy), source.weight});
  }
  return argmax_label(weighted_average(preds));
}

Label pipeline_a(const Statement& statement, const NormalizedTable& table, const Similarity& sim,
                 double lambda_a, std::span<const PredictionSource> sources,
                 const ScoringOptions& options) {
  return pipeline_a(statement, table_score(sim, statement, table, options), lambda_a, sources);
}

std::string_view to_string(CellEnsembleRule rule) noexcept {
  switch (rule) {
  case CellEnsembleRule::any:
    return "or";
  case CellEnsembleRule::all:
    return "and";
  case CellEnsembleRule::model_priority:
    return "model_priority";
  }
  return "?";
}

std::optional<CellEnsembleRule> parse_cell_ensemble_rule(std::string_view name) noexcept {
  if (name == "or") {
    return CellEnsembleRule::any;
  }
  if (name == "and") {
    return CellEnsembleRule::all;
  }
  if (name == "model_priority") {
    return CellEnsembleRule::model_priority;
  }
  return std::nullopt;
}

CellMatrix ensemble_b(const CellMatrix& heur, const CellMatrix& model, CellEnsembleRule rule) {
  if (!heur.same_shape(model)) {
    throw DataError("cell matrices for table '" + heur.table_id() + "' statement '" +
                    heur.statement_id() + "' differ in shape: " + std::to_string(heur.rows()) +
                    "x" + std::to_string(heur.cols()) + " vs " + std::to_string(model.rows()) +
                    "x" + std::to_string(model.cols()));
  }
  CellMatrix out = heur;
  for (std::size_t r = 0; r < heur.rows(); ++r) {
    for (std::size_t c = 0; c < heur.cols(); ++c) {
      const bool h = heur.relevant(r, c);
      const bool m = model.relevant(r, c);
      bool v = m;
      if (rule == CellEnsembleRule::any) {
        v = h || m;
      } else if (rule == CellEnsembleRule::all) {
        v = h && m;
      }
      out.set_relevant(r, c, v);
    }
  }
  return out;
}

} // namespace semtab

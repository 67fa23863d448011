#pragma once

#include "semtab/cell_matrix.hpp"
#include "semtab/heuristics.hpp"
#include "semtab/similarity.hpp"
#include "semtab/statement.hpp"
#include "semtab/table.hpp"

#include <array>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace semtab {

inline constexpr double kProbabilityTolerance = 1e-6;

/// Two-class output of an external model: {p_refuted, p_entailed}.
struct PredictionA {
  std::string statement_id;
  std::array<double, 2> probs{0.5, 0.5};

  double p_refuted() const noexcept { return probs[0]; }
  double p_entailed() const noexcept { return probs[1]; }

  /// Throws DataError unless both components lie in [0,1] and sum to 1.
  void validate() const;
};

struct WeightedPrediction {
  PredictionA prediction;
  double weight = 1.0;
};

/// Component-wise weighted mean. Weights must be >= 0 and sum to 1.
PredictionA weighted_average(std::span<const WeightedPrediction> preds);

/// Scales non-negative weights to sum to 1.
std::vector<double> normalize_weights(std::span<const double> weights);

/// Highest probability wins; an exact tie goes to entailed.
Label argmax_label(const PredictionA& p) noexcept;

/// One model's predictions, looked up by (table_id, statement_id) first and
/// then by statement_id alone.
class PredictionTable {
public:
  void add(std::string table_id, PredictionA prediction);
  const PredictionA* find(const std::string& table_id, const std::string& statement_id) const;
  std::size_t size() const noexcept { return by_key_.size(); }

private:
  std::map<StatementKey, PredictionA> by_key_;
};

struct PredictionSource {
  const PredictionTable* table = nullptr;
  double weight = 1.0;
};

/// Heuristic first: a statement scoring below lambda_a is unknown and the
/// models are not consulted. Otherwise the weighted model average decides.
Label pipeline_a(const Statement& statement, const NormalizedTable& table,
                 const Similarity& sim, double lambda_a,
                 std::span<const PredictionSource> sources,
                 const ScoringOptions& options = {});

/// Same decision from a precomputed score.
Label pipeline_a(const Statement& statement, const TableScore& score, double lambda_a,
                 std::span<const PredictionSource> sources);

enum class CellEnsembleRule { any, all, model_priority };

std::string_view to_string(CellEnsembleRule rule) noexcept;
/// Accepts "or", "and", "model_priority".
std::optional<CellEnsembleRule> parse_cell_ensemble_rule(std::string_view name) noexcept;

/// Combines heuristic and model relevance. `any` is a cell-wise OR, `all` an
/// AND; `model_priority` returns the model's labels. Scores come from `heur`.
CellMatrix ensemble_b(const CellMatrix& heur, const CellMatrix& model,
                      CellEnsembleRule rule = CellEnsembleRule::any);

} // namespace semtab

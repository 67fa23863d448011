#pragma once

#include "semtab/cell_matrix.hpp"
#include "semtab/statement.hpp"

#include <array>
#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace semtab {

using LabelMap = std::map<StatementKey, Label>;

enum class EvalTask { a2, a3, b };

std::string_view to_string(EvalTask task) noexcept;
std::optional<EvalTask> parse_eval_task(std::string_view name) noexcept;

/// Rows are gold labels, columns predictions.
using Confusion = std::vector<std::vector<std::size_t>>;

struct EvalReport {
  EvalTask task = EvalTask::a3;
  std::map<std::string, double> per_table;
  /// Unweighted mean of per_table; 0 when no table could be scored.
  double overall_f1 = 0.0;
  Confusion confusion;
  std::size_t statements_evaluated = 0;
  std::size_t statements_skipped = 0;
  std::size_t tables_skipped = 0;
  std::size_t cells_evaluated = 0;
};

/// Per-table macro F1 over refuted/entailed/unknown, averaged over tables.
/// Classes absent from both gold and prediction in a table are left out.
EvalReport f1_3way(const LabelMap& gold, const LabelMap& pred);

/// As f1_3way over refuted/entailed after dropping gold-unknown statements.
/// An unknown prediction on a kept statement is a miss for its gold class.
EvalReport f1_2way(const LabelMap& gold, const LabelMap& pred);

/// Relevant cells are the positive class. F1 per statement (1 when neither
/// side marks a cell), averaged within each table, then across tables.
EvalReport f1_cells(std::span<const CellMatrix> gold, std::span<const CellMatrix> pred);

/// 3x3 counts over the gold statements.
Confusion confusion(const LabelMap& gold, const LabelMap& pred);

/// Human-readable summary, confusion matrix included.
std::string format_report(const EvalReport& report);

/// Machine-readable report; `config` is echoed under "config".
std::string report_to_json(const EvalReport& report,
                           const std::map<std::string, std::string>& config = {});

} // namespace semtab

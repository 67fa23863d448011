#include "semtab/heuristics.hpp"

#include "semtab/errors.hpp"

#include <algorithm>

namespace semtab {

namespace {

double best_match_sum(const Similarity& sim, const std::vector<PreparedToken>& statement,
                      const std::vector<PreparedToken>& cell) {
  if (cell.empty()) {
    return 0.0;
  }
  double total = 0.0;
  for (const auto& s : statement) {
    double best = 0.0;
    for (const auto& c : cell) {
      best = std::max(best, sim.score(c, s));
    }
    total += best;
  }
  return total;
}

} // namespace

TokenList statement_tokens(std::string_view text) {
  return tokenize(text, true);
}

double cell_score(const Similarity& sim, const TokenList& statement_tokens,
                  std::string_view cell_text, const ScoringOptions& options) {
  const auto cell = tokenize(cell_text, options.remove_cell_stopwords);
  return best_match_sum(sim, sim.prepare(statement_tokens), sim.prepare(cell));
}

TableScore table_score(const Similarity& sim, const Statement& statement,
                       const NormalizedTable& table, const ScoringOptions& options) {
  const auto prepared_statement = sim.prepare(statement_tokens(statement.text));
  TableScore out;
  out.per_cell.reserve(table.rows() * table.cols());
  for (std::size_t r = 0; r < table.rows(); ++r) {
    for (std::size_t c = 0; c < table.cols(); ++c) {
      const auto cell = sim.prepare(tokenize(table.at(r, c), options.remove_cell_stopwords));
      const double s = best_match_sum(sim, prepared_statement, cell);
      out.per_cell.push_back({r, c, s});
      out.total += s;
    }
  }
  return out;
}

bool classify_unknown(const TableScore& score, double lambda_a) {
  if (!(lambda_a >= 0)) {
    throw ConfigError("lambda_a must be non-negative");
  }
  return score.total < lambda_a;
}

CellMatrix classify_cells(const TableScore& score, const Statement& statement,
                          const NormalizedTable& table, double lambda_b) {
  if (!(lambda_b >= 0)) {
    throw ConfigError("lambda_b must be non-negative");
  }
  if (score.per_cell.size() != table.rows() * table.cols()) {
    throw DataError("score does not cover table '" + table.table_id() + "'");
  }
  CellMatrix out(table.table_id(), statement.statement_id, table.rows(), table.cols());
  for (const auto& cell : score.per_cell) {
    out.set_relevant(cell.row, cell.col, !(cell.score < lambda_b));
    out.set_score(cell.row, cell.col, cell.score);
  }
  return out;
}

CellMatrix classify_cells(const Similarity& sim, const Statement& statement,
                          const NormalizedTable& table, double lambda_b,
                          const ScoringOptions& options) {
  return classify_cells(table_score(sim, statement, table, options), statement, table, lambda_b);
}

} // namespace semtab

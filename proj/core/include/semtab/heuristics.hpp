#pragma once

#include "semtab/cell_matrix.hpp"
#include "semtab/similarity.hpp"
#include "semtab/statement.hpp"
#include "semtab/table.hpp"
#include "semtab/text.hpp"

#include <cstddef>
#include <string_view>
#include <vector>

namespace semtab {

inline constexpr double kDefaultLambdaA = 2.0;
inline constexpr double kDefaultLambdaB = 1.0;

struct CellScore {
  std::size_t row = 0;
  std::size_t col = 0;
  double score = 0.0;
};

/// Statement-to-table similarity: the sum of every cell score.
struct TableScore {
  double total = 0.0;
  std::vector<CellScore> per_cell; // row-major, header row included
};

struct ScoringOptions {
  /// Statement stop words are always removed; cells keep theirs unless set.
  bool remove_cell_stopwords = false;
};

/// Statement tokens as scored: stop words removed.
TokenList statement_tokens(std::string_view text);

/// For each statement token, the best match among the cell's tokens; summed.
double cell_score(const Similarity& sim, const TokenList& statement_tokens,
                  std::string_view cell_text, const ScoringOptions& options = {});

TableScore table_score(const Similarity& sim, const Statement& statement,
                       const NormalizedTable& table, const ScoringOptions& options = {});

/// True when the table shares too little with the statement (total < lambda_a).
bool classify_unknown(const TableScore& score, double lambda_a);

/// Cell (r, c) is relevant iff its score >= lambda_b. Scores are kept in the matrix.
CellMatrix classify_cells(const TableScore& score, const Statement& statement,
                          const NormalizedTable& table, double lambda_b);
CellMatrix classify_cells(const Similarity& sim, const Statement& statement,
                          const NormalizedTable& table, double lambda_b,
                          const ScoringOptions& options = {});

} // namespace semtab

#pragma once

#include "semtab/cell_matrix.hpp"
#include "semtab/statement.hpp"
#include "semtab/table.hpp"

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace semtab {

inline constexpr double kDefaultSampleFraction = 0.001;
inline constexpr std::size_t kDefaultTokenBudget = 512;

/// One cell-level entailment pair: premise built from the cell and its headers,
/// hypothesis is the statement text.
struct NliSample {
  std::string premise;
  std::string hypothesis;
  int label = 0; // 1 relevant, 0 irrelevant
  std::string table_id;
  std::string statement_id;
  std::size_t row = 0;
  std::size_t col = 0;

  bool operator==(const NliSample&) const = default;
};

enum class PremiseVariant { cell_only, cell_row, cell_col, cell_row_col };

std::string_view to_string(PremiseVariant variant) noexcept;
std::optional<PremiseVariant> parse_premise_variant(std::string_view name) noexcept;

/// One sample per non-header cell, row-major. The premise joins row header,
/// cell and column header with single spaces, skipping empty parts. The row
/// header of a first-column cell is the cell itself and is not repeated.
std::vector<NliSample> make_nli_samples(const NormalizedTable& table, const Statement& statement,
                                        const CellMatrix& gold, PremiseVariant variant);

struct BalancedSample {
  std::vector<NliSample> samples;
  /// Set when one class ran out and the output had to shrink.
  bool class_exhausted = false;
};

/// Equal numbers of relevant and irrelevant samples, about fraction * n in
/// total (rounded, then down to even). Output keeps input order.
BalancedSample sample_balanced(const std::vector<NliSample>& samples, double fraction,
                               std::uint64_t seed);

struct AugmentedStatement {
  Statement statement; // target table, label unknown
  std::string source_table_id;
  std::string source_statement_id;
  Label source_label = Label::entailed;
};

using StatementCorpus = std::map<std::string, std::vector<Statement>>;

/// Groups by table and drops statements without a label.
/// `dropped` receives the number removed.
StatementCorpus group_labeled(const std::vector<Statement>& statements, std::size_t* dropped = nullptr);

/// Draws count/2 entailed and count/2 refuted statements from tables other
/// than the target, without replacement, and relabels them unknown.
std::vector<AugmentedStatement> augment_unknown(const std::string& target_table_id,
                                                const StatementCorpus& corpus, std::size_t count,
                                                std::uint64_t seed);

/// Number of whitespace-separated tokens across a column's cells.
std::size_t column_token_count(const NormalizedTable& table, std::size_t col);

/// Keeps the columns most similar to the statement (binary matching) while
/// their total token count fits `token_budget`. Columns that do not fit are
/// skipped; survivors keep their original order.
NormalizedTable hem_prune(const NormalizedTable& table, const Statement& statement,
                          std::size_t token_budget);

/// seed + FNV-1a(table_id), so per-table streams do not depend on processing order.
std::uint64_t table_seed(std::uint64_t seed, std::string_view table_id) noexcept;

} // namespace semtab

#pragma once

#include <semtab/datagen.hpp>
#include <semtab/ensemble.hpp>
#include <semtab/heuristics.hpp>
#include <semtab/metrics.hpp>
#include <semtab/similarity.hpp>
#include <semtab/statement.hpp>
#include <semtab/table.hpp>

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace semtab::cli {

namespace fs = std::filesystem;

enum ExitCode : int { kSuccess = 0, kDataError = 1, kConfigError = 2 };

struct RunConfig {
  SimilarityKind similarity = SimilarityKind::binary_match;
  double lambda_a = kDefaultLambdaA;
  double lambda_b = kDefaultLambdaB;
  /// Empty means "not given": 0.7/0.3 for two prediction files, uniform otherwise.
  std::vector<double> weights;
  std::size_t token_budget = kDefaultTokenBudget;
  std::uint64_t seed = 0;
  CellEnsembleRule ensemble_b = CellEnsembleRule::any;
  fs::path embeddings;
  double fraction = kDefaultSampleFraction;
  bool balance = false;
  PremiseVariant premise = PremiseVariant::cell_row_col;
  bool remove_cell_stopwords = false;

  /// Throws ConfigError on negative thresholds, bad weights or a missing vector file.
  void validate() const;
  /// Effective values as strings, for echoing into reports.
  std::map<std::string, std::string> describe() const;
};

/// Weights for `sources` prediction files, normalized to sum to 1.
std::vector<double> resolve_weights(const RunConfig& config, std::size_t sources);

Similarity make_similarity(const RunConfig& config);

using TableMap = std::map<std::string, NormalizedTable>;

/// Labels every statement. Throws DataError listing statements whose table is
/// unknown or that need model predictions the sources lack.
LabelMap classify_a(const TableMap& tables, std::span<const Statement> statements,
                    std::span<const PredictionTable> predictions, const RunConfig& config);

/// Heuristic cell relevance, combined with `model` matrices when given.
std::vector<CellMatrix> classify_b(const TableMap& tables, std::span<const Statement> statements,
                                   const std::vector<CellMatrix>* model, const RunConfig& config);

/// Normalizes every table file in `in_dir` into `out_dir/<stem>.json`.
/// Failing files are logged and skipped; returns kDataError if any failed.
int cmd_normalize(const fs::path& in_dir, const fs::path& out_dir, std::ostream& out);

void cmd_classify_a(const fs::path& tables_dir, const fs::path& statements,
                    const std::vector<fs::path>& prediction_files, const RunConfig& config,
                    const fs::path& out_file, std::ostream& out);

void cmd_classify_b(const fs::path& tables_dir, const fs::path& statements,
                    const std::optional<fs::path>& model_cells, const RunConfig& config,
                    const fs::path& out_file, std::ostream& out);

/// Prints the text report to `out`; writes the JSON report when `json_file` is set.
EvalReport cmd_evaluate(EvalTask task, const fs::path& gold, const fs::path& pred,
                        const RunConfig& config, std::ostream& out,
                        const std::optional<fs::path>& json_file = std::nullopt);

/// NLI samples for every statement that has gold cells.
void cmd_gen_nli(const fs::path& tables_dir, const fs::path& statements, const fs::path& gold_cells,
                 const RunConfig& config, const fs::path& out_file, std::ostream& out);

/// `count` unknown statements per target table. Targets are the tables in
/// `tables_dir` when given, otherwise every table in the statement file.
void cmd_gen_augment(const std::optional<fs::path>& tables_dir, const fs::path& statements,
                     std::size_t count, const RunConfig& config, const fs::path& out_file,
                     std::ostream& out);

/// One pruned table per statement, written as `out_dir/<table_id>__<statement_id>.json`.
void cmd_gen_hem(const fs::path& tables_dir, const fs::path& statements, const RunConfig& config,
                 const fs::path& out_dir, std::ostream& out);

/// Full command line, argv[0] included. Returns the process exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace semtab::cli

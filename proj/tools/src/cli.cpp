#include "semtab/cli.hpp"

#include <semtab/errors.hpp>
#include <semtab/records.hpp>
#include <semtab/text.hpp>

#include "CLI11.hpp"

#include <spdlog/sinks/stdout_sinks.h>
#include <spdlog/spdlog.h>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <ostream>
#include <set>

namespace semtab::cli {

namespace {

std::string format_real(double v) {
  if (std::isinf(v)) {
    return v > 0 ? "inf" : "-inf";
  }
  char buf[64];
  const auto r = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, r.ptr);
}

double parse_real(const std::string& text, const std::string& flag) {
  const auto lower = to_lower_ascii(text);
  if (lower == "inf" || lower == "infinity" || lower == "+inf") {
    return std::numeric_limits<double>::infinity();
  }
  double v = 0.0;
  const auto* end = text.data() + text.size();
  const auto r = std::from_chars(text.data(), end, v);
  if (r.ec != std::errc{} || r.ptr != end || std::isnan(v)) {
    throw ConfigError(flag + ": not a number: '" + text + "'");
  }
  return v;
}

std::string list_keys(const std::vector<StatementKey>& keys) {
  std::string out;
  const std::size_t shown = std::min<std::size_t>(keys.size(), 20);
  for (std::size_t i = 0; i < shown; ++i) {
    out += (i ? ", " : "") + keys[i].table_id + "/" + keys[i].statement_id;
  }
  if (keys.size() > shown) {
    out += " and " + std::to_string(keys.size() - shown) + " more";
  }
  return out;
}

std::vector<Statement> sorted_statements(std::vector<Statement> statements) {
  std::sort(statements.begin(), statements.end(),
            [](const Statement& a, const Statement& b) { return key_of(a) < key_of(b); });
  return statements;
}

const NormalizedTable* find_table(const TableMap& tables, const Statement& s,
                                  std::vector<StatementKey>& missing) {
  const auto it = tables.find(s.table_id);
  if (it == tables.end()) {
    missing.push_back(key_of(s));
    return nullptr;
  }
  return &it->second;
}

void require_tables(const std::vector<StatementKey>& missing) {
  if (!missing.empty()) {
    throw DataError(std::to_string(missing.size()) +
                    " statement(s) reference tables that were not found: " + list_keys(missing));
  }
}

std::string file_safe(std::string s) {
  for (auto& ch : s) {
    const auto u = static_cast<unsigned char>(ch);
    if (!(std::isalnum(u) || ch == '-' || ch == '_' || ch == '.')) {
      ch = '_';
    }
  }
  return s;
}

void init_logging(spdlog::level::level_enum level) {
  auto logger = spdlog::get("semtab");
  if (!logger) {
    logger = spdlog::stderr_logger_mt("semtab");
    logger->set_pattern("[%l] %v");
  }
  logger->set_level(level);
  spdlog::set_default_logger(logger);
}

} // namespace

void RunConfig::validate() const {
  if (!(lambda_a >= 0.0) || !(lambda_b >= 0.0)) {
    throw ConfigError("thresholds must be non-negative (lambda_a " + format_real(lambda_a) +
                      ", lambda_b " + format_real(lambda_b) + ")");
  }
  if (!weights.empty()) {
    double sum = 0.0;
    for (const double w : weights) {
      if (!(w >= 0.0) || !std::isfinite(w)) {
        throw ConfigError("weights must be finite and non-negative");
      }
      sum += w;
    }
    if (std::abs(sum - 1.0) > 1e-6) {
      throw ConfigError("weights must sum to 1, got " + format_real(sum));
    }
  }
  if (!(fraction > 0.0 && fraction <= 1.0)) {
    throw ConfigError("fraction must be in (0, 1], got " + format_real(fraction));
  }
  if (similarity == SimilarityKind::embedding_cosine && embeddings.empty()) {
    throw ConfigError("embedding similarity needs --embeddings <path>");
  }
}

std::map<std::string, std::string> RunConfig::describe() const {
  std::string w;
  for (const double v : weights) {
    w += (w.empty() ? "" : ",") + format_real(v);
  }
  return {
      {"similarity", std::string(to_string(similarity))},
      {"lambda_a", format_real(lambda_a)},
      {"lambda_b", format_real(lambda_b)},
      {"weights", w.empty() ? "default" : w},
      {"budget", std::to_string(token_budget)},
      {"seed", std::to_string(seed)},
      {"ensemble_b", std::string(to_string(ensemble_b))},
      {"embeddings", embeddings.string()},
      {"fraction", format_real(fraction)},
      {"balance", balance ? "true" : "false"},
      {"premise", std::string(to_string(premise))},
      {"cell_stopwords", remove_cell_stopwords ? "true" : "false"},
  };
}

std::vector<double> resolve_weights(const RunConfig& config, std::size_t sources) {
  if (!config.weights.empty()) {
    if (config.weights.size() != sources) {
      throw ConfigError("got " + std::to_string(config.weights.size()) + " weight(s) for " +
                        std::to_string(sources) + " prediction file(s)");
    }
    return normalize_weights(config.weights);
  }
  if (sources == 2) {
    return {0.7, 0.3};
  }
  return std::vector<double>(sources, sources ? 1.0 / static_cast<double>(sources) : 0.0);
}

Similarity make_similarity(const RunConfig& config) {
  switch (config.similarity) {
  case SimilarityKind::binary_match:
    return Similarity::binary_match();
  case SimilarityKind::edit_distance:
    return Similarity::edit_distance();
  case SimilarityKind::embedding_cosine:
    if (config.embeddings.empty()) {
      throw ConfigError("embedding similarity needs --embeddings <path>");
    }
    return Similarity::embedding_cosine(config.embeddings);
  }
  throw ConfigError("unknown similarity kind");
}

LabelMap classify_a(const TableMap& tables, std::span<const Statement> statements,
                    std::span<const PredictionTable> predictions, const RunConfig& config) {
  config.validate();
  const auto sim = make_similarity(config);
  const auto weights = resolve_weights(config, predictions.size());
  std::vector<PredictionSource> sources;
  for (std::size_t i = 0; i < predictions.size(); ++i) {
    sources.push_back({&predictions[i], weights[i]});
  }
  const ScoringOptions options{config.remove_cell_stopwords};

  LabelMap out;
  std::vector<StatementKey> no_table;
  std::vector<StatementKey> uncovered;
  std::size_t unknown = 0;
  for (const auto& s : statements) {
    const auto* table = find_table(tables, s, no_table);
    if (table == nullptr) {
      continue;
    }
    const auto score = table_score(sim, s, *table, options);
    if (classify_unknown(score, config.lambda_a)) {
      out[key_of(s)] = Label::unknown;
      ++unknown;
      continue;
    }
    const bool covered =
        !sources.empty() && std::all_of(sources.begin(), sources.end(), [&](const auto& src) {
          return src.table->find(s.table_id, s.statement_id) != nullptr;
        });
    if (!covered) {
      uncovered.push_back(key_of(s));
      continue;
    }
    out[key_of(s)] = pipeline_a(s, score, config.lambda_a, sources);
  }
  require_tables(no_table);
  if (!uncovered.empty()) {
    throw DataError("missing model predictions for " + std::to_string(uncovered.size()) +
                    " statement(s): " + list_keys(uncovered));
  }
  spdlog::info("{} statement(s) labeled, {} unknown by the heuristic", out.size(), unknown);
  return out;
}

std::vector<CellMatrix> classify_b(const TableMap& tables, std::span<const Statement> statements,
                                   const std::vector<CellMatrix>* model, const RunConfig& config) {
  config.validate();
  const auto sim = make_similarity(config);
  const ScoringOptions options{config.remove_cell_stopwords};

  std::map<StatementKey, const CellMatrix*> by_key;
  if (model != nullptr) {
    for (const auto& m : *model) {
      by_key.emplace(StatementKey{m.table_id(), m.statement_id()}, &m);
    }
  }

  std::vector<CellMatrix> out;
  std::vector<StatementKey> no_table;
  std::vector<StatementKey> uncovered;
  for (const auto& s : statements) {
    const auto* table = find_table(tables, s, no_table);
    if (table == nullptr) {
      continue;
    }
    auto heur = classify_cells(sim, s, *table, config.lambda_b, options);
    if (model == nullptr) {
      out.push_back(std::move(heur));
      continue;
    }
    const auto it = by_key.find(key_of(s));
    if (it == by_key.end()) {
      uncovered.push_back(key_of(s));
      continue;
    }
    out.push_back(ensemble_b(heur, *it->second, config.ensemble_b));
  }
  require_tables(no_table);
  if (!uncovered.empty()) {
    throw DataError("model cell file has no matrix for " + std::to_string(uncovered.size()) +
                    " statement(s): " + list_keys(uncovered));
  }
  return out;
}

int cmd_normalize(const fs::path& in_dir, const fs::path& out_dir, std::ostream& out) {
  const auto files = list_table_files(in_dir);
  fs::create_directories(out_dir);
  std::size_t written = 0;
  std::size_t failed = 0;
  std::set<std::string> stems;
  for (const auto& path : files) {
    try {
      const auto stem = path.stem().string();
      if (!stems.insert(stem).second) {
        throw DataError("another input already produced " + stem + ".json");
      }
      write_table(out_dir / (stem + ".json"), normalize(read_any_table(path)));
      ++written;
    } catch (const std::exception& e) {
      spdlog::error("{}: {}", path.string(), e.what());
      ++failed;
    }
  }
  out << "normalized " << written << " table(s), " << failed << " failed\n";
  return failed ? kDataError : kSuccess;
}

void cmd_classify_a(const fs::path& tables_dir, const fs::path& statements,
                    const std::vector<fs::path>& prediction_files, const RunConfig& config,
                    const fs::path& out_file, std::ostream& out) {
  config.validate();
  const auto tables = load_tables(tables_dir);
  const auto stmts = read_statements(statements);
  std::vector<PredictionTable> predictions;
  for (const auto& p : prediction_files) {
    predictions.push_back(read_predictions(p));
  }
  const auto labels = classify_a(tables, stmts, predictions, config);
  write_text(out_file, format_labels(labels));
  out << "labeled " << labels.size() << " statement(s) from " << tables.size() << " table(s)\n";
}

void cmd_classify_b(const fs::path& tables_dir, const fs::path& statements,
                    const std::optional<fs::path>& model_cells, const RunConfig& config,
                    const fs::path& out_file, std::ostream& out) {
  config.validate();
  const auto tables = load_tables(tables_dir);
  const auto stmts = read_statements(statements);
  std::optional<std::vector<CellMatrix>> model;
  if (model_cells) {
    model = read_cells(*model_cells);
  }
  const auto cells = classify_b(tables, stmts, model ? &*model : nullptr, config);
  write_text(out_file, format_cells(cells));
  std::size_t relevant = 0;
  for (const auto& m : cells) {
    relevant += m.relevant_count();
  }
  out << "classified cells for " << cells.size() << " statement(s), " << relevant
      << " relevant\n";
}

EvalReport cmd_evaluate(EvalTask task, const fs::path& gold, const fs::path& pred,
                        const RunConfig& config, std::ostream& out,
                        const std::optional<fs::path>& json_file) {
  EvalReport report;
  if (task == EvalTask::b) {
    report = f1_cells(read_cells(gold), read_cells(pred));
  } else {
    std::size_t unlabeled = 0;
    const auto g = read_labels(gold, &unlabeled);
    if (unlabeled > 0) {
      spdlog::warn("{} statement(s) with no label removed from {}", unlabeled, gold.string());
    }
    const auto p = read_labels(pred);
    report = task == EvalTask::a2 ? f1_2way(g, p) : f1_3way(g, p);
    if (report.statements_skipped > 0) {
      spdlog::info("{} gold-unknown statement(s) dropped for the 2-way task",
                   report.statements_skipped);
    }
  }
  if (report.tables_skipped > 0) {
    spdlog::warn("{} table(s) had nothing left to score and were skipped", report.tables_skipped);
  }

  auto echo = config.describe();
  echo["task"] = std::string(to_string(task));
  echo["gold"] = gold.string();
  echo["pred"] = pred.string();
  out << format_report(report) << "config:\n";
  for (const auto& [k, v] : echo) {
    out << "  " << k << ": " << v << "\n";
  }
  if (json_file) {
    write_text(*json_file, report_to_json(report, echo));
  }
  return report;
}

void cmd_gen_nli(const fs::path& tables_dir, const fs::path& statements, const fs::path& gold_cells,
                 const RunConfig& config, const fs::path& out_file, std::ostream& out) {
  config.validate();
  const auto tables = load_tables(tables_dir);
  const auto stmts = sorted_statements(read_statements(statements));
  const auto cells = read_cells(gold_cells);
  std::map<StatementKey, const CellMatrix*> by_key;
  for (const auto& m : cells) {
    by_key.emplace(StatementKey{m.table_id(), m.statement_id()}, &m);
  }

  std::vector<NliSample> samples;
  std::vector<StatementKey> no_table;
  std::size_t without_cells = 0;
  for (const auto& s : stmts) {
    const auto* table = find_table(tables, s, no_table);
    if (table == nullptr) {
      continue;
    }
    const auto it = by_key.find(key_of(s));
    if (it == by_key.end()) {
      ++without_cells;
      continue;
    }
    auto part = make_nli_samples(*table, s, *it->second, config.premise);
    samples.insert(samples.end(), std::make_move_iterator(part.begin()),
                   std::make_move_iterator(part.end()));
  }
  require_tables(no_table);
  if (without_cells > 0) {
    spdlog::warn("{} statement(s) without gold cells were skipped", without_cells);
  }
  const auto total = samples.size();
  if (config.balance) {
    samples = sample_balanced(samples, config.fraction, config.seed).samples;
  }
  write_text(out_file, format_nli_samples(samples));
  std::size_t positives = 0;
  for (const auto& s : samples) {
    positives += s.label == 1;
  }
  out << "wrote " << samples.size() << " of " << total << " NLI sample(s): " << positives
      << " relevant, " << samples.size() - positives << " irrelevant\n";
}

void cmd_gen_augment(const std::optional<fs::path>& tables_dir, const fs::path& statements,
                     std::size_t count, const RunConfig& config, const fs::path& out_file,
                     std::ostream& out) {
  config.validate();
  const auto stmts = read_statements(statements);
  std::size_t dropped = 0;
  const auto corpus = group_labeled(stmts, &dropped);
  if (dropped > 0) {
    spdlog::info("{} statement(s) with no label removed from the source corpus", dropped);
  }

  std::set<std::string> targets;
  if (tables_dir) {
    for (const auto& [id, table] : load_tables(*tables_dir)) {
      targets.insert(id);
    }
  } else {
    for (const auto& s : stmts) {
      targets.insert(s.table_id);
    }
  }

  std::vector<Statement> generated;
  for (const auto& target : targets) {
    for (auto& a : augment_unknown(target, corpus, count, table_seed(config.seed, target))) {
      generated.push_back(std::move(a.statement));
    }
  }
  write_text(out_file, format_statements(generated));
  out << "generated " << generated.size() << " unknown statement(s) for " << targets.size()
      << " table(s)\n";
}

void cmd_gen_hem(const fs::path& tables_dir, const fs::path& statements, const RunConfig& config,
                 const fs::path& out_dir, std::ostream& out) {
  config.validate();
  const auto tables = load_tables(tables_dir);
  const auto stmts = sorted_statements(read_statements(statements));
  fs::create_directories(out_dir);
  std::vector<StatementKey> no_table;
  std::size_t written = 0;
  std::size_t columns_in = 0;
  std::size_t columns_out = 0;
  for (const auto& s : stmts) {
    const auto* table = find_table(tables, s, no_table);
    if (table == nullptr) {
      continue;
    }
    const auto pruned = hem_prune(*table, s, config.token_budget);
    columns_in += table->cols();
    columns_out += pruned.cols();
    write_table(out_dir / (file_safe(s.table_id) + "__" + file_safe(s.statement_id) + ".json"),
                pruned);
    ++written;
  }
  require_tables(no_table);
  out << "wrote " << written << " pruned table(s), kept " << columns_out << " of " << columns_in
      << " column(s)\n";
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Statement verification and evidence finding over tables", "semtab"};
  app.require_subcommand(1);
  app.set_config("--config", "", "TOML or INI file supplying option values");

  RunConfig config;
  std::string similarity = "binary";
  std::string lambda_a;
  std::string lambda_b;
  std::string fraction;
  std::string rule = "or";
  std::string premise = "cell_row_col";
  std::string embeddings;
  bool verbose = false;
  bool quiet = false;

  app.add_option("--similarity", similarity, "binary, edit or embedding")->capture_default_str();
  app.add_option("--lambda-a", lambda_a, "Unknown threshold on the table score (inf allowed)");
  app.add_option("--lambda-b", lambda_b, "Relevance threshold on cell scores");
  app.add_option("--weights", config.weights, "Ensemble weights, one per prediction file")
      ->delimiter(',');
  app.add_option("--budget", config.token_budget, "Token budget for hem")->capture_default_str();
  app.add_option("--seed", config.seed, "Random seed")->capture_default_str();
  app.add_option("--ensemble-b", rule, "or, and or model_priority")->capture_default_str();
  app.add_option("--embeddings", embeddings, "Word vector file for embedding similarity");
  app.add_option("--fraction", fraction, "Sampling fraction for nli --balance");
  app.add_flag("--balance", config.balance, "Balance nli samples by class");
  app.add_option("--premise", premise, "cell_only, cell_row, cell_col or cell_row_col")
      ->capture_default_str();
  app.add_flag("--cell-stopwords", config.remove_cell_stopwords,
               "Also drop stop words from cell text when scoring");
  app.add_flag("-v,--verbose", verbose, "Debug logging");
  app.add_flag("-q,--quiet", quiet, "Only log errors");

  auto* normalize_cmd = app.add_subcommand("normalize", "Flatten table files into one header row");
  normalize_cmd->fallthrough();
  std::string in_dir;
  std::string out_dir;
  normalize_cmd->add_option("in_dir", in_dir)->required();
  normalize_cmd->add_option("out_dir", out_dir)->required();

  std::string tables;
  std::string statements;
  std::string out_file;
  std::vector<std::string> pred_files;
  auto* classify_a_cmd = app.add_subcommand("classify-a", "Label statements refuted/entailed/unknown");
  classify_a_cmd->fallthrough();
  classify_a_cmd->add_option("--tables", tables, "Table directory")->required();
  classify_a_cmd->add_option("--statements", statements, "Statement file")->required();
  classify_a_cmd->add_option("--pred", pred_files, "Model prediction file (repeatable)");
  classify_a_cmd->add_option("--out", out_file, "Label file to write")->required();

  std::string model_cells;
  auto* classify_b_cmd = app.add_subcommand("classify-b", "Mark the cells relevant to each statement");
  classify_b_cmd->fallthrough();
  classify_b_cmd->add_option("--tables", tables, "Table directory")->required();
  classify_b_cmd->add_option("--statements", statements, "Statement file")->required();
  classify_b_cmd->add_option("--model", model_cells, "Model cell predictions to combine");
  classify_b_cmd->add_option("--out", out_file, "Cell file to write")->required();

  std::string task;
  std::string gold;
  std::string pred;
  std::string report;
  auto* evaluate_cmd = app.add_subcommand("evaluate", "Per-table F1 against gold labels");
  evaluate_cmd->fallthrough();
  evaluate_cmd->add_option("task", task, "a2, a3 or b")
      ->required()
      ->check(CLI::IsMember({"a2", "a3", "b"}));
  evaluate_cmd->add_option("--gold", gold, "Gold labels or cells")->required();
  evaluate_cmd->add_option("--pred", pred, "Predicted labels or cells")->required();
  evaluate_cmd->add_option("--report", report, "Also write a JSON report here");

  auto* gen_cmd = app.add_subcommand("gen", "Generate training data");
  gen_cmd->fallthrough();
  gen_cmd->require_subcommand(1);

  std::string cells;
  auto* nli_cmd = gen_cmd->add_subcommand("nli", "Cell-level premise/hypothesis pairs");
  nli_cmd->fallthrough();
  nli_cmd->add_option("--tables", tables, "Table directory")->required();
  nli_cmd->add_option("--statements", statements, "Statement file")->required();
  nli_cmd->add_option("--cells", cells, "Gold cell file")->required();
  nli_cmd->add_option("--out", out_file, "Sample file to write")->required();

  std::size_t count = 0;
  auto* augment_cmd = gen_cmd->add_subcommand("augment", "Unknown statements borrowed from other tables");
  augment_cmd->fallthrough();
  augment_cmd->add_option("--tables", tables, "Target tables (default: every table with statements)");
  augment_cmd->add_option("--statements", statements, "Labeled statement file")->required();
  augment_cmd->add_option("--count", count, "Statements per table (even)")->required();
  augment_cmd->add_option("--out", out_file, "Statement file to write")->required();

  auto* hem_cmd = gen_cmd->add_subcommand("hem", "Prune tables to the columns that fit a token budget");
  hem_cmd->fallthrough();
  hem_cmd->add_option("--tables", tables, "Table directory")->required();
  hem_cmd->add_option("--statements", statements, "Statement file")->required();
  hem_cmd->add_option("--out-dir", out_dir, "Directory for pruned tables")->required();

  std::vector<const char*> argv;
  argv.reserve(args.size());
  for (const auto& a : args) {
    argv.push_back(a.c_str());
  }
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kSuccess : kConfigError;
  }

  init_logging(verbose ? spdlog::level::debug : quiet ? spdlog::level::err : spdlog::level::info);

  try {
    const auto kind = parse_similarity_kind(similarity);
    if (!kind) {
      throw ConfigError("--similarity: expected binary, edit or embedding, got '" + similarity + "'");
    }
    config.similarity = *kind;
    const auto ensemble_rule = parse_cell_ensemble_rule(rule);
    if (!ensemble_rule) {
      throw ConfigError("--ensemble-b: expected or, and or model_priority, got '" + rule + "'");
    }
    config.ensemble_b = *ensemble_rule;
    const auto variant = parse_premise_variant(premise);
    if (!variant) {
      throw ConfigError("--premise: unknown variant '" + premise + "'");
    }
    config.premise = *variant;
    if (!lambda_a.empty()) {
      config.lambda_a = parse_real(lambda_a, "--lambda-a");
    }
    if (!lambda_b.empty()) {
      config.lambda_b = parse_real(lambda_b, "--lambda-b");
    }
    if (!fraction.empty()) {
      config.fraction = parse_real(fraction, "--fraction");
    }
    config.embeddings = embeddings;
    config.validate();
    for (const auto& [k, v] : config.describe()) {
      spdlog::debug("config {} = {}", k, v);
    }

    if (normalize_cmd->parsed()) {
      return cmd_normalize(in_dir, out_dir, out);
    }
    if (classify_a_cmd->parsed()) {
      std::vector<fs::path> preds(pred_files.begin(), pred_files.end());
      cmd_classify_a(tables, statements, preds, config, out_file, out);
    } else if (classify_b_cmd->parsed()) {
      cmd_classify_b(tables, statements,
                     model_cells.empty() ? std::nullopt : std::optional<fs::path>(model_cells),
                     config, out_file, out);
    } else if (evaluate_cmd->parsed()) {
      cmd_evaluate(*parse_eval_task(task), gold, pred, config, out,
                   report.empty() ? std::nullopt : std::optional<fs::path>(report));
    } else if (nli_cmd->parsed()) {
      cmd_gen_nli(tables, statements, cells, config, out_file, out);
    } else if (augment_cmd->parsed()) {
      cmd_gen_augment(tables.empty() ? std::nullopt : std::optional<fs::path>(tables), statements,
                      count, config, out_file, out);
    } else if (hem_cmd->parsed()) {
      cmd_gen_hem(tables, statements, config, out_dir, out);
    }
    return kSuccess;
  } catch (const ConfigError& e) {
    err << "configuration error: " << e.what() << "\n";
    return kConfigError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kDataError;
  }
}

} // namespace semtab::cli

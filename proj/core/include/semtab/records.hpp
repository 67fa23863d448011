#pragma once

#include "semtab/cell_matrix.hpp"
#include "semtab/datagen.hpp"
#include "semtab/ensemble.hpp"
#include "semtab/metrics.hpp"
#include "semtab/statement.hpp"
#include "semtab/table.hpp"

#include <filesystem>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

// Line-oriented record files: one JSON object per line, blank lines ignored.
//
//   statements   {"table_id", "statement_id", "text", "label": 0|1|2|null}
//   predictions  {"statement_id", "p_refuted", "p_entailed"} (+ optional "table_id")
//   labels       {"table_id", "statement_id", "label"}
//   cells        {"table_id", "statement_id", "row", "col", "label"} (+ optional "score")
//   nli samples  {"premise", "hypothesis", "label", "table_id", "statement_id", "row", "col"}
//
// Rows and columns are 0-based; row 0 is the header row.

namespace semtab {

std::vector<Statement> parse_statements(std::string_view text, const std::string& source = "<memory>");
std::vector<Statement> read_statements(const std::filesystem::path& path);
std::string format_statements(std::span<const Statement> statements);

PredictionTable parse_predictions(std::string_view text, const std::string& source = "<memory>");
PredictionTable read_predictions(const std::filesystem::path& path);

/// Reads label or statement files. Records whose label is null or absent are
/// counted in `unlabeled` and skipped.
LabelMap parse_labels(std::string_view text, const std::string& source = "<memory>",
                      std::size_t* unlabeled = nullptr);
LabelMap read_labels(const std::filesystem::path& path, std::size_t* unlabeled = nullptr);
std::string format_labels(const LabelMap& labels);

/// Every (table, statement) group must list each cell of its grid exactly
/// once; the grid size is taken from the largest row and column seen.
std::vector<CellMatrix> parse_cells(std::string_view text, const std::string& source = "<memory>");
std::vector<CellMatrix> read_cells(const std::filesystem::path& path);
/// Sorted by (table_id, statement_id, row, col).
std::string format_cells(std::span<const CellMatrix> matrices);

std::string format_nli_samples(std::span<const NliSample> samples);

void write_text(const std::filesystem::path& path, std::string_view contents);

/// Table files in a directory (*.json, *.html, *.htm), sorted by file name.
std::vector<std::filesystem::path> list_table_files(const std::filesystem::path& dir);

/// Reads a JSON or HTML table file; HTML tables take their id from the file stem.
RawTable read_any_table(const std::filesystem::path& path);

/// Loads and normalizes every table in `dir`, keyed by table_id.
std::map<std::string, NormalizedTable> load_tables(const std::filesystem::path& dir);

} // namespace semtab

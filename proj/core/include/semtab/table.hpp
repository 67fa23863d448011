#pragma once

#include <cstddef>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace semtab {

/// A header cell stored once but covering `span` columns.
/// `row` indexes the table rows, `col` indexes the cells as stored in that row.
struct HeaderSpan {
  std::size_t row = 0;
  std::size_t col = 0;
  std::size_t span = 1;

  bool operator==(const HeaderSpan&) const = default;
};

/// A table exactly as read from disk. Rows may be ragged.
struct RawTable {
  std::string table_id;
  std::string caption;
  std::string surrounding_text;
  std::vector<std::vector<std::string>> rows;
  std::size_t header_row_count = 0;
  std::vector<HeaderSpan> header_spans;

  std::size_t max_width() const noexcept;
  bool is_rectangular() const noexcept;

  bool operator==(const RawTable&) const = default;
};

/// Rectangular grid with a single header row (row 0).
class NormalizedTable {
public:
  /// Throws DataError unless `grid` is non-empty and rectangular with at least one column.
  NormalizedTable(std::string table_id, std::string effective_caption,
                  std::vector<std::vector<std::string>> grid);

  const std::string& table_id() const noexcept { return table_id_; }
  const std::string& effective_caption() const noexcept { return caption_; }
  std::size_t header_row_count() const noexcept { return 1; }
  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  const std::string& at(std::size_t row, std::size_t col) const;
  std::span<const std::string> row(std::size_t row) const;
  std::vector<std::string> column(std::size_t col) const;
  std::vector<std::vector<std::string>> grid() const;

  /// Keeps only the listed columns, in the order given.
  NormalizedTable select_columns(std::span<const std::size_t> cols) const;

  bool operator==(const NormalizedTable&) const = default;

private:
  std::string table_id_;
  std::string caption_;
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<std::string> cells_;
};

RawTable parse_table(const std::filesystem::path& path);
RawTable parse_table_text(std::string_view text, const std::string& source = "<memory>");

/// Pads every row to the widest row. Header cells with span info are
/// repeated across their span first; everything else is right-padded with "".
RawTable intrapolate(const RawTable& table);

/// Collapses the header rows of a rectangular table into one.
NormalizedTable merge_headers(const RawTable& table);

/// intrapolate followed by merge_headers.
NormalizedTable normalize(const RawTable& table);

RawTable to_raw(const NormalizedTable& table);

/// Canonical file encoding: deterministic, newline terminated.
std::string to_table_text(const RawTable& table);
std::string to_table_text(const NormalizedTable& table);
void write_table(const std::filesystem::path& path, const NormalizedTable& table);

/// Reads the first <table> element of an HTML document. Header rows are the
/// rows inside <thead> or the leading rows made only of <th> cells.
RawTable parse_html_table(std::string_view html, const std::string& table_id);

} // namespace semtab

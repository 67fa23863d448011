#include "semtab/table.hpp"

#include "semtab/errors.hpp"
#include "util.hpp"

#include "json.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

namespace semtab {

namespace detail {

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw DataError("cannot open " + path.string());
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) {
    throw DataError("cannot read " + path.string());
  }
  return buf.str();
}

void write_file(const std::filesystem::path& path, std::string_view contents) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) {
    throw DataError("cannot open " + path.string() + " for writing");
  }
  out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
  if (!out) {
    throw DataError("cannot write " + path.string());
  }
}

std::string_view trim(std::string_view s) noexcept {
  constexpr std::string_view ws = " \t\r\n\f\v";
  const auto first = s.find_first_not_of(ws);
  if (first == std::string_view::npos) {
    return {};
  }
  const auto last = s.find_last_not_of(ws);
  return s.substr(first, last - first + 1);
}

std::size_t line_of(std::string_view text, std::size_t offset) noexcept {
  offset = std::min(offset, text.size());
  return 1 + static_cast<std::size_t>(std::count(text.begin(), text.begin() + offset, '\n'));
}

} // namespace detail

using json = nlohmann::ordered_json;

std::size_t RawTable::max_width() const noexcept {
  std::size_t width = 0;
  for (const auto& r : rows) {
    width = std::max(width, r.size());
  }
  return width;
}

bool RawTable::is_rectangular() const noexcept {
  const auto width = max_width();
  return std::all_of(rows.begin(), rows.end(),
                     [width](const auto& r) { return r.size() == width; });
}

NormalizedTable::NormalizedTable(std::string table_id, std::string effective_caption,
                                 std::vector<std::vector<std::string>> grid)
    : table_id_(std::move(table_id)), caption_(std::move(effective_caption)) {
  if (grid.empty()) {
    throw DataError("table '" + table_id_ + "' has no rows");
  }
  rows_ = grid.size();
  cols_ = grid.front().size();
  if (cols_ == 0) {
    throw DataError("table '" + table_id_ + "' has no columns");
  }
  cells_.reserve(rows_ * cols_);
  for (std::size_t r = 0; r < rows_; ++r) {
    if (grid[r].size() != cols_) {
      throw DataError("table '" + table_id_ + "' row " + std::to_string(r) + " has " +
                      std::to_string(grid[r].size()) + " cells, expected " +
                      std::to_string(cols_));
    }
    for (auto& cell : grid[r]) {
      cells_.push_back(std::move(cell));
    }
  }
}

const std::string& NormalizedTable::at(std::size_t row, std::size_t col) const {
  if (row >= rows_ || col >= cols_) {
    throw std::out_of_range("cell (" + std::to_string(row) + "," + std::to_string(col) +
                            ") outside " + std::to_string(rows_) + "x" +
                            std::to_string(cols_) + " table");
  }
  return cells_[row * cols_ + col];
}

std::span<const std::string> NormalizedTable::row(std::size_t row) const {
  if (row >= rows_) {
    throw std::out_of_range("row " + std::to_string(row) + " outside table");
  }
  return std::span<const std::string>(cells_).subspan(row * cols_, cols_);
}

std::vector<std::string> NormalizedTable::column(std::size_t col) const {
  std::vector<std::string> out;
  out.reserve(rows_);
  for (std::size_t r = 0; r < rows_; ++r) {
    out.push_back(at(r, col));
  }
  return out;
}

std::vector<std::vector<std::string>> NormalizedTable::grid() const {
  std::vector<std::vector<std::string>> out;
  out.reserve(rows_);
  for (std::size_t r = 0; r < rows_; ++r) {
    const auto cells = row(r);
    out.emplace_back(cells.begin(), cells.end());
  }
  return out;
}

NormalizedTable NormalizedTable::select_columns(std::span<const std::size_t> cols) const {
  std::vector<std::vector<std::string>> out(rows_);
  for (std::size_t r = 0; r < rows_; ++r) {
    out[r].reserve(cols.size());
    for (const auto c : cols) {
      out[r].push_back(at(r, c));
    }
  }
  return NormalizedTable(table_id_, caption_, std::move(out));
}

namespace {

std::string require_string(const json& doc, const char* field, const std::string& source) {
  const auto it = doc.find(field);
  if (it == doc.end()) {
    throw ParseError(source, 0, std::string("missing field '") + field + "'");
  }
  if (!it->is_string()) {
    throw ParseError(source, 0, std::string("field '") + field + "' must be a string");
  }
  return it->get<std::string>();
}

std::string optional_string(const json& doc, const char* field, const std::string& source) {
  const auto it = doc.find(field);
  if (it == doc.end() || it->is_null()) {
    return {};
  }
  if (!it->is_string()) {
    throw ParseError(source, 0, std::string("field '") + field + "' must be a string");
  }
  return it->get<std::string>();
}

std::size_t require_index(const json& value, const std::string& field, const std::string& source) {
  if (!value.is_number_unsigned() && !(value.is_number_integer() && value.get<long long>() >= 0)) {
    throw ParseError(source, 0, "field '" + field + "' must be a non-negative integer");
  }
  return value.get<std::size_t>();
}

} // namespace

RawTable parse_table_text(std::string_view text, const std::string& source) {
  json doc;
  try {
    doc = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw ParseError(source, detail::line_of(text, e.byte == 0 ? 0 : e.byte - 1), e.what());
  }
  if (!doc.is_object()) {
    throw ParseError(source, 1, "table file must hold a JSON object");
  }

  RawTable t;
  t.table_id = require_string(doc, "table_id", source);
  if (t.table_id.empty()) {
    throw ParseError(source, 0, "field 'table_id' must not be empty");
  }
  t.caption = optional_string(doc, "caption", source);
  t.surrounding_text = optional_string(doc, "surrounding_text", source);

  const auto hrc = doc.find("header_row_count");
  if (hrc == doc.end()) {
    throw ParseError(source, 0, "missing field 'header_row_count'");
  }
  t.header_row_count = require_index(*hrc, "header_row_count", source);

  const auto rows = doc.find("rows");
  if (rows == doc.end()) {
    throw ParseError(source, 0, "missing field 'rows'");
  }
  if (!rows->is_array()) {
    throw ParseError(source, 0, "field 'rows' must be an array of arrays of strings");
  }
  for (std::size_t r = 0; r < rows->size(); ++r) {
    const auto& row = (*rows)[r];
    if (!row.is_array()) {
      throw ParseError(source, 0, "field 'rows[" + std::to_string(r) + "]' must be an array");
    }
    auto& out = t.rows.emplace_back();
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (!row[c].is_string()) {
        throw ParseError(source, 0,
                         "field 'rows[" + std::to_string(r) + "][" + std::to_string(c) +
                             "]' must be a string");
      }
      out.push_back(row[c].get<std::string>());
    }
  }
  if (t.rows.empty() || t.max_width() == 0) {
    throw ParseError(source, 0, "table '" + t.table_id + "' is empty");
  }
  if (t.header_row_count > t.rows.size()) {
    throw ParseError(source, 0, "field 'header_row_count' exceeds the number of rows");
  }

  if (const auto spans = doc.find("header_spans"); spans != doc.end() && !spans->is_null()) {
    if (!spans->is_array()) {
      throw ParseError(source, 0, "field 'header_spans' must be an array");
    }
    for (std::size_t i = 0; i < spans->size(); ++i) {
      const auto& s = (*spans)[i];
      const auto field = "header_spans[" + std::to_string(i) + "]";
      if (!s.is_object() || !s.contains("row") || !s.contains("col") || !s.contains("span")) {
        throw ParseError(source, 0, "field '" + field + "' needs row, col and span");
      }
      HeaderSpan hs{require_index(s["row"], field + ".row", source),
                    require_index(s["col"], field + ".col", source),
                    require_index(s["span"], field + ".span", source)};
      if (hs.row >= t.header_row_count) {
        throw ParseError(source, 0, "field '" + field + ".row' is not a header row");
      }
      if (hs.col >= t.rows[hs.row].size()) {
        throw ParseError(source, 0, "field '" + field + ".col' is outside its row");
      }
      if (hs.span == 0) {
        throw ParseError(source, 0, "field '" + field + ".span' must be at least 1");
      }
      t.header_spans.push_back(hs);
    }
  }
  return t;
}

RawTable parse_table(const std::filesystem::path& path) {
  return parse_table_text(detail::read_file(path), path.string());
}

namespace {

// Header rows with their spans expanded; other rows untouched.
std::vector<std::vector<std::string>> expand_spans(const RawTable& table) {
  std::vector<std::vector<std::string>> rows = table.rows;
  for (std::size_t r = 0; r < table.header_row_count; ++r) {
    std::vector<std::size_t> span_of(table.rows[r].size(), 1);
    bool any = false;
    for (const auto& hs : table.header_spans) {
      if (hs.row == r && hs.col < span_of.size()) {
        span_of[hs.col] = hs.span;
        any = true;
      }
    }
    if (!any) {
      continue;
    }
    std::vector<std::string> expanded;
    for (std::size_t c = 0; c < table.rows[r].size(); ++c) {
      expanded.insert(expanded.end(), span_of[c], table.rows[r][c]);
    }
    rows[r] = std::move(expanded);
  }
  return rows;
}

} // namespace

RawTable intrapolate(const RawTable& table) {
  RawTable out = table;
  out.rows = expand_spans(table);
  out.header_spans.clear();
  std::size_t width = 0;
  for (const auto& r : out.rows) {
    width = std::max(width, r.size());
  }
  for (auto& r : out.rows) {
    r.resize(width);
  }
  return out;
}

NormalizedTable merge_headers(const RawTable& table) {
  if (table.header_row_count == 0) {
    throw DataError("table '" + table.table_id +
                    "' has no header row; set header_row_count to at least 1");
  }
  if (!table.is_rectangular()) {
    throw DataError("table '" + table.table_id + "' is not rectangular; intrapolate it first");
  }

  const auto width = table.max_width();
  std::vector<std::vector<std::string>> grid;
  grid.reserve(table.rows.size() - table.header_row_count + 1);

  std::vector<std::string> header(width);
  for (std::size_t c = 0; c < width; ++c) {
    std::string merged;
    std::string_view last;
    for (std::size_t r = 0; r < table.header_row_count; ++r) {
      const std::string_view cell = detail::trim(table.rows[r][c]);
      if (cell.empty() || cell == last) {
        continue;
      }
      if (!merged.empty()) {
        merged += ' ';
      }
      merged += cell;
      last = cell;
    }
    // A lone header row keeps its cells byte-for-byte.
    header[c] = table.header_row_count == 1 ? table.rows[0][c] : std::move(merged);
  }
  grid.push_back(std::move(header));
  for (std::size_t r = table.header_row_count; r < table.rows.size(); ++r) {
    grid.push_back(table.rows[r]);
  }

  std::string caption = table.caption;
  if (!table.surrounding_text.empty()) {
    caption += ' ';
    caption += table.surrounding_text;
  }
  return NormalizedTable(table.table_id, std::string(detail::trim(caption)), std::move(grid));
}

NormalizedTable normalize(const RawTable& table) {
  return merge_headers(intrapolate(table));
}

RawTable to_raw(const NormalizedTable& table) {
  RawTable raw;
  raw.table_id = table.table_id();
  raw.caption = table.effective_caption();
  raw.rows = table.grid();
  raw.header_row_count = 1;
  return raw;
}

std::string to_table_text(const RawTable& table) {
  json doc;
  doc["table_id"] = table.table_id;
  doc["caption"] = table.caption;
  doc["surrounding_text"] = table.surrounding_text;
  doc["header_row_count"] = table.header_row_count;
  doc["rows"] = table.rows;
  if (!table.header_spans.empty()) {
    json spans = json::array();
    for (const auto& hs : table.header_spans) {
      spans.push_back({{"row", hs.row}, {"col", hs.col}, {"span", hs.span}});
    }
    doc["header_spans"] = std::move(spans);
  }
  return doc.dump(2) + "\n";
}

std::string to_table_text(const NormalizedTable& table) {
  return to_table_text(to_raw(table));
}

void write_table(const std::filesystem::path& path, const NormalizedTable& table) {
  detail::write_file(path, to_table_text(table));
}

} // namespace semtab

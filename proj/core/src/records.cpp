#include "semtab/records.hpp"

#include "semtab/errors.hpp"
#include "util.hpp"

#include "json.hpp"

#include <algorithm>
#include <set>
#include <tuple>

namespace semtab {

using json = nlohmann::ordered_json;

namespace {

template <typename Fn>
void for_each_record(std::string_view text, const std::string& source, Fn&& fn) {
  std::size_t pos = 0;
  std::size_t line_no = 0;
  while (pos < text.size()) {
    auto nl = text.find('\n', pos);
    if (nl == std::string_view::npos) {
      nl = text.size();
    }
    const auto line = detail::trim(text.substr(pos, nl - pos));
    pos = nl + 1;
    ++line_no;
    if (line.empty()) {
      continue;
    }
    json record;
    try {
      record = json::parse(line.begin(), line.end());
    } catch (const json::parse_error& e) {
      throw ParseError(source, line_no, e.what());
    }
    if (!record.is_object()) {
      throw ParseError(source, line_no, "record must be a JSON object");
    }
    fn(record, line_no);
  }
}

std::string get_string(const json& r, const char* field, const std::string& source,
                       std::size_t line) {
  const auto it = r.find(field);
  if (it == r.end() || !it->is_string()) {
    throw ParseError(source, line, std::string("field '") + field + "' must be a string");
  }
  return it->get<std::string>();
}

std::string get_optional_string(const json& r, const char* field, const std::string& source,
                                std::size_t line) {
  const auto it = r.find(field);
  if (it == r.end() || it->is_null()) {
    return {};
  }
  if (!it->is_string()) {
    throw ParseError(source, line, std::string("field '") + field + "' must be a string");
  }
  return it->get<std::string>();
}

double get_number(const json& r, const char* field, const std::string& source, std::size_t line) {
  const auto it = r.find(field);
  if (it == r.end() || !it->is_number()) {
    throw ParseError(source, line, std::string("field '") + field + "' must be a number");
  }
  return it->get<double>();
}

std::size_t get_index(const json& r, const char* field, const std::string& source,
                      std::size_t line) {
  const auto it = r.find(field);
  if (it == r.end() || !it->is_number_integer() || it->get<long long>() < 0) {
    throw ParseError(source, line, std::string("field '") + field + "' must be a non-negative integer");
  }
  return it->get<std::size_t>();
}

std::optional<Label> get_label(const json& r, const std::string& source, std::size_t line) {
  const auto it = r.find("label");
  if (it == r.end() || it->is_null()) {
    return std::nullopt;
  }
  if (!it->is_number_integer()) {
    throw ParseError(source, line, "field 'label' must be 0, 1 or 2");
  }
  const auto label = label_from_int(it->get<long long>());
  if (!label) {
    throw ParseError(source, line, "field 'label' must be 0, 1 or 2");
  }
  return label;
}

} // namespace

std::vector<Statement> parse_statements(std::string_view text, const std::string& source) {
  std::vector<Statement> out;
  std::set<StatementKey> seen;
  for_each_record(text, source, [&](const json& r, std::size_t line) {
    Statement s;
    s.table_id = get_string(r, "table_id", source, line);
    s.statement_id = get_string(r, "statement_id", source, line);
    s.text = get_string(r, "text", source, line);
    s.label = get_label(r, source, line);
    if (!seen.insert(key_of(s)).second) {
      throw ParseError(source, line, "duplicate statement '" + s.statement_id + "' in table '" +
                                         s.table_id + "'");
    }
    out.push_back(std::move(s));
  });
  return out;
}

std::vector<Statement> read_statements(const std::filesystem::path& path) {
  return parse_statements(detail::read_file(path), path.string());
}

std::string format_statements(std::span<const Statement> statements) {
  std::string out;
  for (const auto& s : statements) {
    json r;
    r["table_id"] = s.table_id;
    r["statement_id"] = s.statement_id;
    r["text"] = s.text;
    r["label"] = s.label ? json(to_int(*s.label)) : json(nullptr);
    out += r.dump() + "\n";
  }
  return out;
}

PredictionTable parse_predictions(std::string_view text, const std::string& source) {
  PredictionTable table;
  for_each_record(text, source, [&](const json& r, std::size_t line) {
    PredictionA p;
    p.statement_id = get_string(r, "statement_id", source, line);
    p.probs = {get_number(r, "p_refuted", source, line), get_number(r, "p_entailed", source, line)};
    try {
      table.add(get_optional_string(r, "table_id", source, line), std::move(p));
    } catch (const DataError& e) {
      throw ParseError(source, line, e.what());
    }
  });
  return table;
}

PredictionTable read_predictions(const std::filesystem::path& path) {
  return parse_predictions(detail::read_file(path), path.string());
}

LabelMap parse_labels(std::string_view text, const std::string& source, std::size_t* unlabeled) {
  LabelMap out;
  std::size_t skipped = 0;
  for_each_record(text, source, [&](const json& r, std::size_t line) {
    StatementKey key{get_string(r, "table_id", source, line),
                     get_string(r, "statement_id", source, line)};
    const auto label = get_label(r, source, line);
    if (!label) {
      ++skipped;
      return;
    }
    if (!out.emplace(key, *label).second) {
      throw ParseError(source, line, "duplicate label for statement '" + key.statement_id +
                                         "' in table '" + key.table_id + "'");
    }
  });
  if (unlabeled != nullptr) {
    *unlabeled = skipped;
  }
  return out;
}

LabelMap read_labels(const std::filesystem::path& path, std::size_t* unlabeled) {
  return parse_labels(detail::read_file(path), path.string(), unlabeled);
}

std::string format_labels(const LabelMap& labels) {
  std::string out;
  for (const auto& [key, label] : labels) {
    json r;
    r["table_id"] = key.table_id;
    r["statement_id"] = key.statement_id;
    r["label"] = to_int(label);
    out += r.dump() + "\n";
  }
  return out;
}

std::vector<CellMatrix> parse_cells(std::string_view text, const std::string& source) {
  struct Cell {
    std::size_t row;
    std::size_t col;
    bool label;
    std::optional<double> score;
    std::size_t line;
  };
  std::map<StatementKey, std::vector<Cell>> groups;
  for_each_record(text, source, [&](const json& r, std::size_t line) {
    StatementKey key{get_string(r, "table_id", source, line),
                     get_string(r, "statement_id", source, line)};
    Cell c{get_index(r, "row", source, line), get_index(r, "col", source, line), false,
           std::nullopt, line};
    const auto label = get_index(r, "label", source, line);
    if (label > 1) {
      throw ParseError(source, line, "field 'label' must be 0 or 1");
    }
    c.label = label == 1;
    if (const auto it = r.find("score"); it != r.end() && !it->is_null()) {
      c.score = get_number(r, "score", source, line);
    }
    groups[std::move(key)].push_back(c);
  });

  std::vector<CellMatrix> out;
  out.reserve(groups.size());
  for (auto& [key, cells] : groups) {
    std::size_t rows = 0;
    std::size_t cols = 0;
    for (const auto& c : cells) {
      rows = std::max(rows, c.row + 1);
      cols = std::max(cols, c.col + 1);
    }
    CellMatrix m(key.table_id, key.statement_id, rows, cols);
    std::vector<bool> filled(rows * cols, false);
    for (const auto& c : cells) {
      auto seen = filled[c.row * cols + c.col];
      if (seen) {
        throw ParseError(source, c.line, "cell (" + std::to_string(c.row) + "," +
                                             std::to_string(c.col) + ") listed twice for table '" +
                                             key.table_id + "' statement '" + key.statement_id + "'");
      }
      filled[c.row * cols + c.col] = true;
      m.set_relevant(c.row, c.col, c.label);
      if (c.score) {
        m.set_score(c.row, c.col, *c.score);
      }
    }
    if (const auto gap = std::find(filled.begin(), filled.end(), false); gap != filled.end()) {
      const auto i = static_cast<std::size_t>(gap - filled.begin());
      throw DataError(source + ": table '" + key.table_id + "' statement '" + key.statement_id +
                      "' is missing cell (" + std::to_string(i / cols) + "," +
                      std::to_string(i % cols) + ") of its " + std::to_string(rows) + "x" +
                      std::to_string(cols) + " grid");
    }
    out.push_back(std::move(m));
  }
  return out;
}

std::vector<CellMatrix> read_cells(const std::filesystem::path& path) {
  return parse_cells(detail::read_file(path), path.string());
}

std::string format_cells(std::span<const CellMatrix> matrices) {
  std::vector<const CellMatrix*> sorted;
  sorted.reserve(matrices.size());
  for (const auto& m : matrices) {
    sorted.push_back(&m);
  }
  std::sort(sorted.begin(), sorted.end(), [](const CellMatrix* a, const CellMatrix* b) {
    return std::tie(a->table_id(), a->statement_id()) < std::tie(b->table_id(), b->statement_id());
  });
  std::string out;
  for (const auto* m : sorted) {
    for (std::size_t r = 0; r < m->rows(); ++r) {
      for (std::size_t c = 0; c < m->cols(); ++c) {
        json rec;
        rec["table_id"] = m->table_id();
        rec["statement_id"] = m->statement_id();
        rec["row"] = r;
        rec["col"] = c;
        rec["label"] = m->relevant(r, c) ? 1 : 0;
        if (m->has_scores()) {
          rec["score"] = m->score(r, c);
        }
        out += rec.dump() + "\n";
      }
    }
  }
  return out;
}

std::string format_nli_samples(std::span<const NliSample> samples) {
  std::string out;
  for (const auto& s : samples) {
    json r;
    r["premise"] = s.premise;
    r["hypothesis"] = s.hypothesis;
    r["label"] = s.label;
    r["table_id"] = s.table_id;
    r["statement_id"] = s.statement_id;
    r["row"] = s.row;
    r["col"] = s.col;
    out += r.dump() + "\n";
  }
  return out;
}

void write_text(const std::filesystem::path& path, std::string_view contents) {
  detail::write_file(path, contents);
}

std::vector<std::filesystem::path> list_table_files(const std::filesystem::path& dir) {
  std::error_code ec;
  if (!std::filesystem::is_directory(dir, ec)) {
    throw DataError("not a directory: " + dir.string());
  }
  std::vector<std::filesystem::path> out;
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    const auto ext = entry.path().extension().string();
    if (ext == ".json" || ext == ".html" || ext == ".htm") {
      out.push_back(entry.path());
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

RawTable read_any_table(const std::filesystem::path& path) {
  const auto ext = path.extension().string();
  if (ext == ".html" || ext == ".htm") {
    return parse_html_table(detail::read_file(path), path.stem().string());
  }
  return parse_table(path);
}

std::map<std::string, NormalizedTable> load_tables(const std::filesystem::path& dir) {
  std::map<std::string, NormalizedTable> out;
  for (const auto& path : list_table_files(dir)) {
    auto table = normalize(read_any_table(path));
    const auto id = table.table_id();
    if (!out.emplace(id, std::move(table)).second) {
      throw DataError("duplicate table_id '" + id + "' in " + dir.string());
    }
  }
  return out;
}

} // namespace semtab

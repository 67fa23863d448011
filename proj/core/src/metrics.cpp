#include "semtab/metrics.hpp"

#include "semtab/errors.hpp"

#include "json.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>

namespace semtab {

std::string_view to_string(EvalTask task) noexcept {
  switch (task) {
  case EvalTask::a2:
    return "a2";
  case EvalTask::a3:
    return "a3";
  case EvalTask::b:
    return "b";
  }
  return "?";
}

std::optional<EvalTask> parse_eval_task(std::string_view name) noexcept {
  if (name == "a2") {
    return EvalTask::a2;
  }
  if (name == "a3") {
    return EvalTask::a3;
  }
  if (name == "b") {
    return EvalTask::b;
  }
  return std::nullopt;
}

namespace {

struct Counts {
  std::size_t tp = 0;
  std::size_t fp = 0;
  std::size_t fn = 0;

  bool empty() const noexcept { return tp + fp + fn == 0; }
  double f1() const noexcept {
    return static_cast<double>(2 * tp) / static_cast<double>(2 * tp + fp + fn);
  }
};

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

void require_coverage(const LabelMap& gold, const LabelMap& pred) {
  std::vector<StatementKey> missing;
  for (const auto& [key, label] : gold) {
    if (!pred.contains(key)) {
      missing.push_back(key);
    }
  }
  if (!missing.empty()) {
    throw DataError("missing predictions for " + std::to_string(missing.size()) +
                    " statement(s): " + list_keys(missing));
  }
}

double mean_of(const std::map<std::string, double>& values) {
  if (values.empty()) {
    return 0.0;
  }
  double sum = 0.0;
  for (const auto& [id, v] : values) {
    sum += v;
  }
  return sum / static_cast<double>(values.size());
}

EvalReport table_macro_f1(const LabelMap& gold, const LabelMap& pred,
                          std::span<const Label> classes, bool drop_gold_unknown, EvalTask task) {
  require_coverage(gold, pred);
  EvalReport report;
  report.task = task;
  report.confusion.assign(3, std::vector<std::size_t>(3, 0));

  // Per table: class -> counts, plus the number of statements kept.
  std::map<std::string, std::pair<std::array<Counts, 3>, std::size_t>> tables;
  std::map<std::string, bool> seen;
  for (const auto& [key, g] : gold) {
    seen.emplace(key.table_id, true);
    if (drop_gold_unknown && g == Label::unknown) {
      ++report.statements_skipped;
      continue;
    }
    const Label p = pred.at(key);
    ++report.confusion[to_int(g)][to_int(p)];
    ++report.statements_evaluated;
    auto& [counts, kept] = tables[key.table_id];
    ++kept;
    for (const Label k : classes) {
      auto& c = counts[to_int(k)];
      if (g == k && p == k) {
        ++c.tp;
      } else if (p == k) {
        ++c.fp;
      } else if (g == k) {
        ++c.fn;
      }
    }
  }
  for (const auto& [table_id, unused] : seen) {
    const auto it = tables.find(table_id);
    if (it == tables.end()) {
      ++report.tables_skipped;
      continue;
    }
    double sum = 0.0;
    std::size_t present = 0;
    for (const Label k : classes) {
      const auto& c = it->second.first[to_int(k)];
      if (!c.empty()) {
        sum += c.f1();
        ++present;
      }
    }
    report.per_table[table_id] = present ? sum / static_cast<double>(present) : 0.0;
  }
  report.overall_f1 = mean_of(report.per_table);
  return report;
}

} // namespace

EvalReport f1_3way(const LabelMap& gold, const LabelMap& pred) {
  static constexpr std::array<Label, 3> classes = {Label::refuted, Label::entailed, Label::unknown};
  return table_macro_f1(gold, pred, classes, false, EvalTask::a3);
}

EvalReport f1_2way(const LabelMap& gold, const LabelMap& pred) {
  static constexpr std::array<Label, 2> classes = {Label::refuted, Label::entailed};
  return table_macro_f1(gold, pred, classes, true, EvalTask::a2);
}

Confusion confusion(const LabelMap& gold, const LabelMap& pred) {
  require_coverage(gold, pred);
  Confusion m(3, std::vector<std::size_t>(3, 0));
  for (const auto& [key, g] : gold) {
    ++m[to_int(g)][to_int(pred.at(key))];
  }
  return m;
}

EvalReport f1_cells(std::span<const CellMatrix> gold, std::span<const CellMatrix> pred) {
  std::map<StatementKey, const CellMatrix*> by_key;
  for (const auto& m : pred) {
    if (!by_key.emplace(StatementKey{m.table_id(), m.statement_id()}, &m).second) {
      throw DataError("duplicate predicted cell matrix for table '" + m.table_id() +
                      "' statement '" + m.statement_id() + "'");
    }
  }

  EvalReport report;
  report.task = EvalTask::b;
  report.confusion.assign(2, std::vector<std::size_t>(2, 0));

  std::map<std::string, std::pair<double, std::size_t>> tables;
  std::set<StatementKey> seen_gold;
  std::vector<StatementKey> missing;
  for (const auto& g : gold) {
    StatementKey key{g.table_id(), g.statement_id()};
    if (!seen_gold.insert(key).second) {
      throw DataError("duplicate gold cell matrix for table '" + key.table_id + "' statement '" +
                      key.statement_id + "'");
    }
    const auto it = by_key.find(key);
    if (it == by_key.end()) {
      missing.push_back(std::move(key));
      continue;
    }
    const CellMatrix& p = *it->second;
    if (!g.same_shape(p)) {
      throw DataError("cell matrix shape mismatch for table '" + g.table_id() + "' statement '" +
                      g.statement_id() + "': gold " + std::to_string(g.rows()) + "x" +
                      std::to_string(g.cols()) + ", predicted " + std::to_string(p.rows()) + "x" +
                      std::to_string(p.cols()));
    }
    Counts c;
    for (std::size_t r = 0; r < g.rows(); ++r) {
      for (std::size_t col = 0; col < g.cols(); ++col) {
        const bool gv = g.relevant(r, col);
        const bool pv = p.relevant(r, col);
        ++report.confusion[gv ? 1 : 0][pv ? 1 : 0];
        c.tp += gv && pv;
        c.fp += !gv && pv;
        c.fn += gv && !pv;
      }
    }
    report.cells_evaluated += g.rows() * g.cols();
    ++report.statements_evaluated;
    auto& [sum, n] = tables[g.table_id()];
    sum += c.empty() ? 1.0 : c.f1();
    ++n;
  }
  if (!missing.empty()) {
    throw DataError("missing predicted cell matrices for " + std::to_string(missing.size()) +
                    " statement(s): " + list_keys(missing));
  }
  for (const auto& [table_id, acc] : tables) {
    report.per_table[table_id] = acc.first / static_cast<double>(acc.second);
  }
  report.overall_f1 = mean_of(report.per_table);
  return report;
}

std::string format_report(const EvalReport& report) {
  std::ostringstream out;
  out.setf(std::ios::fixed);
  out.precision(4);
  const bool cells = report.task == EvalTask::b;
  out << "task: " << to_string(report.task) << "\n";
  out << "overall F1: " << report.overall_f1 << "\n";
  out << "tables scored: " << report.per_table.size() << ", skipped: " << report.tables_skipped
      << "\n";
  out << "statements evaluated: " << report.statements_evaluated
      << ", skipped: " << report.statements_skipped << "\n";
  if (cells) {
    out << "cells evaluated: " << report.cells_evaluated << "\n";
  }
  out << "per-table F1:\n";
  for (const auto& [id, f1] : report.per_table) {
    out << "  " << id << "\t" << f1 << "\n";
  }
  out << "confusion (rows gold, columns predicted):\n";
  const std::vector<std::string> names =
      cells ? std::vector<std::string>{"irrelevant", "relevant"}
            : std::vector<std::string>{"refuted", "entailed", "unknown"};
  out << "  " << std::string(10, ' ');
  for (const auto& n : names) {
    out << "\t" << n;
  }
  out << "\n";
  for (std::size_t g = 0; g < report.confusion.size(); ++g) {
    out << "  " << names[g] << std::string(10 - std::min<std::size_t>(10, names[g].size()), ' ');
    for (const auto v : report.confusion[g]) {
      out << "\t" << v;
    }
    out << "\n";
  }
  return out.str();
}

std::string report_to_json(const EvalReport& report,
                           const std::map<std::string, std::string>& config) {
  nlohmann::ordered_json doc;
  doc["task"] = to_string(report.task);
  doc["overall_f1"] = report.overall_f1;
  doc["per_table_scores"] = report.per_table;
  doc["confusion"] = report.confusion;
  doc["counts"] = {{"statements_evaluated", report.statements_evaluated},
                   {"statements_skipped", report.statements_skipped},
                   {"tables_scored", report.per_table.size()},
                   {"tables_skipped", report.tables_skipped},
                   {"cells_evaluated", report.cells_evaluated}};
  if (!config.empty()) {
    doc["config"] = config;
  }
  return doc.dump(2) + "\n";
}

} // namespace semtab

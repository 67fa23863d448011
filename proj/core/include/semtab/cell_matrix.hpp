#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace semtab {

/// Per-cell relevance for one (table, statement) pair, row-major.
/// Label 1 marks a relevant cell.
class CellMatrix {
public:
  CellMatrix() = default;
  CellMatrix(std::string table_id, std::string statement_id, std::size_t rows, std::size_t cols);

  const std::string& table_id() const noexcept { return table_id_; }
  const std::string& statement_id() const noexcept { return statement_id_; }
  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  bool relevant(std::size_t row, std::size_t col) const;
  void set_relevant(std::size_t row, std::size_t col, bool value);
  std::size_t relevant_count() const noexcept;

  bool has_scores() const noexcept { return !scores_.empty(); }
  /// Requires has_scores().
  double score(std::size_t row, std::size_t col) const;
  void set_score(std::size_t row, std::size_t col, double value);

  bool same_shape(const CellMatrix& other) const noexcept {
    return rows_ == other.rows_ && cols_ == other.cols_;
  }

  const std::vector<std::uint8_t>& labels() const noexcept { return labels_; }

  bool operator==(const CellMatrix&) const = default;

private:
  std::size_t index(std::size_t row, std::size_t col) const;

  std::string table_id_;
  std::string statement_id_;
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<std::uint8_t> labels_;
  std::vector<double> scores_;
};

} // namespace semtab

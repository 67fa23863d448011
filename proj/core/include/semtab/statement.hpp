#pragma once

#include <compare>
#include <optional>
#include <string>
#include <string_view>

namespace semtab {

/// Subtask A label.
enum class Label : int { refuted = 0, entailed = 1, unknown = 2 };

std::optional<Label> label_from_int(long long value) noexcept;
inline int to_int(Label label) noexcept { return static_cast<int>(label); }
std::string_view to_string(Label label) noexcept;

struct Statement {
  std::string table_id;
  std::string statement_id;
  std::string text;
  std::optional<Label> label;

  bool operator==(const Statement&) const = default;
};

/// Statements are identified within their table.
struct StatementKey {
  std::string table_id;
  std::string statement_id;

  auto operator<=>(const StatementKey&) const = default;
  bool operator==(const StatementKey&) const = default;
};

inline StatementKey key_of(const Statement& s) {
  return {s.table_id, s.statement_id};
}

} // namespace semtab

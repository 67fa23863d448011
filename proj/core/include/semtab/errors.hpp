#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace semtab {

/// Input data is inconsistent: missing ids, mismatched dimensions, bad records.
class DataError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Caller supplied an invalid option (thresholds, weights, fractions, files).
class ConfigError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// A file could not be decoded. `line` is 1-based, 0 when unknown.
class ParseError : public DataError {
public:
  ParseError(std::string source, std::size_t line, const std::string& what)
      : DataError(source + (line ? ":" + std::to_string(line) : std::string()) + ": " + what),
        source_(std::move(source)),
        line_(line) {}

  const std::string& source() const noexcept { return source_; }
  std::size_t line() const noexcept { return line_; }

private:
  std::string source_;
  std::size_t line_;
};

} // namespace semtab

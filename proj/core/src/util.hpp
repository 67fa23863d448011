#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>

namespace semtab::detail {

std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::string_view contents);

std::string_view trim(std::string_view s) noexcept;

/// 1-based line number of a byte offset.
std::size_t line_of(std::string_view text, std::size_t offset) noexcept;

} // namespace semtab::detail

#pragma once

#include <semtab/table.hpp>

#include <cstdint>
#include <filesystem>
#include <string>

#ifndef SEMTAB_TEST_DATA_DIR
#error "SEMTAB_TEST_DATA_DIR must point at tests/data"
#endif

namespace fixtures {

inline std::filesystem::path data_dir() {
  return std::filesystem::path(SEMTAB_TEST_DATA_DIR);
}

/// 4x3 table: header [Body Sensation, Agoraphobic, Pleasant] and rows
/// [number, museum, lovely], [palpitation, shop, happiness], [heartbeat, boat, Joyous].
inline semtab::NormalizedTable sample_table() {
  return semtab::normalize(semtab::parse_table(data_dir() / "sample_table.json"));
}

/// Scratch directory removed on destruction.
class TempDir {
public:
  explicit TempDir(const std::string& name) {
    path_ = std::filesystem::temp_directory_path() /
            (name + "-" + std::to_string(reinterpret_cast<std::uintptr_t>(this)));
    std::filesystem::remove_all(path_);
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const std::filesystem::path& path() const noexcept { return path_; }

private:
  std::filesystem::path path_;
};

} // namespace fixtures

#pragma once

#include <filesystem>
#include <string>
#include <utility>
#include <vector>

namespace bcm::cli {

/// Output files staged in memory and published together. commit() writes
/// every file to a temporary sibling first and only then renames them into
/// place, so a failed run leaves no partial CSVs behind.
class OutputBundle {
 public:
  void add(std::filesystem::path relative, std::string content) {
    files_.emplace_back(std::move(relative), std::move(content));
  }
  const std::vector<std::pair<std::filesystem::path, std::string>>& files() const { return files_; }

  /// Returns the written paths.
  std::vector<std::filesystem::path> commit(const std::filesystem::path& out_dir) const;

 private:
  std::vector<std::pair<std::filesystem::path, std::string>> files_;
};

}  // namespace bcm::cli

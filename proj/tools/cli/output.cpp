#include "cli/output.hpp"

#include <fstream>
#include <stdexcept>

namespace bcm::cli {

std::vector<std::filesystem::path> OutputBundle::commit(const std::filesystem::path& out_dir) const {
  namespace fs = std::filesystem;
  std::vector<std::pair<fs::path, fs::path>> staged;
  try {
    for (const auto& [relative, content] : files_) {
      const fs::path target = out_dir / relative;
      fs::create_directories(target.parent_path());
      fs::path tmp = target;
      tmp += ".tmp";
      std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
      if (!out) throw std::runtime_error("cannot write " + tmp.string());
      out << content;
      out.close();
      if (!out) throw std::runtime_error("write failed for " + tmp.string());
      staged.emplace_back(tmp, target);
    }
  } catch (...) {
    std::error_code ignored;
    for (const auto& [tmp, target] : staged) fs::remove(tmp, ignored);
    throw;
  }
  std::vector<fs::path> written;
  for (const auto& [tmp, target] : staged) {
    fs::rename(tmp, target);
    written.push_back(target);
  }
  return written;
}

}  // namespace bcm::cli

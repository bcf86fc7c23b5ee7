#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

namespace bcm {

/// Random partition of row indices into k folds whose sizes differ by at most one.
struct FoldAssignment {
  std::size_t k = 0;
  std::uint64_t seed = 0;
  std::vector<std::size_t> fold_of_row;

  std::size_t rows() const { return fold_of_row.size(); }
  std::vector<std::size_t> rows_in(std::size_t fold) const;
  std::vector<std::size_t> rows_not_in(std::size_t fold) const;
  std::vector<std::size_t> fold_sizes() const;
};

/// Pure function of (n_rows, k, seed). Requires 2 <= k <= n_rows.
FoldAssignment kfold(std::size_t n_rows, std::size_t k, std::uint64_t seed);

}  // namespace bcm

#include "bcm/folds.hpp"

#include <numeric>
#include <stdexcept>
#include <string>

#include "bcm/random.hpp"

namespace bcm {

std::vector<std::size_t> FoldAssignment::rows_in(std::size_t fold) const {
  std::vector<std::size_t> out;
  for (std::size_t r = 0; r < fold_of_row.size(); ++r)
    if (fold_of_row[r] == fold) out.push_back(r);
  return out;
}

std::vector<std::size_t> FoldAssignment::rows_not_in(std::size_t fold) const {
  std::vector<std::size_t> out;
  for (std::size_t r = 0; r < fold_of_row.size(); ++r)
    if (fold_of_row[r] != fold) out.push_back(r);
  return out;
}

std::vector<std::size_t> FoldAssignment::fold_sizes() const {
  std::vector<std::size_t> sizes(k, 0);
  for (auto f : fold_of_row) ++sizes.at(f);
  return sizes;
}

FoldAssignment kfold(std::size_t n_rows, std::size_t k, std::uint64_t seed) {
  if (k < 2) throw std::invalid_argument("kfold: k must be at least 2");
  if (k > n_rows)
    throw std::invalid_argument("kfold: k=" + std::to_string(k) + " exceeds row count " +
                                std::to_string(n_rows));
  std::vector<std::size_t> order(n_rows);
  std::iota(order.begin(), order.end(), std::size_t{0});
  Rng rng(derive_seed(seed, 0x666F6C64));  // "fold"
  rng.shuffle(order.begin(), order.end());

  FoldAssignment folds{k, seed, std::vector<std::size_t>(n_rows)};
  for (std::size_t i = 0; i < n_rows; ++i) folds.fold_of_row[order[i]] = i % k;
  return folds;
}

}  // namespace bcm

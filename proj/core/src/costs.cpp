#include "bcm/costs.hpp"

#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <string>

#include "bcm/dataset.hpp"
#include "bcm/random.hpp"

namespace bcm {

Cost CostProfile::cost(FeatureId id) const {
  auto it = costs.find(id);
  if (it == costs.end()) throw DataError("no cost for feature id " + std::to_string(id));
  return it->second;
}

Cost CostProfile::total() const {
  Cost sum = 0;
  for (const auto& [id, c] : costs) sum += c;
  return sum;
}

CostProfile sample_costs(const FeatureSchema& schema, Cost lo, Cost hi, const FeatureSet& zero_cost_ids,
                         std::uint64_t seed) {
  if (lo < 0 || lo > hi) throw std::invalid_argument("sample_costs: need 0 <= lo <= hi");
  for (auto id : zero_cost_ids) schema.feature(id);

  CostProfile profile;
  profile.seed = seed;
  profile.range_lo = lo;
  profile.range_hi = hi;
  profile.zero_cost_ids = zero_cost_ids;
  for (const auto& f : schema.features) {
    if (zero_cost_ids.count(f.id)) {
      profile.costs[f.id] = 0;
      continue;
    }
    Rng rng(derive_seed(seed, static_cast<std::uint64_t>(f.id)));
    profile.costs[f.id] = rng.uniform_int(lo, hi);
  }
  return profile;
}

Cost model_cost(const FeatureSet& features, const CostProfile& profile) {
  Cost sum = 0;
  for (auto id : features) sum += profile.cost(id);
  return sum;
}

void write_cost_csv(std::ostream& out, const FeatureSchema& schema, const CostProfile& profile) {
  out << "feature_name,cost\n";
  for (const auto& f : schema.features) out << f.name << ',' << profile.cost(f.id) << '\n';
}

CostProfile read_cost_csv(std::istream& in, const FeatureSchema& schema) {
  std::string line;
  if (!std::getline(in, line)) throw DataError("cost table is empty");
  const auto header = split_csv_line(line);
  if (header.size() != 2 || header[0] != "feature_name" || header[1] != "cost")
    throw DataError("cost table header must be 'feature_name,cost'");

  CostProfile profile;
  while (std::getline(in, line)) {
    if (line.find_first_not_of(" \t\r\n") == std::string::npos) continue;
    const auto cells = split_csv_line(line);
    if (cells.size() != 2) throw DataError("cost table row needs 2 cells: " + line);
    const FeatureId id = schema.id_of(cells[0]);
    Cost value = 0;
    auto [ptr, ec] = std::from_chars(cells[1].data(), cells[1].data() + cells[1].size(), value);
    if (ec != std::errc() || ptr != cells[1].data() + cells[1].size() || value < 0)
      throw DataError("cost for '" + cells[0] + "' must be a nonnegative integer");
    if (!profile.costs.emplace(id, value).second)
      throw DataError("cost table lists '" + cells[0] + "' twice");
    if (value == 0) profile.zero_cost_ids.insert(id);
  }
  for (const auto& f : schema.features)
    if (!profile.costs.count(f.id)) throw DataError("cost table has no entry for '" + f.name + "'");
  Cost lo = -1;
  Cost hi = 0;
  for (const auto& [id, c] : profile.costs) {
    if (profile.zero_cost_ids.count(id)) continue;
    lo = lo < 0 ? c : std::min(lo, c);
    hi = std::max(hi, c);
  }
  profile.range_lo = std::max<Cost>(lo, 0);
  profile.range_hi = hi;
  return profile;
}

CostProfile load_cost_csv(const std::filesystem::path& path, const FeatureSchema& schema) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open cost table " + path.string());
  return read_cost_csv(in, schema);
}

}  // namespace bcm

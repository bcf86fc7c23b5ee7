#include <benchmark/benchmark.h>

#include "bcm/encoding.hpp"
#include "bcm/prune.hpp"
#include "bcm/synthetic.hpp"
#include "bcm/train.hpp"

namespace {

struct Workload {
  bcm::PlantedDataset planted;
  bcm::EncodedDataset data;
  bcm::CostProfile profile;
};

const Workload& workload() {
  static const Workload w = [] {
    bcm::PlantedSpec spec;
    spec.rows = 520;
    spec.informative = 12;
    spec.noise = 4;
    spec.categorical = 4;
    Workload w{bcm::make_planted_dataset(spec), {}, {}};
    w.data = bcm::encode(w.planted.raw, w.planted.schema, w.planted.schema.all_ids());
    w.profile = bcm::sample_costs(w.planted.schema, 100, 300, {}, 1);
    return w;
  }();
  return w;
}

bcm::Network net_of(std::size_t width, std::size_t depth) {
  std::vector<std::size_t> hidden(depth, width);
  return bcm::init_network(bcm::NetworkStructure::with_hidden(workload().data.columns(), hidden), 1);
}

// One epoch over 520 rows, the size of the diabetes table.
void BM_TrainEpoch(benchmark::State& state) {
  const auto net = net_of(static_cast<std::size_t>(state.range(0)), static_cast<std::size_t>(state.range(1)));
  bcm::TrainConfig cfg;
  cfg.epochs = 1;
  for (auto _ : state) benchmark::DoNotOptimize(bcm::train(net, workload().data, cfg));
  state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(workload().data.rows()));
}
BENCHMARK(BM_TrainEpoch)->Args({120, 5})->Args({200, 3})->Unit(benchmark::kMillisecond);

void BM_MarkWeak(benchmark::State& state) {
  const auto net = net_of(static_cast<std::size_t>(state.range(0)), 5);
  const auto thresholds = bcm::init_thresholds(net, 0.05).escalated(3);
  for (auto _ : state) benchmark::DoNotOptimize(bcm::mark_weak(net, thresholds));
}
BENCHMARK(BM_MarkWeak)->Arg(30)->Arg(120)->Unit(benchmark::kMicrosecond);

void BM_LeastImportantFeature(benchmark::State& state) {
  const auto net = net_of(static_cast<std::size_t>(state.range(0)), 5);
  for (auto _ : state)
    benchmark::DoNotOptimize(bcm::find_least_important_feature(net, workload().data, workload().profile));
}
BENCHMARK(BM_LeastImportantFeature)->Arg(30)->Arg(120)->Unit(benchmark::kMicrosecond);

}  // namespace

BENCHMARK_MAIN();

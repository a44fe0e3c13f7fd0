// SPDX-License-Identifier: Apache-2.0
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Serial reference vs OpenMP kernels.
//   ./bench_kernels --benchmark_filter=Grid

#include <benchmark/benchmark.h>
#include <omp.h>

#include "marelay/experiments.hpp"
#include "marelay/grid_kernels.hpp"

using namespace marelay;

namespace {

GridSpec bench_grid(benchmark::State &state) {
    Region region;
    region.side_length = static_cast<double>(state.range(0));
    return grid_over_region(region, 0.01);
}

void BM_GridSerial(benchmark::State &state) {
    const PathSet paths = sample_paths(5, 1.0, std::uint64_t{7});
    const GridSpec grid = bench_grid(state);
    for (auto _ : state)
        benchmark::DoNotOptimize(grid_gains_serial(paths, grid));
    state.SetItemsProcessed(state.iterations() * static_cast<long long>(grid.rows * grid.cols));
}

void BM_GridParallel(benchmark::State &state) {
    const PathSet paths = sample_paths(5, 1.0, std::uint64_t{7});
    const GridSpec grid = bench_grid(state);
    omp_set_num_threads(static_cast<int>(state.range(1)));
    for (auto _ : state)
        benchmark::DoNotOptimize(grid_gains_parallel(paths, grid));
    state.SetItemsProcessed(state.iterations() * static_cast<long long>(grid.rows * grid.cols));
}

void BM_Campaign(benchmark::State &state) {
    CampaignConfig c;
    c.axis = SweepAxis::SnrDb;
    c.sweep_values = {0.0, 10.0};
    c.system.num_antennas = 4;
    c.trials = 8;
    c.schemes = {Scheme::Proposed, Scheme::Fpa, Scheme::As, Scheme::Otpa};
    c.check_invariants = false;
    for (auto _ : state)
        benchmark::DoNotOptimize(run_campaign(c, static_cast<int>(state.range(0))));
}

} // namespace

BENCHMARK(BM_GridSerial)->Arg(2)->Arg(10)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_GridParallel)->ArgsProduct({{2, 10}, {1, 2, 4}})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Campaign)->Arg(1)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();

// Microbenchmarks for the manipulation solvers on fixed synthetic elections.

#include <benchmark/benchmark.h>

#include <numeric>
#include <random>
#include <vector>

#include "borda/election.hpp"
#include "borda/fmm.hpp"
#include "borda/single_peaked.hpp"
#include "borda/ubm.hpp"
#include "borda/wbm.hpp"

namespace {

using namespace borda;

// A reproducible election: `voters` random ballots over `k` candidates with
// the given manipulator weights.
ManipulationInstance random_instance(int k, int voters,
                                     std::vector<Score> weights,
                                     unsigned seed) {
  std::mt19937 rng(seed);
  std::vector<WeightedVote> base;
  std::vector<int> positions(k);
  std::iota(positions.begin(), positions.end(), 1);
  for (int v = 0; v < voters; ++v) {
    std::shuffle(positions.begin(), positions.end(), rng);
    base.push_back(WeightedVote{Vote::from_positions(positions), 1});
  }
  return ManipulationInstance::make(k, CandidateId{0}, std::move(base),
                                    std::move(weights));
}

void BM_WbmSolve(benchmark::State& state) {
  const int rivals = static_cast<int>(state.range(0));
  const ManipulationInstance inst =
      random_instance(rivals + 1, 6, {1, 2}, 20240601);
  for (auto _ : state) {
    benchmark::DoNotOptimize(solve_wbm(inst));
  }
}
BENCHMARK(BM_WbmSolve)->Arg(4)->Arg(5)->Arg(6);

void BM_FmmSolve(benchmark::State& state) {
  const int m = static_cast<int>(state.range(0));
  const Score t = 3;
  const FmmInstance inst =
      make_fmm_instance(std::vector<Score>(m, t * (m - 1) / 2 + 2), t);
  for (auto _ : state) {
    benchmark::DoNotOptimize(solve_fmm(inst));
  }
}
BENCHMARK(BM_FmmSolve)->Arg(4)->Arg(5)->Arg(6);

void BM_UbmEndToEnd(benchmark::State& state) {
  // Empty profile: every placement stays feasible, so the matrix stage walks
  // its full state space instead of short-circuiting on a hopeless rival.
  const int k = static_cast<int>(state.range(0));
  const ManipulationInstance inst =
      random_instance(k, 0, std::vector<Score>(2, 1), 20240602);
  for (auto _ : state) {
    benchmark::DoNotOptimize(solve_ubm(inst));
  }
}
BENCHMARK(BM_UbmEndToEnd)->Arg(6)->Arg(8)->Arg(9);

void BM_MatrixToVotes(benchmark::State& state) {
  const int m = static_cast<int>(state.range(0));
  const Score t = 4;
  const FmmInstance inst =
      make_fmm_instance(std::vector<Score>(m, t * (m - 1) / 2 + 2), t);
  const auto matrix = solve_fmm(inst);
  for (auto _ : state) {
    benchmark::DoNotOptimize(matrix_to_votes(*matrix, static_cast<int>(t)));
  }
}
BENCHMARK(BM_MatrixToVotes)->Arg(6)->Arg(8);

// Coincident elections for the polynomial greedy solver: a mid-axis
// distinguished candidate over an empty profile, so both ballots are built
// through the full 2(k-1) extension walk.
void BM_Ubm2Sp(benchmark::State& state) {
  const int k = static_cast<int>(state.range(0));
  std::vector<CandidateId> order;
  for (int c = 0; c < k; ++c) order.push_back(CandidateId{c});
  const HarmoniousOrder axis = HarmoniousOrder::from_axis(order);
  const ManipulationInstance inst = ManipulationInstance::make(
      k, CandidateId{k / 2}, {}, std::vector<Score>(2, 1));
  for (auto _ : state) {
    benchmark::DoNotOptimize(solve_ubm2sp(inst, axis));
  }
}
BENCHMARK(BM_Ubm2Sp)->Arg(10)->Arg(16)->Arg(24);

}  // namespace

BENCHMARK_MAIN();

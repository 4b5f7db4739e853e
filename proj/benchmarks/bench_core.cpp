#include <benchmark/benchmark.h>

#include "charzero/dirichlet.hpp"
#include "charzero/lfunction.hpp"
#include "charzero/multfn.hpp"
#include "charzero/plancherel.hpp"
#include "charzero/primes.hpp"
#include "charzero/spectral.hpp"
#include "charzero/zeros.hpp"

namespace {

using namespace charzero;

void BM_SegmentedSieve(benchmark::State& state) {
  const auto limit = static_cast<std::uint64_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(primes::segmented_sieve(limit));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_SegmentedSieve)->Arg(1'000'000)->Arg(10'000'000);

void BM_PartialSum(benchmark::State& state) {
  const auto chi = dirichlet::character(static_cast<std::uint64_t>(state.range(0)), 2);
  for (auto _ : state) benchmark::DoNotOptimize(dirichlet::partial_sum(chi, 1e9));
}
BENCHMARK(BM_PartialSum)->Arg(101)->Arg(10007);

void BM_TwistedPartialSum(benchmark::State& state) {
  const auto chi = dirichlet::character(101, 2);
  for (auto _ : state) benchmark::DoNotOptimize(dirichlet::twisted_partial_sum(chi, 0.3, 1e5));
}
BENCHMARK(BM_TwistedPartialSum);

void BM_LValue(benchmark::State& state) {
  const auto chi = dirichlet::character(static_cast<std::uint64_t>(state.range(0)), 2);
  const lfunction::LEvaluator L(chi);
  for (auto _ : state) benchmark::DoNotOptimize(L({0.5, 14.1}));
}
BENCHMARK(BM_LValue)->Arg(5)->Arg(97);

void BM_LVerticalLine(benchmark::State& state) {
  const lfunction::LEvaluator L(dirichlet::character(97, 5));
  for (auto _ : state) benchmark::DoNotOptimize(L.vertical_line(0.5, 0.0, 0.05, 400));
  state.SetItemsProcessed(state.iterations() * 400);
}
BENCHMARK(BM_LVerticalLine);

void BM_LocateZeros(benchmark::State& state) {
  const auto chi = dirichlet::character(static_cast<std::uint64_t>(state.range(0)), 2);
  for (auto _ : state) {
    benchmark::DoNotOptimize(zeros::locate_zeros(chi, zeros::Region::rectangle(0.0, 1.0, 0.0, 20.0)));
  }
}
BENCHMARK(BM_LocateZeros)->Arg(5)->Arg(47)->Unit(benchmark::kMillisecond);

void BM_HZeros(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(spectral::find_H_zeros(static_cast<int>(state.range(0))));
}
BENCHMARK(BM_HZeros)->Arg(20)->Arg(50)->Unit(benchmark::kMillisecond);

void BM_FindPhi(benchmark::State& state) {
  const auto f = multfn::from_character(5, 2, 1'000'000);
  for (auto _ : state) benchmark::DoNotOptimize(multfn::find_phi_and_M(f, 1e6));
}
BENCHMARK(BM_FindPhi)->Unit(benchmark::kMillisecond);

void BM_Plancherel(benchmark::State& state) {
  const plancherel::PlancherelCase c{dirichlet::character(11, 2), 0.3, 0.1, 1.0};
  for (auto _ : state) benchmark::DoNotOptimize(plancherel::plancherel_identity(c));
}
BENCHMARK(BM_Plancherel)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();

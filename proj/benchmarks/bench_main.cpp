#include <benchmark/benchmark.h>

#include <random>

#include "cylinder/cocycle.hpp"
#include "cylinder/continued_fraction.hpp"
#include "cylinder/divisibility.hpp"
#include "cylinder/residue_counting.hpp"
#include "cylinder/roof.hpp"
#include "cylinder/selector.hpp"
#include "cylinder/walk.hpp"

using namespace cylinder;

namespace {

SubsequenceCertificate unit_chain(std::size_t targets) {
  const auto d = build_divisible_alpha(std::vector<Integer>(targets, Integer(1)), std::vector<Integer>{Integer(1)});
  return relabel(d.alpha, d.marked);
}

void BM_Convergents(benchmark::State& state) {
  const auto pq = PartialQuotients::preset("golden");
  for (auto _ : state) benchmark::DoNotOptimize(convergents(pq, static_cast<std::size_t>(state.range(0))));
}
BENCHMARK(BM_Convergents)->Arg(64)->Arg(512);

void BM_NormEnclosure(benchmark::State& state) {
  const auto pq = PartialQuotients::preset("schmidt");
  for (auto _ : state) benchmark::DoNotOptimize(norm_enclosure(pq, static_cast<std::size_t>(state.range(0)), 8));
}
BENCHMARK(BM_NormEnclosure)->Arg(20)->Arg(200);

void BM_ExtendForDivisibility(benchmark::State& state) {
  const std::vector<Integer> prefix{Integer(1), Integer(2), Integer(3), Integer(4)};
  const Integer q(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(extend_for_divisibility(prefix, q));
}
BENCHMARK(BM_ExtendForDivisibility)->Arg(97)->Arg(9973);

void BM_HaarDilated(benchmark::State& state) {
  const Integer q("5380572674884312171728");
  std::mt19937_64 rng(1);
  const CirclePoint x(Rational(Integer(static_cast<long>(rng() >> 1)), pow2(63)));
  for (auto _ : state) benchmark::DoNotOptimize(haar_dilated(q, x));
}
BENCHMARK(BM_HaarDilated);

void BM_ReturnCountBruteForce(benchmark::State& state) {
  const auto cert = unit_chain(4);
  const auto n = static_cast<std::size_t>(state.range(0));
  const CirclePoint x(Rational(1, 7));
  for (auto _ : state) benchmark::DoNotOptimize(return_count_bruteforce(cert, RoofVariant::Rational, n, x));
}
BENCHMARK(BM_ReturnCountBruteForce)->Arg(1)->Arg(2)->Arg(3)->Unit(benchmark::kMillisecond);

void BM_ReturnDistribution(benchmark::State& state) {
  std::vector<Integer> q;
  for (int j = 1; j <= 61; ++j) q.push_back(pow2(static_cast<unsigned long>(j)));
  for (auto _ : state) benchmark::DoNotOptimize(return_distribution_exact(q, static_cast<std::size_t>(state.range(0))));
}
BENCHMARK(BM_ReturnDistribution)->Arg(12)->Arg(60);

void BM_RenyiStatistics(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(renyi_statistics(static_cast<unsigned>(state.range(0)), Integer(1)));
}
BENCHMARK(BM_RenyiStatistics)->Arg(20)->Arg(60);

void BM_CountPattern(benchmark::State& state) {
  const std::vector<PeriodicStep> psis{{4096, Rational(1, 3)}, {1024, Rational(2, 7)}, {256, Rational(3, 11)},
                                       {64, Rational(1, 5)}, {16, Rational(1, 9)}, {4, Rational(1, 13)}};
  std::vector<std::int64_t> R;
  for (std::int64_t i = 0; i < 4096; ++i) R.push_back(i);
  const SignPattern s{1, -1, 1, -1, 1, -1};
  for (auto _ : state) benchmark::DoNotOptimize(count_pattern(psis, R, s));
}
BENCHMARK(BM_CountPattern)->Unit(benchmark::kMillisecond);

void BM_PiecewiseRoof(benchmark::State& state) {
  const auto cert = unit_chain(4);
  for (auto _ : state) {
    benchmark::DoNotOptimize(TruncatedRoof(cert, static_cast<std::size_t>(state.range(0)), RoofVariant::Rational)
                                 .piecewise()
                                 .integral());
  }
}
BENCHMARK(BM_PiecewiseRoof)->Arg(1)->Arg(2)->Unit(benchmark::kMillisecond);

void BM_PrunedChain(benchmark::State& state) {
  const std::vector<std::int64_t> q{3, 10, 31, 97, 301, 911, 2741, 8233};
  for (auto _ : state) benchmark::DoNotOptimize(build_pruned_chain(q, q.size()));
}
BENCHMARK(BM_PrunedChain)->Unit(benchmark::kMillisecond);

void BM_LevelCrossing(benchmark::State& state) {
  CrossingOptions o;
  o.pairs = 20;
  o.horizon = static_cast<std::size_t>(state.range(0));
  const auto q = dyadic_chain(o.horizon);
  for (auto _ : state) benchmark::DoNotOptimize(level_crossing_mc(q, o));
}
BENCHMARK(BM_LevelCrossing)->Arg(1000)->Arg(10000)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();

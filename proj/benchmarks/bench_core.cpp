#include <benchmark/benchmark.h>

#include <random>

#include "grid2x/grid_algebra.hpp"
#include "grid2x/lattice.hpp"

namespace {

using namespace grid2x;

void BM_GroupTableMul(benchmark::State& state) {
  const GroupTable& gt = GroupTable::get(3);
  std::mt19937_64 rng(1);
  std::vector<int> ids(1024);
  for (int& id : ids)
    id = static_cast<int>(rng() % gt.n);
  size_t i = 0;
  for (auto _ : state) {
    int a = ids[i % ids.size()];
    int b = ids[(i + 1) % ids.size()];
    benchmark::DoNotOptimize(gt.mul(a, b));
    ++i;
  }
}
BENCHMARK(BM_GroupTableMul);

void BM_AutoCompose(benchmark::State& state) {
  std::mt19937_64 rng(2);
  auto elems = hyperoctahedral(3);
  GridAuto a = {elems[rng() % elems.size()], {1, -2, 3}};
  GridAuto b = {elems[rng() % elems.size()], {0, 4, -1}};
  for (auto _ : state) {
    benchmark::DoNotOptimize(auto_compose(a, b));
    std::swap(a, b);
  }
}
BENCHMARK(BM_AutoCompose);

void BM_LatticeReduce(benchmark::State& state) {
  Lattice lat(3);
  lat.add({2, 1, 0});
  lat.add({0, 3, 1});
  lat.add({0, 0, 4});
  Vec v = {17, -23, 9};
  for (auto _ : state) {
    benchmark::DoNotOptimize(lat.reduce(v));
    v[0] ^= 1;
  }
}
BENCHMARK(BM_LatticeReduce);

void BM_PointClosure(benchmark::State& state) {
  const GroupTable& gt = GroupTable::get(3);
  PointMask gens = (PointMask(1) << 5) | (PointMask(1) << 17);
  for (auto _ : state)
    benchmark::DoNotOptimize(point_closure(gt, gens));
}
BENCHMARK(BM_PointClosure);

}  // namespace

BENCHMARK_MAIN();

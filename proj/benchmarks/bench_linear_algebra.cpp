// Copyright 2026 The gamma-persist authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <benchmark/benchmark.h>

#include <random>

#include "gp/matrix.hpp"

namespace {

template <class K>
gp::Matrix<K> random_matrix(std::mt19937_64& rng, std::size_t n) {
  gp::Matrix<K> m(n, n);
  std::uniform_int_distribution<int> entry(-3, 3);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m(i, j) = K(entry(rng));
  return m;
}

void BM_RankF2(benchmark::State& state) {
  std::mt19937_64 rng(1);
  auto m = random_matrix<gp::F2>(rng, state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(gp::rank(m));
}
BENCHMARK(BM_RankF2)->Arg(16)->Arg(64)->Arg(128);

void BM_RankRat(benchmark::State& state) {
  std::mt19937_64 rng(1);
  auto m = random_matrix<gp::Rat>(rng, state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(gp::rank(m));
}
BENCHMARK(BM_RankRat)->Arg(8)->Arg(16)->Arg(32);

}  // namespace

BENCHMARK_MAIN();

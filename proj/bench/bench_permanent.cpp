/* Copyright 2026 The char3lab Authors.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

// Serial Ryser against the OpenMP Ryser and the injection oracle.

#include <benchmark/benchmark.h>

#include <random>

#include "char3/linalg.hpp"

using namespace char3;

namespace {

FqMatrix random_matrix(size_t n) {
  const Field* f = &make_field(4);
  std::mt19937_64 rng(n);
  std::uniform_int_distribution<uint32_t> pick(0, f->order() - 1);
  FqMatrix m(f, n, n);
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) m(i, j) = f->from_index(pick(rng));
  return m;
}

void BM_RyserSerial(benchmark::State& state) {
  const FqMatrix m = random_matrix(static_cast<size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(permanent_ryser_serial(m));
  state.SetComplexityN(state.range(0));
}

void BM_RyserParallel(benchmark::State& state) {
  const FqMatrix m = random_matrix(static_cast<size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(permanent_ryser(m));
  state.SetComplexityN(state.range(0));
}

void BM_Naive(benchmark::State& state) {
  const FqMatrix m = random_matrix(static_cast<size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(permanent_naive(m));
}

}  // namespace

BENCHMARK(BM_RyserSerial)->DenseRange(4, 16, 4);
BENCHMARK(BM_RyserParallel)->DenseRange(4, 16, 4);
BENCHMARK(BM_Naive)->DenseRange(4, 8, 2);

BENCHMARK_MAIN();

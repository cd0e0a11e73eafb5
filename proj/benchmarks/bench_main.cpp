// Copyright 2026 The lstmforge Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <benchmark/benchmark.h>

#include "lstmforge/accel.hpp"
#include "lstmforge/activation.hpp"
#include "lstmforge/demo.hpp"
#include "lstmforge/dse.hpp"
#include "lstmforge/network.hpp"
#include "lstmforge/quantized.hpp"

namespace {

using namespace lstmforge;

void BM_ForwardReference(benchmark::State& state) {
  NetworkSpec net = make_demo_network(42);
  auto features = windowed_features(make_demo_signal(state.range(0)), net.input_window);
  for (auto _ : state) {
    auto out = forward(net, features);
    benchmark::DoNotOptimize(out);
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_ForwardReference)->Arg(100)->Arg(1000);

void BM_ForwardFixed(benchmark::State& state) {
  NetworkSpec net = make_demo_network(42);
  auto features = windowed_features(make_demo_signal(1000), net.input_window);
  FixedFormat fmt{static_cast<int>(state.range(0)), static_cast<int>(state.range(0)) / 2};
  QuantizedNetwork q = quantize_network(net, fmt, fmt);
  for (auto _ : state) {
    auto out = forward_fixed(q, features);
    benchmark::DoNotOptimize(out);
  }
  state.SetItemsProcessed(state.iterations() * 1000);
}
BENCHMARK(BM_ForwardFixed)->Arg(32)->Arg(16)->Arg(8);

void BM_ForwardFixedLut(benchmark::State& state) {
  NetworkSpec net = make_demo_network(42);
  auto features = windowed_features(make_demo_signal(1000), net.input_window);
  QuantizedNetwork q = quantize_network(net, {16, 8}, {16, 8});
  ActivationSettings lut;
  lut.mode = ActivationMode::lut;
  for (auto _ : state) {
    auto out = forward_fixed(q, features, lut);
    benchmark::DoNotOptimize(out);
  }
  state.SetItemsProcessed(state.iterations() * 1000);
}
BENCHMARK(BM_ForwardFixedLut);

void BM_QuantizeNetwork(benchmark::State& state) {
  NetworkSpec net = make_demo_network(42);
  for (auto _ : state) {
    auto q = quantize_network(net, {16, 8}, {16, 8});
    benchmark::DoNotOptimize(q);
  }
}
BENCHMARK(BM_QuantizeNetwork);

void BM_SimulateNetwork(benchmark::State& state) {
  NetworkSpec net = make_demo_network(42);
  AccelConfig cfg;
  cfg.style = DesignStyle::unit_parallel;
  cfg.unit_parallelism = 15;
  cfg.clock_mhz = 250.0;
  cfg.platform = builtin_platform("u55c");
  for (auto _ : state) {
    SimReport r = simulate_network(net, cfg);
    benchmark::DoNotOptimize(r);
  }
}
BENCHMARK(BM_SimulateNetwork);

void BM_EvalLut(benchmark::State& state) {
  FixedFormat fmt{16, 8};
  LutTable table = build_lut(LutKind::log_sigmoid, -1.0, 1.0, 0.1, fmt);
  FixedValue x = quantize(0.37, fmt);
  for (auto _ : state) {
    FixedValue y = eval_lut(table, x);
    benchmark::DoNotOptimize(y);
  }
}
BENCHMARK(BM_EvalLut);

void BM_Sweep(benchmark::State& state) {
  NetworkSpec net = make_demo_network(42);
  auto signal = make_demo_signal(200);
  SweepGrid grid;
  grid.platforms = {builtin_platform("u55c")};
  grid.styles = {DesignStyle::unit_parallel};
  grid.precisions = {{"fp32", {32, 16}, {32, 16}},
                     {"fp16", {16, 8}, {16, 8}},
                     {"fp8", {8, 4}, {8, 4}}};
  grid.unit_parallelism = {1, 2, 15};
  grid.clock_mhz = 250.0;
  for (auto _ : state) {
    auto rows = run_sweep(net, &signal, grid, static_cast<unsigned>(state.range(0)));
    benchmark::DoNotOptimize(rows);
  }
}
BENCHMARK(BM_Sweep)->Arg(1)->Arg(4);

}  // namespace

int main(int argc, char** argv) {
  benchmark::Initialize(&argc, argv);
  if (benchmark::ReportUnrecognizedArguments(argc, argv)) return 1;
  benchmark::RunSpecifiedBenchmarks();
  benchmark::Shutdown();
  return 0;
}

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
//
// End-to-end acceptance checks. Each check prints one PASS/FAIL line; the
// process exits nonzero if any fail. Expected values come from the oracles
// in test_oracles.hpp or from measured design points, never from the code
// under test.

#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <random>
#include <string>
#include <vector>

#include "lstmforge/accel.hpp"
#include "lstmforge/activation.hpp"
#include "lstmforge/demo.hpp"
#include "lstmforge/dse.hpp"
#include "lstmforge/fixedpoint.hpp"
#include "lstmforge/io.hpp"
#include "lstmforge/network.hpp"
#include "lstmforge/quantized.hpp"
#include "test_oracles.hpp"

#ifndef LSTMFORGE_DATA_DIR
#define LSTMFORGE_DATA_DIR "data"
#endif

namespace {

int g_failures = 0;

void criterion(const std::string& name, bool pass, const std::string& detail) {
  std::printf("[%s] %s: %s\n", pass ? "PASS" : "FAIL", name.c_str(), detail.c_str());
  if (!pass) ++g_failures;
}

std::string fmt(const char* format, ...) {
  char buf[512];
  va_list args;
  va_start(args, format);
  std::vsnprintf(buf, sizeof buf, format, args);
  va_end(args);
  return buf;
}

using namespace lstmforge;

// Op count equals the loop-enumeration oracle and is consistent with four
// independently measured GOPS x latency products within 3%.
void check_op_count() {
  NetworkSpec net = make_demo_network(42);
  std::int64_t ops = op_count(net);
  std::int64_t want = oracle::op_count_by_enumeration(net);
  bool pass = ops == 11280 && ops == want;

  const double measured[][2] = {{7.87, 1.42}, {5.37, 2.06}, {4.56, 2.46}, {3.83, 2.92}};
  double worst = 0.0;
  for (const auto& p : measured) {
    double implied = p[0] * p[1] * 1000.0;
    worst = std::max(worst, std::abs(implied - 11280.0) / 11280.0);
  }
  pass = pass && worst <= 0.03;
  criterion("op-count/gops-consistency", pass,
            fmt("op_count=%lld (oracle %lld), worst measured-point deviation %.2f%%",
                static_cast<long long>(ops), static_cast<long long>(want), worst * 100.0));
}

// Default overheads land in the measured-latency band; the shipped tuned
// calibration file lands within 10% of 1.42 us at 250 MHz.
void check_latency_band() {
  NetworkSpec net = make_demo_network(42);
  AccelConfig cfg;
  cfg.style = DesignStyle::unit_parallel;
  cfg.unit_parallelism = 15;
  cfg.clock_mhz = 250.0;
  cfg.platform = builtin_platform("u55c");

  SimReport with_defaults = simulate_network(net, cfg);
  bool band = with_defaults.cycles >= 178 && with_defaults.cycles <= 710;

  CalibrationFile cal =
      load_calibration_json(std::string(LSTMFORGE_DATA_DIR) + "/calibration_u55c_hdl_fp16.json");
  if (cal.overheads) cfg.overheads = *cal.overheads;
  cfg.calibration = cal.table;
  SimReport tuned = simulate_network(net, cfg);
  bool close = std::abs(tuned.latency_us - 1.42) <= 0.142;

  criterion("latency-band", band && close,
            fmt("defaults: %lld cycles in [178,710]=%s; tuned: %.4f us vs 1.42 us",
                static_cast<long long>(with_defaults.cycles), band ? "yes" : "no",
                tuned.latency_us));
}

void check_normalized_throughput() {
  NormalizedThroughput n = normalized_throughput(3.83, 36458, 224);
  double lut_dev = std::abs(n.per_mega_lut - 105.05) / 105.05;
  double dsp_dev = n.per_kilo_dsp ? std::abs(*n.per_kilo_dsp - 17.10) / 17.10 : 1.0;
  bool pass = lut_dev <= 0.01 && dsp_dev <= 0.01;
  criterion("normalized-throughput", pass,
            fmt("(%.2f, %.2f) vs (105.05, 17.10), deviations %.3f%% / %.3f%%",
                n.per_mega_lut, n.per_kilo_dsp.value_or(0.0), lut_dev * 100.0,
                dsp_dev * 100.0));
}

// Cycles are non-increasing in U, saturate at full parallelism, and the
// serial/full ratio stays in (1, 15]; checked on the default net and on 100
// random shapes.
void check_parallelism_monotonicity() {
  bool pass = true;
  std::string why = "ok";

  NetworkSpec net = make_demo_network(42);
  AccelConfig cfg;
  cfg.style = DesignStyle::unit_parallel;
  cfg.clock_mhz = 250.0;
  cfg.platform = builtin_platform("u55c");
  std::vector<std::int64_t> cycles(16, 0);
  for (int u = 1; u <= 15; ++u) {
    cfg.unit_parallelism = u;
    cycles[u] = simulate_network(net, cfg).cycles;
    if (u > 1 && cycles[u] > cycles[u - 1]) {
      pass = false;
      why = fmt("default net: cycles increased at U=%d", u);
    }
  }
  double ratio = static_cast<double>(cycles[1]) / static_cast<double>(cycles[15]);
  if (!(ratio > 1.0 && ratio <= 15.0)) {
    pass = false;
    why = fmt("default net ratio %.3f outside (1,15]", ratio);
  }
  for (int u = 15; u <= 20; ++u) {  // schedules saturate at full parallelism
    if (schedule_mvo(31, 15, u, DesignStyle::unit_parallel) !=
            schedule_mvo(31, 15, 15, DesignStyle::unit_parallel) ||
        schedule_evo(15, u, DesignStyle::unit_parallel, 4) !=
            schedule_evo(15, 15, DesignStyle::unit_parallel, 4)) {
      pass = false;
      why = fmt("schedule not saturated at U=%d", u);
    }
  }

  std::mt19937_64 rng(1234);
  for (int trial = 0; trial < 100 && pass; ++trial) {
    int hidden = 2 + static_cast<int>(rng() % 31);   // 2..32
    int input = 1 + static_cast<int>(rng() % 32);
    int layers = 1 + static_cast<int>(rng() % 3);
    NetworkSpec shape = oracle::random_network(rng(), layers, input, hidden, 0.1);
    int u_full = std::min(15, hidden);
    std::int64_t prev = 0, first = 0, at_full = 0;
    for (int u = 1; u <= u_full; ++u) {
      cfg.unit_parallelism = u;
      std::int64_t c = simulate_network(shape, cfg).cycles;
      if (u == 1) first = c;
      if (u == u_full) at_full = c;
      if (u > 1 && c > prev) {
        pass = false;
        why = fmt("shape H=%d: cycles increased at U=%d", hidden, u);
      }
      prev = c;
    }
    double r = static_cast<double>(first) / static_cast<double>(at_full);
    if (u_full > 1 && !(r > 1.0 && r <= 15.0)) {
      pass = false;
      why = fmt("shape H=%d ratio %.3f outside (1,15]", hidden, r);
    }
    for (int u = hidden; u <= hidden + 6; u += 3) {
      if (schedule_mvo(input + hidden, hidden, u, DesignStyle::unit_parallel) !=
          schedule_mvo(input + hidden, hidden, hidden, DesignStyle::unit_parallel)) {
        pass = false;
        why = fmt("shape H=%d schedule not saturated beyond H", hidden);
      }
    }
  }
  criterion("parallelism-monotonicity", pass,
            pass ? fmt("default ratio %.3f; 100 random shapes clean", ratio) : why);
}

// On the seeded demo network and a 1000-step sine, the 16-bit path keeps
// SNR >= 40 dB and beats the 8-bit path.
void check_quantized_accuracy() {
  NetworkSpec net = make_demo_network(42);
  auto signal = make_demo_signal(1000);
  auto features = windowed_features(signal, net.input_window);
  auto ref = forward(net, features);

  auto q16 = quantize_network(net, named_format("fp16"), named_format("fp16"));
  auto q8 = quantize_network(net, named_format("fp8"), named_format("fp8"));
  double snr16 = snr_db(ref, forward_fixed(q16, features));
  double snr8 = snr_db(ref, forward_fixed(q8, features));
  bool pass = snr16 >= 40.0 && snr16 >= snr8;
  criterion("quantized-accuracy", pass,
            fmt("SNR fp16 %.2f dB (>= 40), fp8 %.2f dB", snr16, snr8));
}

// 10,000 adversarial full-scale MAC chains never saturate at the formula
// width; at one bit less, at least one does.
void check_accumulator_overflow_freedom() {
  const int fan_in = 31;
  const FixedFormat zf{16, 0};
  const FixedFormat wf{16, 0};
  const int n_s = accumulator_bits(fan_in, zf.word_length, wf.word_length);
  const FixedFormat acc_ok{n_s, 0};
  const FixedFormat acc_short{n_s - 1, 0};

  std::mt19937_64 rng(99);
  std::uint64_t events_ok = 0, events_short = 0;
  for (int chain = 0; chain < 10000; ++chain) {
    SatCounter ok, tight;
    FixedValue sum_ok{0, acc_ok};
    FixedValue sum_short{0, acc_short};
    for (int k = 0; k < fan_in; ++k) {
      // chain 0 is the all-positive extreme; chain 1 all-negative products;
      // the rest draw random extreme signs
      bool zs = chain == 0 ? true : chain == 1 ? false : (rng() & 1) != 0;
      bool ws = chain <= 1 ? true : (rng() & 1) != 0;
      FixedValue z{zs ? zf.raw_max() : -zf.raw_max(), zf};
      FixedValue w{ws ? wf.raw_max() : -wf.raw_max(), wf};
      FixedValue p = fx_mul(z, w);
      sum_ok = fx_add_sat(sum_ok, p, acc_ok, &ok);
      sum_short = fx_add_sat(sum_short, p, acc_short, &tight);
    }
    events_ok += ok.events;
    events_short += tight.events > 0 ? 1 : 0;
  }
  bool pass = events_ok == 0 && events_short >= 1;
  criterion("accumulator-overflow-freedom", pass,
            fmt("n_s=%d: 0 of 10000 chains clipped (%llu events); n_s-1: %llu chains clipped",
                n_s, static_cast<unsigned long long>(events_ok),
                static_cast<unsigned long long>(events_short)));
}

// Max LUT error over the nearest-sample coverage region [lo, hi - step/2],
// against the exact sigmoid on a 1e5-point grid; clamps exact outside.
void check_lut_activation_error() {
  const FixedFormat fmt16{16, 8};
  LutTable table = build_lut(LutKind::log_sigmoid, -1.0, 1.0, 0.1, fmt16);

  double max_err = 0.0;
  const int n = 100000;
  const double lo = -1.0, hi_covered = 1.0 - 0.1 / 2.0;
  for (int i = 0; i < n; ++i) {
    double x = lo + (hi_covered - lo) * i / (n - 1);
    double got = dequantize(eval_lut(table, quantize(x, fmt16)));
    max_err = std::max(max_err, std::abs(got - sigmoid_exact(x)));
  }
  bool clamps = dequantize(eval_lut(table, quantize(-1.5, fmt16))) == 0.0 &&
                dequantize(eval_lut(table, quantize(3.0, fmt16))) == 1.0 &&
                table.samples.size() == 20;
  bool pass = max_err <= 0.0165 && clamps;
  criterion("lut-activation-error", pass,
            fmt("max error %.5f (<= 0.0165) over 1e5 points, clamps exact: %s", max_err,
                clamps ? "yes" : "no"));
}

// forward matches the independently coded brute-force evaluator to 1e-12 on
// 200 random small networks.
void check_oracle_equivalence() {
  std::mt19937_64 seeds(2024);
  double worst = 0.0;
  for (int trial = 0; trial < 200; ++trial) {
    int layers = 1 + static_cast<int>(seeds() % 3);
    int hidden = 1 + static_cast<int>(seeds() % 4);
    int input = 1 + static_cast<int>(seeds() % 4);
    int steps = 1 + static_cast<int>(seeds() % 8);
    NetworkSpec net = oracle::random_network(seeds(), layers, input, hidden);
    auto features = oracle::random_features(seeds(), steps, input);
    auto got = forward(net, features);
    auto want = oracle::brute_force_forward(net, features);
    for (std::size_t t = 0; t < got.size(); ++t) {
      worst = std::max(worst, std::abs(got[t] - want[t]));
    }
  }
  criterion("oracle-equivalence", worst <= 1e-12,
            fmt("200 nets, worst deviation %.3g (<= 1e-12)", worst));
}

// An 8x lane increase in the pipelined style buys < 15% cycles under the
// serialized-memory model while multiplying DSP use by 8.
void check_pipeline_vs_unroll() {
  NetworkSpec net = make_demo_network(42);
  AccelConfig cfg;
  cfg.style = DesignStyle::pipelined;
  cfg.unit_parallelism = 1;
  cfg.clock_mhz = 250.0;
  cfg.platform = builtin_platform("vc707");

  SimReport pipeline = simulate_network(net, cfg);
  cfg.pipelined_lanes = 8;
  SimReport unrolled = simulate_network(net, cfg);

  double improvement = static_cast<double>(pipeline.cycles - unrolled.cycles) /
                       static_cast<double>(pipeline.cycles);
  double dsp_ratio = static_cast<double>(unrolled.resources.dsp) /
                     static_cast<double>(pipeline.resources.dsp);
  bool pass = unrolled.cycles <= pipeline.cycles && improvement < 0.15 && dsp_ratio >= 7.0;
  criterion("pipeline-vs-unroll", pass,
            fmt("cycle improvement %.1f%% (< 15%%) at %.1fx DSP", improvement * 100.0,
                dsp_ratio));
}

}  // namespace

int main() {
  check_op_count();
  check_latency_band();
  check_normalized_throughput();
  check_parallelism_monotonicity();
  check_quantized_accuracy();
  check_accumulator_overflow_freedom();
  check_lut_activation_error();
  check_oracle_equivalence();
  check_pipeline_vs_unroll();

  if (g_failures == 0) {
    std::printf("all acceptance criteria passed\n");
  } else {
    std::printf("%d acceptance criteria FAILED\n", g_failures);
  }
  return g_failures == 0 ? 0 : 1;
}

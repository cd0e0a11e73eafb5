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

#ifndef LSTMFORGE_ACCEL_HPP_
#define LSTMFORGE_ACCEL_HPP_

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "lstmforge/fixedpoint.hpp"
#include "lstmforge/network.hpp"

namespace lstmforge {

/// FPGA resource budget. Totals are derived so the known designs' absolute
/// and percentage utilization pairs agree; fmax_mhz is the clock ceiling the
/// model accepts for this part, never a prediction.
struct PlatformBudget {
  std::string name;
  std::int64_t lut = 0;
  std::int64_t ff = 0;
  double bram36k = 0.0;
  std::int64_t dsp = 0;
  double fmax_mhz = 0.0;
};

/// Built-in presets: "vc707", "zcu104", "u55c".
PlatformBudget builtin_platform(std::string_view name);
std::vector<std::string> builtin_platform_names();

/// pipelined: HLS-like, initiation-interval-1 pipelines over hidden units
/// with serialized memory reads. unit-parallel: HDL-like, U replicated
/// MAC units per gate, each walking its fan-in sequentially.
enum class DesignStyle { pipelined, unit_parallel };

std::string_view style_name(DesignStyle style);
DesignStyle parse_style(std::string_view name);

/// Fixed cycle overheads of the schedule. The model is a calibrated analytic
/// schedule, not an RTL simulation; these absorb pipeline depths the
/// schedule formulas do not cover.
struct ScheduleOverheads {
  int pipeline_fill = 40;      // one-time startup: memory/pipeline priming
  int activation_latency = 8;  // per layer, activation unit depth
  int evo_depth = 4;           // element-wise chain: two muls, one add, one tanh
  int layer_handoff = 6;       // per layer, state/weight switch-over
  int control = 12;            // start/stop handshake
};

/// Per-precision resource model. Pipelined designs carry absolute counts
/// (the MAC/activation DSP split is explicit because narrow multipliers move
/// to LUTs); unit-parallel designs scale with lane and unit counts.
struct PipelinedResources {
  double dsp_mac = 0.0;
  double dsp_act = 0.0;
  double lut = 0.0;
  double ff = 0.0;
  double bram36k = 0.0;
};

struct UnitParallelCoefficients {
  double dsp_per_mac_lane = 0.0;   // lanes = 4 gates * U units * fan-in
  double act_dsp_per_unit = 0.0;
  double evo_dsp_per_unit = 0.0;
  double lut_per_lane = 0.0;
  double ff_per_lane = 0.0;
  double bram_per_unit = 1.0;      // BRAM instances grow with unit instances
  double lut_base = 0.0;
  double ff_base = 0.0;
};

struct PrecisionCalibration {
  PipelinedResources pipelined;
  UnitParallelCoefficients unit_parallel;
};

/// Resource coefficients keyed by value word length, with defaults fitted to
/// measured 32/16/8-bit designs. Unlisted widths use the nearest entry.
struct CalibrationTable {
  std::map<int, PrecisionCalibration> by_width;

  static CalibrationTable defaults();
  [[nodiscard]] const PrecisionCalibration& lookup(int value_word_length) const;
};

struct AccelConfig {
  DesignStyle style = DesignStyle::unit_parallel;
  int unit_parallelism = 1;
  // Unroll factor for the pipelined style. Memory serialization keeps the
  // schedule unchanged; resources scale with it.
  int pipelined_lanes = 1;
  FixedFormat value_format{16, 8};
  FixedFormat weight_format{16, 8};
  double clock_mhz = 250.0;
  PlatformBudget platform = builtin_platform("u55c");
  ScheduleOverheads overheads;
  CalibrationTable calibration = CalibrationTable::defaults();

  /// Checks 1 <= U <= max hidden size, lanes >= 1, 0 < f <= platform fmax.
  void validate(const NetworkSpec& net) const;
};

struct ResourceEstimate {
  std::int64_t lut = 0;
  std::int64_t ff = 0;
  double bram36k = 0.0;
  std::int64_t dsp = 0;
  std::int64_t dsp_mac = 0;  // multiplier share of dsp; 0 when muls live in LUTs
};

struct UtilizationReport {
  bool fits = false;
  double lut_pct = 0.0;
  double ff_pct = 0.0;
  double bram_pct = 0.0;
  double dsp_pct = 0.0;
};

struct NormalizedThroughput {
  double per_mega_lut = 0.0;                 // GOPS / LUT * 1e6
  std::optional<double> per_kilo_dsp;        // GOPS / DSP * 1e3; empty when dsp == 0
};

struct SimReport {
  std::int64_t cycles = 0;
  double latency_us = 0.0;
  std::int64_t ops = 0;
  double gops = 0.0;
  NormalizedThroughput normalized;
  ResourceEstimate resources;
  UtilizationReport utilization;
  bool fits = false;
};

/// Cycles one gate's matrix-vector stage takes. Unit-parallel: each of the U
/// unit modules performs fan_in sequential MACs and the gates run in
/// parallel, so ceil(H/U) * fan_in. Pipelined: an II-1 pipeline over hidden
/// units behind serialized memory reads, fan_in + H - 1. U beyond H adds
/// nothing and is treated as full parallelism.
std::int64_t schedule_mvo(int fan_in, int hidden, int units, DesignStyle style);

/// Element-wise stage: unit-parallel ceil(H/U) * evo_depth, pipelined
/// H + evo_depth - 1.
std::int64_t schedule_evo(int hidden, int units, DesignStyle style, int evo_depth);

/// Multiply and add counted separately over the gate matrix-vector products,
/// plus bias adds and the element-wise ops; activations and readout excluded.
std::int64_t op_count(const NetworkSpec& net);

/// ops / (latency_us * 1000).
double throughput_gops(std::int64_t ops, double latency_us);

/// (gops / luts * 1e6, gops / dsps * 1e3); the DSP term is absent when no
/// DSPs are used.
NormalizedThroughput normalized_throughput(double gops, std::int64_t luts, std::int64_t dsps);

ResourceEstimate resource_estimate(const NetworkSpec& net, const AccelConfig& cfg);

UtilizationReport check_budget(const ResourceEstimate& est, const PlatformBudget& budget);

/// Full analytic run: per-layer MVO + activation + EVO + handoff cycles plus
/// readout, control, and fill; latency, throughput, resources, and the
/// budget verdict. A budget violation is reported via fits=false, not an
/// error.
SimReport simulate_network(const NetworkSpec& net, const AccelConfig& cfg);

}  // namespace lstmforge

#endif  // LSTMFORGE_ACCEL_HPP_

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

#include "lstmforge/accel.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace lstmforge {
namespace {

std::int64_t ceil_div(std::int64_t a, std::int64_t b) { return (a + b - 1) / b; }

void check_schedule_args(int hidden, int units) {
  if (hidden < 1) throw std::invalid_argument("schedule: hidden size must be >= 1");
  if (units < 1) throw std::invalid_argument("schedule: unit parallelism must be >= 1");
}

}  // namespace

PlatformBudget builtin_platform(std::string_view name) {
  // Totals reconstructed from measured absolute/percent utilization pairs.
  if (name == "vc707") return {"vc707", 303600, 607200, 1030.0, 2800, 250.0};
  if (name == "zcu104") return {"zcu104", 230400, 460800, 312.0, 1728, 400.0};
  if (name == "u55c") return {"u55c", 1303680, 2607360, 2016.0, 9024, 380.0};
  throw std::invalid_argument("builtin_platform: unknown platform '" + std::string(name) +
                              "' (expected vc707, zcu104, or u55c)");
}

std::vector<std::string> builtin_platform_names() { return {"vc707", "zcu104", "u55c"}; }

std::string_view style_name(DesignStyle style) {
  return style == DesignStyle::pipelined ? "pipelined" : "unit-parallel";
}

DesignStyle parse_style(std::string_view name) {
  if (name == "pipelined") return DesignStyle::pipelined;
  if (name == "unit-parallel" || name == "unit_parallel") return DesignStyle::unit_parallel;
  throw std::invalid_argument("parse_style: unknown design style '" + std::string(name) + "'");
}

CalibrationTable CalibrationTable::defaults() {
  CalibrationTable t;
  // Fitted to measured 32/16/8-bit synthesis results. Below 10-bit precision
  // multipliers synthesize to LUTs, so the 8-bit MAC DSP share is zero.
  t.by_width[32] = {{496.0, 216.0, 70380.0, 86579.0, 41.5},
                    {3.5, 8.0, 8.0, 90.0, 95.0, 1.0, 8000.0, 10000.0}};
  t.by_width[16] = {{124.0, 100.0, 30532.0, 36186.0, 22.0},
                    {1.0, 4.0, 4.0, 60.0, 65.0, 1.0, 6000.0, 8000.0}};
  t.by_width[8] = {{0.0, 15.0, 23899.0, 17422.0, 0.0},
                   {0.0, 1.0, 0.0, 30.0, 32.0, 1.0, 5000.0, 6000.0}};
  return t;
}

const PrecisionCalibration& CalibrationTable::lookup(int value_word_length) const {
  if (by_width.empty()) throw std::invalid_argument("calibration table is empty");
  auto exact = by_width.find(value_word_length);
  if (exact != by_width.end()) return exact->second;
  const PrecisionCalibration* best = nullptr;
  int best_dist = 0;
  for (const auto& [width, cal] : by_width) {
    int dist = std::abs(width - value_word_length);
    if (best == nullptr || dist < best_dist) {
      best = &cal;
      best_dist = dist;
    }
  }
  return *best;
}

void AccelConfig::validate(const NetworkSpec& net) const {
  net.validate();
  int max_hidden = 0;
  for (const auto& layer : net.layers) max_hidden = std::max(max_hidden, layer.hidden_size);
  if (unit_parallelism < 1 || unit_parallelism > max_hidden) {
    throw std::invalid_argument("config: unit parallelism " + std::to_string(unit_parallelism) +
                                " out of range [1, " + std::to_string(max_hidden) + "]");
  }
  if (pipelined_lanes < 1) throw std::invalid_argument("config: pipelined lanes must be >= 1");
  if (!(clock_mhz > 0.0)) throw std::invalid_argument("config: clock must be positive");
  if (platform.fmax_mhz > 0.0 && clock_mhz > platform.fmax_mhz) {
    throw std::invalid_argument("config: clock " + std::to_string(clock_mhz) +
                                " MHz exceeds platform fmax " +
                                std::to_string(platform.fmax_mhz) + " MHz");
  }
  if (!value_format.valid() || !weight_format.valid()) {
    throw std::invalid_argument("config: invalid precision format");
  }
}

std::int64_t schedule_mvo(int fan_in, int hidden, int units, DesignStyle style) {
  check_schedule_args(hidden, units);
  if (fan_in < 1) throw std::invalid_argument("schedule_mvo: fan_in must be >= 1");
  if (style == DesignStyle::unit_parallel) {
    int effective = std::min(units, hidden);
    return ceil_div(hidden, effective) * static_cast<std::int64_t>(fan_in);
  }
  return static_cast<std::int64_t>(fan_in) + hidden - 1;
}

std::int64_t schedule_evo(int hidden, int units, DesignStyle style, int evo_depth) {
  check_schedule_args(hidden, units);
  if (evo_depth < 1) throw std::invalid_argument("schedule_evo: depth must be >= 1");
  if (style == DesignStyle::unit_parallel) {
    int effective = std::min(units, hidden);
    return ceil_div(hidden, effective) * static_cast<std::int64_t>(evo_depth);
  }
  return static_cast<std::int64_t>(hidden) + evo_depth - 1;
}

std::int64_t op_count(const NetworkSpec& net) {
  std::int64_t ops = 0;
  for (const auto& layer : net.layers) {
    auto I = static_cast<std::int64_t>(layer.input_size);
    auto H = static_cast<std::int64_t>(layer.hidden_size);
    ops += 4 * H * (I + H) * 2;  // gate MACs, multiply and add each
    ops += 4 * H;                // bias adds
    ops += 4 * H;                // element-wise: c' takes 3 ops, h' one more
  }
  return ops;
}

double throughput_gops(std::int64_t ops, double latency_us) {
  if (!(latency_us > 0.0)) throw std::invalid_argument("throughput_gops: latency must be positive");
  return static_cast<double>(ops) / (latency_us * 1000.0);
}

NormalizedThroughput normalized_throughput(double gops, std::int64_t luts, std::int64_t dsps) {
  if (luts <= 0) throw std::invalid_argument("normalized_throughput: luts must be positive");
  if (dsps < 0) throw std::invalid_argument("normalized_throughput: dsps must be non-negative");
  NormalizedThroughput n;
  n.per_mega_lut = gops / static_cast<double>(luts) * 1e6;
  if (dsps > 0) n.per_kilo_dsp = gops / static_cast<double>(dsps) * 1e3;
  return n;
}

ResourceEstimate resource_estimate(const NetworkSpec& net, const AccelConfig& cfg) {
  cfg.validate(net);
  const PrecisionCalibration& cal = cfg.calibration.lookup(cfg.value_format.word_length);
  const int fan_in = net.max_concat_fan_in();
  ResourceEstimate est;

  if (cfg.style == DesignStyle::pipelined) {
    const auto& p = cal.pipelined;
    double lanes = static_cast<double>(cfg.pipelined_lanes);
    est.dsp_mac = static_cast<std::int64_t>(std::llround(p.dsp_mac * lanes));
    est.dsp = static_cast<std::int64_t>(std::llround((p.dsp_mac + p.dsp_act) * lanes));
    est.lut = static_cast<std::int64_t>(std::llround(p.lut));
    est.ff = static_cast<std::int64_t>(std::llround(p.ff));
    est.bram36k = p.bram36k;
    return est;
  }

  const auto& u = cal.unit_parallel;
  const double units = cfg.unit_parallelism;
  const double lanes = 4.0 * units * fan_in;
  est.dsp_mac = static_cast<std::int64_t>(std::llround(lanes * u.dsp_per_mac_lane));
  est.dsp = est.dsp_mac + static_cast<std::int64_t>(
                              std::llround(units * (u.act_dsp_per_unit + u.evo_dsp_per_unit)));
  est.lut = static_cast<std::int64_t>(std::llround(u.lut_base + lanes * u.lut_per_lane));
  est.ff = static_cast<std::int64_t>(std::llround(u.ff_base + lanes * u.ff_per_lane));
  est.bram36k = 4.0 * units * u.bram_per_unit;
  return est;
}

UtilizationReport check_budget(const ResourceEstimate& est, const PlatformBudget& budget) {
  if (budget.lut <= 0 || budget.ff <= 0 || budget.dsp <= 0 || budget.bram36k <= 0.0) {
    throw std::invalid_argument("check_budget: platform totals must be positive");
  }
  UtilizationReport report;
  report.lut_pct = 100.0 * static_cast<double>(est.lut) / static_cast<double>(budget.lut);
  report.ff_pct = 100.0 * static_cast<double>(est.ff) / static_cast<double>(budget.ff);
  report.bram_pct = 100.0 * est.bram36k / budget.bram36k;
  report.dsp_pct = 100.0 * static_cast<double>(est.dsp) / static_cast<double>(budget.dsp);
  report.fits = est.lut <= budget.lut && est.ff <= budget.ff &&
                est.bram36k <= budget.bram36k && est.dsp <= budget.dsp;
  return report;
}

SimReport simulate_network(const NetworkSpec& net, const AccelConfig& cfg) {
  cfg.validate(net);

  SimReport report;
  std::int64_t cycles = cfg.overheads.pipeline_fill + cfg.overheads.control;
  for (const auto& layer : net.layers) {
    int fan_in = layer.input_size + layer.hidden_size;
    cycles += schedule_mvo(fan_in, layer.hidden_size, cfg.unit_parallelism, cfg.style);
    cycles += cfg.overheads.activation_latency;
    cycles += schedule_evo(layer.hidden_size, cfg.unit_parallelism, cfg.style,
                           cfg.overheads.evo_depth);
    cycles += cfg.overheads.layer_handoff;
  }
  if (net.readout) {
    cycles += net.last_hidden_size() + 2;  // serialized dot chain plus bias/round tail
  }

  report.cycles = cycles;
  report.latency_us = static_cast<double>(cycles) / cfg.clock_mhz;
  report.ops = op_count(net);
  report.gops = throughput_gops(report.ops, report.latency_us);
  report.resources = resource_estimate(net, cfg);
  report.normalized = normalized_throughput(report.gops, report.resources.lut,
                                            report.resources.dsp);
  report.utilization = check_budget(report.resources, cfg.platform);
  report.fits = report.utilization.fits;
  return report;
}

}  // namespace lstmforge

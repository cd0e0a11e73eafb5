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

#ifndef LSTMFORGE_DSE_HPP_
#define LSTMFORGE_DSE_HPP_

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "lstmforge/accel.hpp"
#include "lstmforge/activation.hpp"
#include "lstmforge/network.hpp"

namespace lstmforge {

struct PrecisionPoint {
  std::string name;
  FixedFormat value_format;
  FixedFormat weight_format;
};

/// The sweep axes: platform x style x precision x unit parallelism. The clock
/// is either fixed for every point or defaults to each platform's fmax.
struct SweepGrid {
  std::vector<PlatformBudget> platforms;
  std::vector<DesignStyle> styles;
  std::vector<PrecisionPoint> precisions;
  std::vector<int> unit_parallelism;
  std::optional<double> clock_mhz;
  ActivationSettings activation;
  ScheduleOverheads overheads;
  CalibrationTable calibration = CalibrationTable::defaults();
};

/// One grid point's outcome. Infeasible points carry an error note instead of
/// a report; they stay in the row set so sweeps are audit-complete.
struct SweepRow {
  std::string platform;
  DesignStyle style = DesignStyle::unit_parallel;
  int ws_z = 0;
  int ws_w = 0;
  int units = 0;
  double f_mhz = 0.0;
  std::optional<SimReport> report;
  std::optional<double> snr_db;
  std::string error;
};

/// Evaluate every grid point: quantize the network, score accuracy against
/// the double-precision forward pass when a signal is supplied, and run the
/// performance model. Rows come back in deterministic lexicographic grid
/// order (platform, style, precision, U) regardless of thread count.
/// `max_threads` 0 picks the hardware concurrency.
std::vector<SweepRow> run_sweep(const NetworkSpec& net, const std::vector<double>* signal,
                                const SweepGrid& grid, unsigned max_threads = 0);

/// Rows not dominated under (minimize latency, maximize snr_db, minimize
/// DSP), original order preserved. The SNR objective participates only when
/// every feasible row carries one; error rows never enter the front.
std::vector<SweepRow> pareto_front(const std::vector<SweepRow>& rows);

enum class ReportFormat { csv, json };
ReportFormat parse_report_format(std::string_view name);

/// CSV columns: platform,style,ws_z,ws_w,U,f_mhz,cycles,latency_us,ops,gops,
/// gops_per_lut,gops_per_dsp,lut,ff,bram,dsp,fits,snr_db. JSON is the
/// array-of-rows equivalent plus an "error" field per row.
std::string report_csv(const std::vector<SweepRow>& rows);
std::string report_json(const std::vector<SweepRow>& rows);

void emit_report(const std::vector<SweepRow>& rows, ReportFormat format,
                 const std::filesystem::path& path);

/// Reads back a JSON report produced by emit_report.
std::vector<SweepRow> parse_report_json(const std::filesystem::path& path);

}  // namespace lstmforge

#endif  // LSTMFORGE_DSE_HPP_

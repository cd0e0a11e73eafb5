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

#ifndef LSTMFORGE_IO_HPP_
#define LSTMFORGE_IO_HPP_

#include <filesystem>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "lstmforge/accel.hpp"
#include "lstmforge/dse.hpp"
#include "lstmforge/network.hpp"

namespace lstmforge {

/// Malformed input content (bad JSON, bad dimensions, bad CSV field).
/// Messages name the file and, for line-oriented formats, the line.
struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Filesystem-level failure (missing file, unwritable path).
struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Weight file: {"layers":[{"input_size":..,"hidden_size":..,"gates":{"i":
/// {"wx":[[..]],"wh":[[..]],"b":[..]},"f":..,"u":..,"o":..}}],
/// "readout":{"w":[..],"b":..}}. Matrices row-major, one row per hidden unit.
NetworkSpec load_network_json(const std::filesystem::path& path);
void save_network_json(const NetworkSpec& net, const std::filesystem::path& path);

/// Signal file: CSV with one real sample per line; lines starting with '#'
/// are comments.
std::vector<double> load_signal_csv(const std::filesystem::path& path);
void save_signal_csv(std::span<const double> signal, const std::filesystem::path& path);

/// Platform preset: {"name":..,"lut":..,"ff":..,"bram36k":..,"dsp":..,
/// "fmax_mhz":..}.
PlatformBudget load_platform_json(const std::filesystem::path& path);

/// Calibration file: optional "overheads" block plus per-precision resource
/// coefficients keyed by value word length.
struct CalibrationFile {
  CalibrationTable table;
  std::optional<ScheduleOverheads> overheads;
};
CalibrationFile load_calibration_json(const std::filesystem::path& path);

/// Sweep config: weight/signal paths plus the grid axes and output choice.
struct SweepFileConfig {
  std::filesystem::path weights;
  std::optional<std::filesystem::path> signal;
  SweepGrid grid;
  std::filesystem::path output = "sweep.csv";
  ReportFormat format = ReportFormat::csv;
  bool pareto_only = false;
};
SweepFileConfig load_sweep_config(const std::filesystem::path& path);

}  // namespace lstmforge

#endif  // LSTMFORGE_IO_HPP_

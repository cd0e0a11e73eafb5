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

#ifndef LSTMFORGE_ACTIVATION_HPP_
#define LSTMFORGE_ACTIVATION_HPP_

#include <vector>

#include "lstmforge/fixedpoint.hpp"

namespace lstmforge {

/// Log-sigmoid 1/(1+e^-x) in double precision.
double sigmoid_exact(double x);

/// Hyperbolic tangent in double precision.
double tanh_exact(double x);

/// Rectifier max(0, x).
double step_relu(double x);

enum class LutKind { log_sigmoid, tanh };

/// Sampled activation table: (hi-lo)/step entries at lo, lo+step, ...,
/// hi-step, quantized to `format`. Inputs below lo read `below_value`,
/// above hi read `above_value` (the function's asymptotic limits).
struct LutTable {
  LutKind kind = LutKind::log_sigmoid;
  double lo = -1.0;
  double hi = 1.0;
  double step = 0.1;
  FixedFormat format;
  std::vector<FixedValue> samples;
  FixedValue below_value;
  FixedValue above_value;
};

/// Sample `kind` over [lo, hi) with spacing `step`. (hi-lo)/step must be an
/// integer within 1e-9 or std::invalid_argument is thrown.
LutTable build_lut(LutKind kind, double lo, double hi, double step,
                   const FixedFormat& fmt);

/// Nearest-sample lookup, no interpolation: index = round((x-lo)/step)
/// clamped to the table, with the boundary clamps outside [lo, hi].
FixedValue eval_lut(const LutTable& table, const FixedValue& x);

enum class ActivationMode { exact, lut };

/// Per-run activation realization. `exact` evaluates the reference function
/// and quantizes the result; `lut` uses nearest-sample tables.
struct ActivationSettings {
  ActivationMode mode = ActivationMode::exact;
  double sigmoid_lo = -1.0, sigmoid_hi = 1.0, sigmoid_step = 0.1;
  double tanh_lo = -2.0, tanh_hi = 2.0, tanh_step = 0.05;
};

/// Applies sigmoid/tanh to fixed-point pre-activations under one settings
/// choice. Tables are built once per engine; evaluation is pure.
class ActivationEngine {
 public:
  ActivationEngine(const ActivationSettings& settings, const FixedFormat& fmt);

  FixedValue sigmoid(const FixedValue& x) const;
  FixedValue tanh(const FixedValue& x) const;

 private:
  ActivationSettings settings_;
  FixedFormat format_;
  LutTable sigmoid_lut_;
  LutTable tanh_lut_;
};

}  // namespace lstmforge

#endif  // LSTMFORGE_ACTIVATION_HPP_

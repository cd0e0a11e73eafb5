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

#ifndef LSTMFORGE_QUANTIZED_HPP_
#define LSTMFORGE_QUANTIZED_HPP_

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "lstmforge/activation.hpp"
#include "lstmforge/fixedpoint.hpp"
#include "lstmforge/network.hpp"

namespace lstmforge {

/// Raw integer rasters of one gate. Weights are stored at the weight format,
/// biases directly at the accumulator format (fl = value.fl + weight.fl) so
/// bias addition inside the MAC chain needs no re-scaling.
struct QuantizedGate {
  std::vector<std::int64_t> wx;
  std::vector<std::int64_t> wh;
  std::vector<raw_t> b;
};

struct QuantizedLayer {
  int input_size = 0;
  int hidden_size = 0;
  std::array<QuantizedGate, kNumGates> gates;
};

struct QuantizedReadout {
  std::vector<std::int64_t> w;
  raw_t b = 0;
};

struct QuantizedFormats {
  FixedFormat value;        // n_z: inputs, states, activations
  FixedFormat weight;       // n_w
  FixedFormat accumulator;  // n_s wide, fl = value.fl + weight.fl
  AccumulatorSpec acc_spec;
};

struct QuantizedNetwork {
  std::vector<QuantizedLayer> layers;
  std::optional<QuantizedReadout> readout;
  QuantizedFormats formats;
  int input_window = 16;
  // Weights that fell outside the weight format's range and were clamped
  // during quantization; a warning, not a failure.
  std::uint64_t saturated_weights = 0;
};

/// Quantize every parameter of `net`: weights to `weight_fmt`, biases to the
/// accumulator format. The accumulator width n_s comes from
/// accumulator_bits() at the concatenated fan-in max(I_l + H_l);
/// `accumulator_bits_override` may widen it but not shrink below the formula.
QuantizedNetwork quantize_network(const NetworkSpec& net, const FixedFormat& value_fmt,
                                  const FixedFormat& weight_fmt,
                                  std::optional<int> accumulator_bits_override = std::nullopt);

/// Saturation events observed during a fixed-point forward pass, by stage.
/// A correctly sized accumulator keeps `mac` at zero for any input.
struct FixedRunStats {
  std::uint64_t input = 0;    // feature quantization clamps
  std::uint64_t mac = 0;      // adds inside MVO dot products
  std::uint64_t rescale = 0;  // accumulator -> value format before activation
  std::uint64_t evo = 0;      // element-wise stage clamps
};

/// Fixed-point forward pass mirroring forward(): matrix-vector work runs at
/// the full accumulator width with no intermediate rounding, results are
/// re-scaled to the value format before each activation, and the element-wise
/// stage runs at the value format with one guard bit. Outputs are dequantized.
std::vector<double> forward_fixed(const QuantizedNetwork& qnet,
                                  std::span<const std::vector<double>> features,
                                  const ActivationSettings& activation = {},
                                  FixedRunStats* stats = nullptr);

}  // namespace lstmforge

#endif  // LSTMFORGE_QUANTIZED_HPP_

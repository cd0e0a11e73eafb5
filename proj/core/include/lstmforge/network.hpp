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

#ifndef LSTMFORGE_NETWORK_HPP_
#define LSTMFORGE_NETWORK_HPP_

#include <array>
#include <cstddef>
#include <optional>
#include <span>
#include <vector>

namespace lstmforge {

// Gate order is fixed as i, f, u, o (input, forget, modulation, output);
// weight files use the same order.
enum Gate : int { kGateInput = 0, kGateForget = 1, kGateModulation = 2, kGateOutput = 3 };
inline constexpr int kNumGates = 4;
inline constexpr std::array<const char*, kNumGates> kGateNames{"i", "f", "u", "o"};

/// One gate's parameters. Matrices are row-major with one row per hidden
/// unit: wx is H x I, wh is H x H, b has H entries.
struct GateParams {
  std::vector<double> wx;
  std::vector<double> wh;
  std::vector<double> b;
};

struct LayerParams {
  int input_size = 0;
  int hidden_size = 0;
  std::array<GateParams, kNumGates> gates;
};

/// Affine H -> 1 output stage: dot(w, h) + b.
struct Readout {
  std::vector<double> w;
  double b = 0.0;
};

/// Stacked-LSTM topology. Layer k's input size must equal layer k-1's hidden
/// size; `input_window` is the sliding-window width feeding layer 0.
struct NetworkSpec {
  std::vector<LayerParams> layers;
  std::optional<Readout> readout;
  int input_window = 16;

  [[nodiscard]] int input_size() const {
    return layers.empty() ? 0 : layers.front().input_size;
  }
  [[nodiscard]] int last_hidden_size() const {
    return layers.empty() ? 0 : layers.back().hidden_size;
  }
  /// Largest concatenated operand length max(I_l + H_l) over layers; this is
  /// the MAC fan-in the accumulator must absorb.
  [[nodiscard]] int max_concat_fan_in() const;

  /// Throws std::invalid_argument on dimension mismatches or non-finite
  /// parameters.
  void validate() const;
};

/// Hidden and cell state of one layer.
struct CellState {
  std::vector<double> h;
  std::vector<double> c;

  static CellState zeros(int hidden_size) {
    return {std::vector<double>(hidden_size, 0.0), std::vector<double>(hidden_size, 0.0)};
  }
};

/// One recurrence step:
///   i = sigma(Wix x + Wih h + bi), f and o analogous, u = tanh(...),
///   c' = f.c + i.u, h' = o.tanh(c').
CellState lstm_cell_step(std::span<const double> x, const CellState& state,
                         const LayerParams& params);

/// Full reference forward pass in double precision: feeds each feature vector
/// through the stacked layers (states persist across time steps) and applies
/// the readout to the last layer's hidden state. One scalar per time step.
std::vector<double> forward(const NetworkSpec& net,
                            std::span<const std::vector<double>> features);

/// The n most recent samples ending at index t, oldest first; indices before
/// the start of the signal read as zero.
std::vector<double> window_features(std::span<const double> signal, std::ptrdiff_t t,
                                    int n = 16);

/// Turns a raw signal into one window per sample.
std::vector<std::vector<double>> windowed_features(std::span<const double> signal, int n);

double dense_readout(std::span<const double> h, std::span<const double> w, double b);

/// 10*log10(sum ref^2 / sum (ref-est)^2). Identical sequences yield +infinity;
/// an all-zero reference throws std::invalid_argument.
double snr_db(std::span<const double> reference, std::span<const double> estimate);

}  // namespace lstmforge

#endif  // LSTMFORGE_NETWORK_HPP_

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

#include "lstmforge/network.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "lstmforge/activation.hpp"

namespace lstmforge {
namespace {

void check_all_finite(std::span<const double> v, const std::string& what) {
  for (double x : v) {
    if (!std::isfinite(x)) throw std::invalid_argument(what + ": non-finite value");
  }
}

// Pre-activation of one gate: W_gx x + W_gh h + b, one entry per hidden unit.
void gate_preactivation(const GateParams& g, std::span<const double> x,
                        std::span<const double> h, int input_size, int hidden_size,
                        std::span<double> out) {
  for (int r = 0; r < hidden_size; ++r) {
    double acc = g.b[r];
    const double* wx_row = g.wx.data() + static_cast<std::size_t>(r) * input_size;
    for (int k = 0; k < input_size; ++k) acc += wx_row[k] * x[k];
    const double* wh_row = g.wh.data() + static_cast<std::size_t>(r) * hidden_size;
    for (int k = 0; k < hidden_size; ++k) acc += wh_row[k] * h[k];
    out[r] = acc;
  }
}

}  // namespace

int NetworkSpec::max_concat_fan_in() const {
  int fan_in = 1;
  for (const auto& layer : layers) {
    fan_in = std::max(fan_in, layer.input_size + layer.hidden_size);
  }
  return fan_in;
}

void NetworkSpec::validate() const {
  if (layers.empty()) throw std::invalid_argument("network: no layers");
  if (input_window < 1) throw std::invalid_argument("network: input_window must be >= 1");
  for (std::size_t l = 0; l < layers.size(); ++l) {
    const auto& layer = layers[l];
    const std::string where = "network layer " + std::to_string(l);
    if (layer.input_size < 1 || layer.hidden_size < 1) {
      throw std::invalid_argument(where + ": sizes must be >= 1");
    }
    if (l > 0 && layer.input_size != layers[l - 1].hidden_size) {
      throw std::invalid_argument(where + ": input size does not match previous hidden size");
    }
    for (int g = 0; g < kNumGates; ++g) {
      const auto& gate = layer.gates[g];
      auto expect = [&](std::size_t got, std::size_t want, const char* name) {
        if (got != want) {
          throw std::invalid_argument(where + " gate " + kGateNames[g] + ": bad " + name +
                                      " size " + std::to_string(got) + " (expected " +
                                      std::to_string(want) + ")");
        }
      };
      expect(gate.wx.size(), static_cast<std::size_t>(layer.hidden_size) * layer.input_size, "wx");
      expect(gate.wh.size(), static_cast<std::size_t>(layer.hidden_size) * layer.hidden_size, "wh");
      expect(gate.b.size(), static_cast<std::size_t>(layer.hidden_size), "b");
      check_all_finite(gate.wx, where);
      check_all_finite(gate.wh, where);
      check_all_finite(gate.b, where);
    }
  }
  if (readout) {
    if (readout->w.size() != static_cast<std::size_t>(last_hidden_size())) {
      throw std::invalid_argument("network readout: weight length does not match last hidden size");
    }
    check_all_finite(readout->w, "network readout");
    if (!std::isfinite(readout->b)) throw std::invalid_argument("network readout: non-finite bias");
  }
}

CellState lstm_cell_step(std::span<const double> x, const CellState& state,
                         const LayerParams& params) {
  const int I = params.input_size;
  const int H = params.hidden_size;
  if (static_cast<int>(x.size()) != I) {
    throw std::invalid_argument("lstm_cell_step: input length " + std::to_string(x.size()) +
                                " does not match layer input size " + std::to_string(I));
  }
  if (static_cast<int>(state.h.size()) != H || static_cast<int>(state.c.size()) != H) {
    throw std::invalid_argument("lstm_cell_step: state length does not match hidden size");
  }

  std::array<std::vector<double>, kNumGates> pre;
  for (int g = 0; g < kNumGates; ++g) {
    pre[g].resize(H);
    gate_preactivation(params.gates[g], x, state.h, I, H, pre[g]);
  }

  CellState next = CellState::zeros(H);
  for (int r = 0; r < H; ++r) {
    double i = sigmoid_exact(pre[kGateInput][r]);
    double f = sigmoid_exact(pre[kGateForget][r]);
    double u = tanh_exact(pre[kGateModulation][r]);
    double o = sigmoid_exact(pre[kGateOutput][r]);
    double c = f * state.c[r] + i * u;
    next.c[r] = c;
    next.h[r] = o * tanh_exact(c);
  }
  return next;
}

std::vector<double> forward(const NetworkSpec& net,
                            std::span<const std::vector<double>> features) {
  net.validate();
  if (!net.readout) throw std::invalid_argument("forward: network has no readout stage");

  std::vector<CellState> states;
  states.reserve(net.layers.size());
  for (const auto& layer : net.layers) states.push_back(CellState::zeros(layer.hidden_size));

  std::vector<double> out;
  out.reserve(features.size());
  for (const auto& x : features) {
    std::span<const double> input = x;
    for (std::size_t l = 0; l < net.layers.size(); ++l) {
      states[l] = lstm_cell_step(input, states[l], net.layers[l]);
      input = states[l].h;
    }
    out.push_back(dense_readout(input, net.readout->w, net.readout->b));
  }
  return out;
}

std::vector<double> window_features(std::span<const double> signal, std::ptrdiff_t t, int n) {
  if (n <= 0) throw std::invalid_argument("window_features: window size must be positive");
  if (t < 0 || t >= static_cast<std::ptrdiff_t>(signal.size())) {
    throw std::invalid_argument("window_features: index out of range");
  }
  std::vector<double> out(static_cast<std::size_t>(n), 0.0);
  for (int k = 0; k < n; ++k) {
    std::ptrdiff_t idx = t - (n - 1 - k);
    if (idx >= 0) out[k] = signal[static_cast<std::size_t>(idx)];
  }
  return out;
}

std::vector<std::vector<double>> windowed_features(std::span<const double> signal, int n) {
  std::vector<std::vector<double>> features;
  features.reserve(signal.size());
  for (std::size_t t = 0; t < signal.size(); ++t) {
    features.push_back(window_features(signal, static_cast<std::ptrdiff_t>(t), n));
  }
  return features;
}

double dense_readout(std::span<const double> h, std::span<const double> w, double b) {
  if (h.size() != w.size()) {
    throw std::invalid_argument("dense_readout: vector lengths differ");
  }
  double acc = b;
  for (std::size_t k = 0; k < h.size(); ++k) acc += w[k] * h[k];
  return acc;
}

double snr_db(std::span<const double> reference, std::span<const double> estimate) {
  if (reference.empty() || reference.size() != estimate.size()) {
    throw std::invalid_argument("snr_db: sequences must have equal nonzero length");
  }
  double signal_power = 0.0;
  double error_power = 0.0;
  for (std::size_t k = 0; k < reference.size(); ++k) {
    signal_power += reference[k] * reference[k];
    double e = reference[k] - estimate[k];
    error_power += e * e;
  }
  if (signal_power == 0.0) throw std::invalid_argument("snr_db: reference power is zero");
  if (error_power == 0.0) return std::numeric_limits<double>::infinity();
  return 10.0 * std::log10(signal_power / error_power);
}

}  // namespace lstmforge

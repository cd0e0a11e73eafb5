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

#include "lstmforge/demo.hpp"

#include <cmath>
#include <numbers>
#include <random>

namespace lstmforge {

NetworkSpec make_demo_network(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> dist(-0.5, 0.5);
  auto fill = [&](std::size_t n) {
    std::vector<double> v(n);
    for (auto& x : v) x = dist(rng);
    return v;
  };

  NetworkSpec net;
  const int hidden = 15;
  int input = 16;
  for (int l = 0; l < 3; ++l) {
    LayerParams layer;
    layer.input_size = input;
    layer.hidden_size = hidden;
    for (int g = 0; g < kNumGates; ++g) {
      layer.gates[g].wx = fill(static_cast<std::size_t>(hidden) * input);
      layer.gates[g].wh = fill(static_cast<std::size_t>(hidden) * hidden);
      layer.gates[g].b = fill(hidden);
    }
    net.layers.push_back(std::move(layer));
    input = hidden;
  }
  net.readout = Readout{fill(hidden), dist(rng)};
  net.input_window = 16;
  return net;
}

std::vector<double> make_demo_signal(std::size_t samples) {
  std::vector<double> signal(samples);
  for (std::size_t k = 0; k < samples; ++k) {
    signal[k] = std::sin(2.0 * std::numbers::pi * static_cast<double>(k) / 64.0);
  }
  return signal;
}

}  // namespace lstmforge

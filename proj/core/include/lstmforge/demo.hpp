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

#ifndef LSTMFORGE_DEMO_HPP_
#define LSTMFORGE_DEMO_HPP_

#include <cstdint>
#include <vector>

#include "lstmforge/network.hpp"

namespace lstmforge {

/// Seeded random network in the default shape (3 layers, 15 units each, 16
/// input features, affine readout). Weights and biases are uniform in
/// [-0.5, 0.5]; the same seed always produces the same network.
NetworkSpec make_demo_network(std::uint64_t seed = 42);

/// Unit-amplitude sine test signal, period 64 samples.
std::vector<double> make_demo_signal(std::size_t samples = 1000);

}  // namespace lstmforge

#endif  // LSTMFORGE_DEMO_HPP_

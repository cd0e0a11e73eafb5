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

#include "lstmforge/activation.hpp"

#include <cmath>
#include <cstddef>
#include <stdexcept>

namespace lstmforge {
namespace {

double eval_kind(LutKind kind, double x) {
  return kind == LutKind::log_sigmoid ? sigmoid_exact(x) : tanh_exact(x);
}

void require_finite(double x, const char* where) {
  if (!std::isfinite(x)) throw std::invalid_argument(std::string(where) + ": non-finite input");
}

}  // namespace

double sigmoid_exact(double x) {
  require_finite(x, "sigmoid_exact");
  return 1.0 / (1.0 + std::exp(-x));
}

double tanh_exact(double x) {
  require_finite(x, "tanh_exact");
  return std::tanh(x);
}

double step_relu(double x) {
  require_finite(x, "step_relu");
  return x > 0.0 ? x : 0.0;
}

LutTable build_lut(LutKind kind, double lo, double hi, double step,
                   const FixedFormat& fmt) {
  if (!(lo < hi) || !(step > 0.0)) {
    throw std::invalid_argument("build_lut: require lo < hi and step > 0");
  }
  double count_real = (hi - lo) / step;
  double count_rounded = std::round(count_real);
  if (std::abs(count_real - count_rounded) > 1e-9 || count_rounded < 1.0) {
    throw std::invalid_argument("build_lut: (hi-lo)/step must be a positive integer");
  }
  auto count = static_cast<std::size_t>(count_rounded);

  LutTable table;
  table.kind = kind;
  table.lo = lo;
  table.hi = hi;
  table.step = step;
  table.format = fmt;
  table.samples.reserve(count);
  for (std::size_t k = 0; k < count; ++k) {
    table.samples.push_back(quantize(eval_kind(kind, lo + static_cast<double>(k) * step), fmt));
  }
  if (kind == LutKind::log_sigmoid) {
    table.below_value = quantize(0.0, fmt);
    table.above_value = quantize(1.0, fmt);
  } else {
    table.below_value = quantize(-1.0, fmt);
    table.above_value = quantize(1.0, fmt);
  }
  return table;
}

FixedValue eval_lut(const LutTable& table, const FixedValue& x) {
  double xd = dequantize(x);
  if (xd < table.lo) return table.below_value;
  if (xd > table.hi) return table.above_value;
  auto index = static_cast<long long>(std::llround((xd - table.lo) / table.step));
  if (index < 0) index = 0;
  auto last = static_cast<long long>(table.samples.size()) - 1;
  if (index > last) index = last;
  return table.samples[static_cast<std::size_t>(index)];
}

ActivationEngine::ActivationEngine(const ActivationSettings& settings,
                                   const FixedFormat& fmt)
    : settings_(settings), format_(fmt) {
  if (settings.mode == ActivationMode::lut) {
    sigmoid_lut_ = build_lut(LutKind::log_sigmoid, settings.sigmoid_lo,
                             settings.sigmoid_hi, settings.sigmoid_step, fmt);
    tanh_lut_ = build_lut(LutKind::tanh, settings.tanh_lo, settings.tanh_hi,
                          settings.tanh_step, fmt);
  }
}

FixedValue ActivationEngine::sigmoid(const FixedValue& x) const {
  if (settings_.mode == ActivationMode::lut) return eval_lut(sigmoid_lut_, x);
  return quantize(sigmoid_exact(dequantize(x)), format_);
}

FixedValue ActivationEngine::tanh(const FixedValue& x) const {
  if (settings_.mode == ActivationMode::lut) return eval_lut(tanh_lut_, x);
  return quantize(tanh_exact(dequantize(x)), format_);
}

}  // namespace lstmforge

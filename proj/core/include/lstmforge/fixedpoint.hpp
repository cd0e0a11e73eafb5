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

#ifndef LSTMFORGE_FIXEDPOINT_HPP_
#define LSTMFORGE_FIXEDPOINT_HPP_

#include <cstdint>
#include <string_view>

namespace lstmforge {

// 128-bit raw storage lets full-precision products of two wide operands and
// wide multiply-accumulate chains (up to 128 bits) run without a bignum
// dependency. Weight rasters are at most 64 bits and stay in int64_t.
using raw_t = __int128;
using uraw_t = unsigned __int128;

/// Signed two's-complement Q-format descriptor. `word_length` counts all bits
/// including the sign, `fraction_length` the bits right of the binary point.
/// The representable range is [-2^(ws-1)*2^-fl, (2^(ws-1)-1)*2^-fl] and the
/// resolution (spacing of neighboring representable values) is exactly 2^-fl.
struct FixedFormat {
  int word_length = 16;
  int fraction_length = 8;

  // Derived formats (products, accumulators) may exceed 64 bits; named
  // tensor formats are restricted to 2..64 at the config boundary.
  static constexpr int kMaxWordLength = 128;

  [[nodiscard]] bool valid() const {
    return word_length >= 2 && word_length <= kMaxWordLength &&
           fraction_length >= 0 && fraction_length < word_length;
  }
  [[nodiscard]] raw_t raw_min() const;
  [[nodiscard]] raw_t raw_max() const;
  [[nodiscard]] double resolution() const;
  [[nodiscard]] double min_value() const;
  [[nodiscard]] double max_value() const;

  bool operator==(const FixedFormat&) const = default;
};

/// A raw two's-complement integer together with the format that scales it.
/// Real value = raw * 2^-fraction_length.
struct FixedValue {
  raw_t raw = 0;
  FixedFormat format;

  [[nodiscard]] double to_double() const;
};

/// Counts saturation (clamp) events. Pass to the arithmetic routines that can
/// clip so callers can assert overflow-freedom or surface warnings.
struct SatCounter {
  std::uint64_t events = 0;
};

/// Round `x` to the nearest representable value of `fmt` (ties to even) and
/// saturate to the format range. Throws std::invalid_argument for non-finite
/// inputs or an invalid format.
FixedValue quantize(double x, const FixedFormat& fmt, SatCounter* sat = nullptr);

/// Exact real value raw * 2^-fl.
double dequantize(const FixedValue& v);

/// Full-precision product: result ws = a.ws + b.ws, fl = a.fl + b.fl. No
/// information is lost at the multiply; the width grows instead.
FixedValue fx_mul(const FixedValue& a, const FixedValue& b);

/// Integer add of two operands already aligned to the same fraction length,
/// saturated to `out`. Callers re-scale via fx_rescale first when needed.
FixedValue fx_add_sat(const FixedValue& a, const FixedValue& b,
                      const FixedFormat& out, SatCounter* sat = nullptr);

/// Move a value to another format: shift to the new fraction length with
/// round-to-nearest-even on dropped bits, then saturate to the new range.
FixedValue fx_rescale(const FixedValue& v, const FixedFormat& out,
                      SatCounter* sat = nullptr);

/// Worst-case fan-in of a neuron: max of the input count and the widest
/// layer. Both arguments must be >= 1.
int max_fan_in(int max_inputs, int max_neurons_largest_layer);

/// Bits needed for a weighted sum of `fan_in` products of `value_bits` x
/// `weight_bits` operands: ceil(log2(n_c*(2^(n_z-1)-1)*(2^(n_w-1)-1))) + 1,
/// evaluated in exact integer arithmetic (no floating log).
int accumulator_bits(int fan_in, int value_bits, int weight_bits);

/// Accumulator sizing for a MAC chain: fan-in n_c plus the signed width n_s
/// that makes the worst-case sum overflow-free. n_s is floored at the operand
/// widths (and at fl+1 so the derived format stays valid).
struct AccumulatorSpec {
  int fan_in = 1;
  int bits = 2;

  static AccumulatorSpec sized_for(int fan_in, const FixedFormat& value_fmt,
                                   const FixedFormat& weight_fmt);
  /// The format MAC chains accumulate in: fl = value.fl + weight.fl so bias
  /// addition and product accumulation need no re-scaling.
  [[nodiscard]] FixedFormat format(const FixedFormat& value_fmt,
                                   const FixedFormat& weight_fmt) const;
};

/// Named precision presets: "fp32" -> (ws=32, fl=16), "fp16" -> (16, 8),
/// "fp8" -> (8, 4). Fraction length defaults to ws/2; callers may override
/// per tensor class afterwards. Throws std::invalid_argument for other names.
FixedFormat named_format(std::string_view name);

}  // namespace lstmforge

#endif  // LSTMFORGE_FIXEDPOINT_HPP_

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

#include "lstmforge/fixedpoint.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace lstmforge {
namespace {

void bump(SatCounter* sat) {
  if (sat != nullptr) ++sat->events;
}

// Round a real to the nearest integer, ties to even. The fractional part of a
// double is itself representable, so the comparisons below are exact.
double round_half_even(double x) {
  double f = std::floor(x);
  double frac = x - f;
  if (frac > 0.5) return f + 1.0;
  if (frac == 0.5 && std::fmod(f, 2.0) != 0.0) return f + 1.0;
  return f;
}

// Arithmetic right shift with round-to-nearest-even on the dropped bits.
// Valid for 1 <= k <= 127.
raw_t shift_right_rne(raw_t v, int k) {
  raw_t floor = v >> k;
  raw_t rem = v - (floor << k);  // in [0, 2^k)
  raw_t half = raw_t(1) << (k - 1);
  if (rem > half || (rem == half && (floor & 1) != 0)) return floor + 1;
  return floor;
}

int bit_width_u128(uraw_t x) {
  int n = 0;
  auto hi = static_cast<std::uint64_t>(x >> 64);
  auto lo = static_cast<std::uint64_t>(x);
  if (hi != 0) return 128 - __builtin_clzll(hi);
  if (lo != 0) n = 64 - __builtin_clzll(lo);
  return n;
}

void require_valid(const FixedFormat& fmt, const char* where) {
  if (!fmt.valid()) {
    throw std::invalid_argument(std::string(where) + ": invalid fixed-point format (ws=" +
                                std::to_string(fmt.word_length) + ", fl=" +
                                std::to_string(fmt.fraction_length) + ")");
  }
}

raw_t clamp_to(raw_t v, const FixedFormat& fmt, SatCounter* sat) {
  raw_t lo = fmt.raw_min();
  raw_t hi = fmt.raw_max();
  if (v < lo) {
    bump(sat);
    return lo;
  }
  if (v > hi) {
    bump(sat);
    return hi;
  }
  return v;
}

}  // namespace

raw_t FixedFormat::raw_min() const {
  return static_cast<raw_t>(-(uraw_t(1) << (word_length - 1)));
}

raw_t FixedFormat::raw_max() const {
  return static_cast<raw_t>((uraw_t(1) << (word_length - 1)) - 1);
}

double FixedFormat::resolution() const { return std::ldexp(1.0, -fraction_length); }

double FixedFormat::min_value() const {
  return std::ldexp(-1.0, word_length - 1 - fraction_length);
}

double FixedFormat::max_value() const {
  return static_cast<double>(raw_max()) * resolution();
}

double FixedValue::to_double() const { return dequantize(*this); }

FixedValue quantize(double x, const FixedFormat& fmt, SatCounter* sat) {
  require_valid(fmt, "quantize");
  if (!std::isfinite(x)) throw std::invalid_argument("quantize: non-finite input");

  double scaled = std::ldexp(x, fmt.fraction_length);
  double rounded = round_half_even(scaled);
  // 2^(ws-1) is exact as a double for every admissible word length.
  double bound = std::ldexp(1.0, fmt.word_length - 1);
  raw_t raw;
  if (rounded >= bound) {
    raw = fmt.raw_max();
    bump(sat);
  } else if (rounded < -bound) {
    raw = fmt.raw_min();
    bump(sat);
  } else {
    raw = static_cast<raw_t>(rounded);
  }
  return {raw, fmt};
}

double dequantize(const FixedValue& v) {
  return std::ldexp(static_cast<double>(v.raw), -v.format.fraction_length);
}

FixedValue fx_mul(const FixedValue& a, const FixedValue& b) {
  FixedFormat out{a.format.word_length + b.format.word_length,
                  a.format.fraction_length + b.format.fraction_length};
  if (out.word_length > FixedFormat::kMaxWordLength) {
    throw std::invalid_argument("fx_mul: product exceeds 128-bit storage");
  }
  return {a.raw * b.raw, out};
}

FixedValue fx_add_sat(const FixedValue& a, const FixedValue& b,
                      const FixedFormat& out, SatCounter* sat) {
  require_valid(out, "fx_add_sat");
  if (a.format.fraction_length != b.format.fraction_length ||
      a.format.fraction_length != out.fraction_length) {
    throw std::invalid_argument("fx_add_sat: operands must share the output fraction length");
  }
  raw_t sum;
  if (__builtin_add_overflow(a.raw, b.raw, &sum)) {
    bump(sat);
    return {a.raw < 0 ? out.raw_min() : out.raw_max(), out};
  }
  return {clamp_to(sum, out, sat), out};
}

FixedValue fx_rescale(const FixedValue& v, const FixedFormat& out, SatCounter* sat) {
  require_valid(out, "fx_rescale");
  int shift = v.format.fraction_length - out.fraction_length;
  raw_t raw;
  if (shift > 0) {
    raw = shift_right_rne(v.raw, shift);
  } else if (shift < 0) {
    int up = -shift;
    if (up >= FixedFormat::kMaxWordLength - 1 ||
        __builtin_mul_overflow(v.raw, raw_t(1) << up, &raw)) {
      if (v.raw == 0) return {0, out};
      bump(sat);
      return {v.raw < 0 ? out.raw_min() : out.raw_max(), out};
    }
  } else {
    raw = v.raw;
  }
  return {clamp_to(raw, out, sat), out};
}

int max_fan_in(int max_inputs, int max_neurons_largest_layer) {
  if (max_inputs < 1 || max_neurons_largest_layer < 1) {
    throw std::invalid_argument("max_fan_in: arguments must be >= 1");
  }
  return std::max(max_inputs, max_neurons_largest_layer);
}

int accumulator_bits(int fan_in, int value_bits, int weight_bits) {
  if (fan_in < 1) throw std::invalid_argument("accumulator_bits: fan_in must be >= 1");
  if (value_bits < 2 || value_bits > 64 || weight_bits < 2 || weight_bits > 64) {
    throw std::invalid_argument("accumulator_bits: operand widths must be in [2, 64]");
  }

  // P = n_c * (2^(n_z-1)-1) * (2^(n_w-1)-1), up to ~2^157: tracked in two
  // 64-bit limbs so ceil(log2(P)) stays exact.
  uraw_t vw = (uraw_t(1) << (value_bits - 1)) - 1;
  uraw_t ww = (uraw_t(1) << (weight_bits - 1)) - 1;
  uraw_t prod = vw * ww;  // < 2^126
  uraw_t nc = static_cast<uraw_t>(fan_in);
  uraw_t lo_part = nc * static_cast<std::uint64_t>(prod);
  uraw_t hi_part = nc * static_cast<std::uint64_t>(prod >> 64) + (lo_part >> 64);
  std::uint64_t lo = static_cast<std::uint64_t>(lo_part);

  // ceil(log2(P)) = bit_width(P - 1); P >= 1 always here.
  uraw_t hi_m1 = hi_part;
  std::uint64_t lo_m1;
  if (lo == 0) {
    hi_m1 = hi_part - 1;  // borrow; hi_part > 0 whenever lo == 0 and P > 1
    lo_m1 = ~std::uint64_t{0};
    if (hi_part == 0) {
      return 1;  // P == 0 cannot occur; P == 1 gives ceil(log2) == 0
    }
  } else {
    lo_m1 = lo - 1;
  }
  int ceil_log2 = (hi_m1 != 0) ? 64 + bit_width_u128(hi_m1) : bit_width_u128(lo_m1);
  return ceil_log2 + 1;
}

AccumulatorSpec AccumulatorSpec::sized_for(int fan_in, const FixedFormat& value_fmt,
                                           const FixedFormat& weight_fmt) {
  require_valid(value_fmt, "AccumulatorSpec");
  require_valid(weight_fmt, "AccumulatorSpec");
  int formula = accumulator_bits(fan_in, value_fmt.word_length, weight_fmt.word_length);
  int fl = value_fmt.fraction_length + weight_fmt.fraction_length;
  int bits = std::max({formula, value_fmt.word_length, weight_fmt.word_length, fl + 1});
  if (bits > FixedFormat::kMaxWordLength) {
    throw std::invalid_argument("AccumulatorSpec: accumulator exceeds 128-bit storage");
  }
  return {fan_in, bits};
}

FixedFormat AccumulatorSpec::format(const FixedFormat& value_fmt,
                                    const FixedFormat& weight_fmt) const {
  return {bits, value_fmt.fraction_length + weight_fmt.fraction_length};
}

FixedFormat named_format(std::string_view name) {
  if (name == "fp32") return {32, 16};
  if (name == "fp16") return {16, 8};
  if (name == "fp8") return {8, 4};
  throw std::invalid_argument("named_format: unknown format '" + std::string(name) +
                              "' (expected fp32, fp16, or fp8)");
}

}  // namespace lstmforge

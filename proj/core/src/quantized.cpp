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

#include "lstmforge/quantized.hpp"

#include <stdexcept>
#include <string>

namespace lstmforge {
namespace {

std::vector<std::int64_t> quantize_raster(std::span<const double> values,
                                          const FixedFormat& fmt, SatCounter* sat) {
  std::vector<std::int64_t> raw(values.size());
  for (std::size_t k = 0; k < values.size(); ++k) {
    raw[k] = static_cast<std::int64_t>(quantize(values[k], fmt, sat).raw);
  }
  return raw;
}

// Saturating accumulate with event counting; bounds are the accumulator
// format's raw range.
struct MacAccumulator {
  raw_t lo, hi;
  std::uint64_t* events;

  raw_t add(raw_t acc, raw_t term) const {
    raw_t sum;
    if (__builtin_add_overflow(acc, term, &sum)) {
      ++*events;
      return acc < 0 ? lo : hi;
    }
    if (sum < lo) {
      ++*events;
      return lo;
    }
    if (sum > hi) {
      ++*events;
      return hi;
    }
    return sum;
  }
};

}  // namespace

QuantizedNetwork quantize_network(const NetworkSpec& net, const FixedFormat& value_fmt,
                                  const FixedFormat& weight_fmt,
                                  std::optional<int> accumulator_bits_override) {
  net.validate();
  if (!value_fmt.valid() || !weight_fmt.valid()) {
    throw std::invalid_argument("quantize_network: invalid tensor format");
  }

  auto acc_spec = AccumulatorSpec::sized_for(net.max_concat_fan_in(), value_fmt, weight_fmt);
  if (accumulator_bits_override) {
    if (*accumulator_bits_override < acc_spec.bits) {
      throw std::invalid_argument("quantize_network: accumulator override " +
                                  std::to_string(*accumulator_bits_override) +
                                  " is below the overflow-free width " +
                                  std::to_string(acc_spec.bits));
    }
    if (*accumulator_bits_override > FixedFormat::kMaxWordLength) {
      throw std::invalid_argument("quantize_network: accumulator override exceeds 128 bits");
    }
    acc_spec.bits = *accumulator_bits_override;
  }
  FixedFormat acc_fmt = acc_spec.format(value_fmt, weight_fmt);

  QuantizedNetwork q;
  q.formats = {value_fmt, weight_fmt, acc_fmt, acc_spec};
  q.input_window = net.input_window;

  SatCounter weight_sat;
  for (const auto& layer : net.layers) {
    QuantizedLayer ql;
    ql.input_size = layer.input_size;
    ql.hidden_size = layer.hidden_size;
    for (int g = 0; g < kNumGates; ++g) {
      ql.gates[g].wx = quantize_raster(layer.gates[g].wx, weight_fmt, &weight_sat);
      ql.gates[g].wh = quantize_raster(layer.gates[g].wh, weight_fmt, &weight_sat);
      ql.gates[g].b.reserve(layer.gates[g].b.size());
      for (double b : layer.gates[g].b) {
        ql.gates[g].b.push_back(quantize(b, acc_fmt, &weight_sat).raw);
      }
    }
    q.layers.push_back(std::move(ql));
  }
  if (net.readout) {
    QuantizedReadout r;
    r.w = quantize_raster(net.readout->w, weight_fmt, &weight_sat);
    r.b = quantize(net.readout->b, acc_fmt, &weight_sat).raw;
    q.readout = std::move(r);
  }
  q.saturated_weights = weight_sat.events;
  return q;
}

std::vector<double> forward_fixed(const QuantizedNetwork& qnet,
                                  std::span<const std::vector<double>> features,
                                  const ActivationSettings& activation,
                                  FixedRunStats* stats) {
  if (qnet.layers.empty()) throw std::invalid_argument("forward_fixed: no layers");
  if (!qnet.readout) throw std::invalid_argument("forward_fixed: network has no readout stage");

  FixedRunStats local;
  FixedRunStats& st = stats != nullptr ? *stats : local;

  const FixedFormat& vfmt = qnet.formats.value;
  const FixedFormat& afmt = qnet.formats.accumulator;
  // One guard bit over the value format for the element-wise sums.
  const FixedFormat guard_fmt{vfmt.word_length + 1, vfmt.fraction_length};

  ActivationEngine engine(activation, vfmt);
  MacAccumulator mac{afmt.raw_min(), afmt.raw_max(), &st.mac};

  std::vector<std::vector<std::int64_t>> h_raw, c_raw;
  for (const auto& layer : qnet.layers) {
    h_raw.emplace_back(layer.hidden_size, 0);
    c_raw.emplace_back(layer.hidden_size, 0);
  }

  SatCounter input_sat{0}, rescale_sat{0}, evo_sat{0};
  std::vector<std::int64_t> x_raw;
  std::vector<std::int64_t> gate_act[kNumGates];
  std::vector<double> out;
  out.reserve(features.size());

  for (const auto& x : features) {
    if (static_cast<int>(x.size()) != qnet.layers.front().input_size) {
      throw std::invalid_argument("forward_fixed: feature length does not match input size");
    }
    x_raw.resize(x.size());
    for (std::size_t k = 0; k < x.size(); ++k) {
      x_raw[k] = static_cast<std::int64_t>(quantize(x[k], vfmt, &input_sat).raw);
    }

    const std::vector<std::int64_t>* input = &x_raw;
    for (std::size_t l = 0; l < qnet.layers.size(); ++l) {
      const auto& layer = qnet.layers[l];
      const int I = layer.input_size;
      const int H = layer.hidden_size;

      // MVO: full-width accumulation over the concatenated [x ; h] operand,
      // then one re-scale to the value format ahead of the activation.
      for (int g = 0; g < kNumGates; ++g) {
        const auto& gate = layer.gates[g];
        gate_act[g].resize(H);
        for (int r = 0; r < H; ++r) {
          raw_t acc = gate.b[r];
          const std::int64_t* wx_row = gate.wx.data() + static_cast<std::size_t>(r) * I;
          for (int k = 0; k < I; ++k) {
            acc = mac.add(acc, static_cast<raw_t>(wx_row[k]) * (*input)[k]);
          }
          const std::int64_t* wh_row = gate.wh.data() + static_cast<std::size_t>(r) * H;
          for (int k = 0; k < H; ++k) {
            acc = mac.add(acc, static_cast<raw_t>(wh_row[k]) * h_raw[l][k]);
          }
          FixedValue pre = fx_rescale({acc, afmt}, vfmt, &rescale_sat);
          FixedValue act = (g == kGateModulation) ? engine.tanh(pre) : engine.sigmoid(pre);
          gate_act[g][r] = static_cast<std::int64_t>(act.raw);
        }
      }

      // EVO: c' = f.c + i.u and h' = o.tanh(c') at the value format with one
      // guard bit on the sum.
      for (int r = 0; r < H; ++r) {
        FixedValue f{gate_act[kGateForget][r], vfmt};
        FixedValue i{gate_act[kGateInput][r], vfmt};
        FixedValue u{gate_act[kGateModulation][r], vfmt};
        FixedValue o{gate_act[kGateOutput][r], vfmt};
        FixedValue c_prev{c_raw[l][r], vfmt};

        FixedValue fc = fx_rescale(fx_mul(f, c_prev), guard_fmt, &evo_sat);
        FixedValue iu = fx_rescale(fx_mul(i, u), guard_fmt, &evo_sat);
        FixedValue c_next = fx_rescale(fx_add_sat(fc, iu, guard_fmt, &evo_sat), vfmt, &evo_sat);
        c_raw[l][r] = static_cast<std::int64_t>(c_next.raw);

        FixedValue th = engine.tanh(c_next);
        FixedValue h_next = fx_rescale(fx_mul(o, th), vfmt, &evo_sat);
        h_raw[l][r] = static_cast<std::int64_t>(h_next.raw);
      }
      input = &h_raw[l];
    }

    // Readout is one more MAC chain at the accumulator width.
    const auto& ro = *qnet.readout;
    raw_t acc = ro.b;
    const auto& h_last = h_raw.back();
    for (std::size_t k = 0; k < ro.w.size(); ++k) {
      acc = mac.add(acc, static_cast<raw_t>(ro.w[k]) * h_last[k]);
    }
    out.push_back(dequantize(fx_rescale({acc, afmt}, vfmt, &rescale_sat)));
  }

  st.input += input_sat.events;
  st.rescale += rescale_sat.events;
  st.evo += evo_sat.events;
  return out;
}

}  // namespace lstmforge

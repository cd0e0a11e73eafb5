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

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "lstmforge/accel.hpp"
#include "lstmforge/demo.hpp"
#include "lstmforge/dse.hpp"
#include "lstmforge/io.hpp"
#include "lstmforge/network.hpp"
#include "lstmforge/quantized.hpp"

namespace {

using nlohmann::json;
using namespace lstmforge;

// Exit codes: 0 success, 1 usage, 2 input parse, 3 I/O.
constexpr int kExitUsage = 1;
constexpr int kExitParse = 2;
constexpr int kExitIo = 3;

struct PrecisionArgs {
  std::string precision = "fp16";
  std::optional<int> value_fl;
  std::optional<int> weight_fl;
  std::optional<int> accumulator_bits;

  void attach(CLI::App* cmd, bool allow_reference) {
    std::string help = allow_reference
                           ? "fp64-reference, fp32, fp16, or fp8"
                           : "fp32, fp16, or fp8";
    cmd->add_option("--precision", precision, help)->capture_default_str();
    cmd->add_option("--zfl", value_fl, "fraction length override for inputs/states");
    cmd->add_option("--wfl", weight_fl, "fraction length override for weights");
    cmd->add_option("--ns", accumulator_bits, "accumulator width override (bits)");
  }

  [[nodiscard]] bool is_reference() const { return precision == "fp64-reference"; }

  [[nodiscard]] FixedFormat value_format() const {
    FixedFormat f = named_format(precision);
    if (value_fl) f.fraction_length = *value_fl;
    if (!f.valid()) throw std::invalid_argument("invalid --zfl for " + precision);
    return f;
  }
  [[nodiscard]] FixedFormat weight_format() const {
    FixedFormat f = named_format(precision);
    if (weight_fl) f.fraction_length = *weight_fl;
    if (!f.valid()) throw std::invalid_argument("invalid --wfl for " + precision);
    return f;
  }
};

struct ActivationArgs {
  std::string mode = "exact";
  std::vector<double> sigmoid_range;
  std::vector<double> tanh_range;

  void attach(CLI::App* cmd) {
    cmd->add_option("--activation", mode, "activation realization: exact or lut")
        ->check(CLI::IsMember({"exact", "lut"}))
        ->capture_default_str();
    cmd->add_option("--sigmoid-range", sigmoid_range,
                    "sigmoid LUT sampling: LO HI STEP")
        ->expected(3);
    cmd->add_option("--tanh-range", tanh_range, "tanh LUT sampling: LO HI STEP")
        ->expected(3);
  }

  [[nodiscard]] ActivationSettings settings() const {
    ActivationSettings a;
    a.mode = mode == "lut" ? ActivationMode::lut : ActivationMode::exact;
    if (sigmoid_range.size() == 3) {
      a.sigmoid_lo = sigmoid_range[0];
      a.sigmoid_hi = sigmoid_range[1];
      a.sigmoid_step = sigmoid_range[2];
    }
    if (tanh_range.size() == 3) {
      a.tanh_lo = tanh_range[0];
      a.tanh_hi = tanh_range[1];
      a.tanh_step = tanh_range[2];
    }
    return a;
  }
};

json report_to_json(const SimReport& r, const AccelConfig& cfg) {
  json j;
  j["platform"] = cfg.platform.name;
  j["style"] = std::string(style_name(cfg.style));
  j["ws_z"] = cfg.value_format.word_length;
  j["ws_w"] = cfg.weight_format.word_length;
  j["U"] = cfg.unit_parallelism;
  j["lanes"] = cfg.pipelined_lanes;
  j["f_mhz"] = cfg.clock_mhz;
  j["cycles"] = r.cycles;
  j["latency_us"] = r.latency_us;
  j["ops"] = r.ops;
  j["gops"] = r.gops;
  j["gops_per_lut"] = r.normalized.per_mega_lut;
  j["gops_per_dsp"] =
      r.normalized.per_kilo_dsp ? json(*r.normalized.per_kilo_dsp) : json(nullptr);
  j["resources"] = {{"lut", r.resources.lut},
                    {"ff", r.resources.ff},
                    {"bram36k", r.resources.bram36k},
                    {"dsp", r.resources.dsp},
                    {"dsp_mac", r.resources.dsp_mac}};
  j["utilization"] = {{"lut_pct", r.utilization.lut_pct},
                      {"ff_pct", r.utilization.ff_pct},
                      {"bram_pct", r.utilization.bram_pct},
                      {"dsp_pct", r.utilization.dsp_pct}};
  j["fits"] = r.fits;
  return j;
}

int cmd_gen_demo(const std::filesystem::path& net_path,
                 const std::filesystem::path& signal_path, std::size_t samples,
                 std::uint64_t seed) {
  save_network_json(make_demo_network(seed), net_path);
  save_signal_csv(make_demo_signal(samples), signal_path);
  std::cout << "wrote " << net_path.string() << " and " << signal_path.string() << " ("
            << samples << " samples, seed " << seed << ")\n";
  return 0;
}

int cmd_quantize(const std::filesystem::path& weights, const PrecisionArgs& precision) {
  NetworkSpec net = load_network_json(weights);
  QuantizedNetwork q = quantize_network(net, precision.value_format(),
                                        precision.weight_format(),
                                        precision.accumulator_bits);
  json j;
  j["value_format"] = {{"ws", q.formats.value.word_length},
                       {"fl", q.formats.value.fraction_length}};
  j["weight_format"] = {{"ws", q.formats.weight.word_length},
                        {"fl", q.formats.weight.fraction_length}};
  j["accumulator"] = {{"bits", q.formats.acc_spec.bits},
                      {"fl", q.formats.accumulator.fraction_length},
                      {"fan_in", q.formats.acc_spec.fan_in}};
  j["saturated_weights"] = q.saturated_weights;
  j["layers"] = json::array();
  for (const auto& layer : q.layers) {
    j["layers"].push_back(
        {{"input_size", layer.input_size}, {"hidden_size", layer.hidden_size}});
  }
  std::cout << j.dump(2) << '\n';
  return 0;
}

int cmd_infer(const std::filesystem::path& weights, const std::filesystem::path& signal_path,
              const PrecisionArgs& precision, const ActivationArgs& activation,
              const std::optional<std::filesystem::path>& output, bool against_reference,
              int window_override) {
  NetworkSpec net = load_network_json(weights);
  if (window_override > 0) net.input_window = window_override;
  std::vector<double> signal = load_signal_csv(signal_path);
  if (signal.empty()) throw ParseError("infer: signal '" + signal_path.string() + "' is empty");
  auto features = windowed_features(signal, net.input_window);

  json summary;
  summary["samples"] = signal.size();
  summary["precision"] = precision.precision;

  std::vector<double> predictions;
  if (precision.is_reference()) {
    predictions = forward(net, features);
  } else {
    QuantizedNetwork q = quantize_network(net, precision.value_format(),
                                          precision.weight_format(),
                                          precision.accumulator_bits);
    FixedRunStats stats;
    predictions = forward_fixed(q, features, activation.settings(), &stats);
    summary["activation"] = activation.mode;
    summary["saturated_weights"] = q.saturated_weights;
    summary["saturations"] = {{"input", stats.input},
                              {"mac", stats.mac},
                              {"rescale", stats.rescale},
                              {"evo", stats.evo}};
  }
  if (against_reference) {
    std::vector<double> reference = forward(net, features);
    double snr = snr_db(reference, predictions);
    summary["snr_db"] = std::isinf(snr) ? json(nullptr) : json(snr);
    if (std::isinf(snr)) summary["snr_db_exact_match"] = true;
  }

  std::string body = "# one prediction per input sample\n";
  for (double y : predictions) {
    body += json(y).dump();
    body += '\n';
  }
  if (output) {
    std::ofstream out(*output);
    if (!out) throw IoError("infer: cannot open '" + output->string() + "' for writing");
    out << body;
    if (!out) throw IoError("infer: write to '" + output->string() + "' failed");
    std::cout << summary.dump(2) << '\n';
  } else {
    std::cout << body;
    std::cerr << summary.dump(2) << '\n';
  }
  return 0;
}

int cmd_simulate(const std::filesystem::path& weights, const std::string& style,
                 int units, int lanes, double freq, const std::string& platform,
                 const std::optional<std::filesystem::path>& platform_file,
                 const PrecisionArgs& precision,
                 const std::optional<std::filesystem::path>& calibration) {
  NetworkSpec net = load_network_json(weights);

  AccelConfig cfg;
  cfg.style = parse_style(style);
  cfg.unit_parallelism = units;
  cfg.pipelined_lanes = lanes;
  cfg.clock_mhz = freq;
  cfg.platform = platform_file ? load_platform_json(*platform_file)
                               : builtin_platform(platform);
  cfg.value_format = precision.value_format();
  cfg.weight_format = precision.weight_format();
  if (calibration) {
    CalibrationFile cal = load_calibration_json(*calibration);
    cfg.calibration = cal.table;
    if (cal.overheads) cfg.overheads = *cal.overheads;
  }

  SimReport report = simulate_network(net, cfg);
  std::cout << report_to_json(report, cfg).dump(2) << '\n';
  return 0;  // fits=false is data, not an error
}

unsigned sweep_thread_cap() {
  const char* env = std::getenv("LSTM_FORGE_THREADS");
  if (env == nullptr || *env == '\0') return 0;
  long v = std::strtol(env, nullptr, 10);
  return v > 0 ? static_cast<unsigned>(v) : 1;
}

int cmd_sweep(const std::filesystem::path& config_path, bool pareto_only_flag) {
  SweepFileConfig cfg = load_sweep_config(config_path);
  auto resolve = [&](const std::filesystem::path& p) {
    return p.is_relative() ? config_path.parent_path() / p : p;
  };

  NetworkSpec net = load_network_json(resolve(cfg.weights));
  std::optional<std::vector<double>> signal;
  if (cfg.signal) signal = load_signal_csv(resolve(*cfg.signal));

  auto rows = run_sweep(net, signal ? &*signal : nullptr, cfg.grid, sweep_thread_cap());
  auto front = pareto_front(rows);

  bool pareto_only = pareto_only_flag || cfg.pareto_only;
  emit_report(pareto_only ? front : rows, cfg.format, resolve(cfg.output));
  std::cout << "wrote " << resolve(cfg.output).string() << ": " << rows.size()
            << " rows, pareto front " << front.size() << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"fixed-point LSTM inference engine and accelerator performance model"};
  app.require_subcommand(1);

  // gen-demo
  auto* gen = app.add_subcommand("gen-demo", "emit a seeded demo network and sine signal");
  std::filesystem::path gen_net = "demo_net.json";
  std::filesystem::path gen_signal = "demo_signal.csv";
  std::size_t gen_samples = 1000;
  std::uint64_t gen_seed = 42;
  gen->add_option("--net", gen_net, "output weight file")->capture_default_str();
  gen->add_option("--signal", gen_signal, "output signal file")->capture_default_str();
  gen->add_option("--samples", gen_samples, "signal length")->capture_default_str();
  gen->add_option("--seed", gen_seed, "random seed")->capture_default_str();

  // quantize
  auto* quant = app.add_subcommand("quantize", "quantize a network and report the formats");
  std::filesystem::path quant_weights;
  PrecisionArgs quant_precision;
  quant->add_option("weights", quant_weights, "weight file (JSON)")->required();
  quant_precision.attach(quant, false);

  // infer
  auto* infer = app.add_subcommand("infer", "run inference over a signal");
  std::filesystem::path infer_weights, infer_signal;
  std::optional<std::filesystem::path> infer_output;
  PrecisionArgs infer_precision;
  ActivationArgs infer_activation;
  bool infer_reference = false;
  int infer_window = 0;
  infer->add_option("--weights", infer_weights, "weight file (JSON)")->required();
  infer->add_option("--signal", infer_signal, "signal file (CSV)")->required();
  infer->add_option("-o,--output", infer_output, "predictions file (default: stdout)");
  infer_precision.attach(infer, true);
  infer_activation.attach(infer);
  infer->add_flag("--reference", infer_reference,
                  "also run the double-precision path and report SNR");
  infer->add_option("--window", infer_window, "input window override");

  // simulate
  auto* sim = app.add_subcommand("simulate", "run the cycle/resource model once");
  std::filesystem::path sim_weights;
  std::string sim_style = "unit-parallel";
  int sim_units = 1;
  int sim_lanes = 1;
  double sim_freq = 250.0;
  std::string sim_platform = "u55c";
  std::optional<std::filesystem::path> sim_platform_file, sim_calibration;
  PrecisionArgs sim_precision;
  sim->add_option("--weights", sim_weights, "weight file (JSON)")->required();
  sim->add_option("--style", sim_style, "pipelined or unit-parallel")->capture_default_str();
  sim->add_option("-U,--unit-parallelism", sim_units, "hidden units in parallel per gate")
      ->capture_default_str();
  sim->add_option("--lanes", sim_lanes, "pipelined unroll factor")->capture_default_str();
  sim->add_option("--freq", sim_freq, "clock in MHz")->capture_default_str();
  sim->add_option("--platform", sim_platform, "vc707, zcu104, or u55c")->capture_default_str();
  sim->add_option("--platform-file", sim_platform_file, "platform preset JSON");
  sim->add_option("--calibration", sim_calibration, "calibration JSON");
  sim_precision.attach(sim, false);

  // sweep
  auto* sweep = app.add_subcommand("sweep", "run a design-space sweep from a config file");
  std::filesystem::path sweep_config;
  bool sweep_pareto_only = false;
  sweep->add_option("config", sweep_config, "sweep config JSON")->required();
  sweep->add_flag("--pareto-only", sweep_pareto_only, "emit only the Pareto front");

  try {
    app.parse(argc, argv);
    if (gen->parsed()) return cmd_gen_demo(gen_net, gen_signal, gen_samples, gen_seed);
    if (quant->parsed()) return cmd_quantize(quant_weights, quant_precision);
    if (infer->parsed()) {
      return cmd_infer(infer_weights, infer_signal, infer_precision, infer_activation,
                       infer_output, infer_reference, infer_window);
    }
    if (sim->parsed()) {
      return cmd_simulate(sim_weights, sim_style, sim_units, sim_lanes, sim_freq,
                          sim_platform, sim_platform_file, sim_precision, sim_calibration);
    }
    if (sweep->parsed()) return cmd_sweep(sweep_config, sweep_pareto_only);
    std::cerr << app.help();
    return kExitUsage;
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitParse;
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitIo;
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  }
}

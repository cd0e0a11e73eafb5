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

#include "lstmforge/io.hpp"

#include <fstream>
#include <string>

#include <json.hpp>

namespace lstmforge {
namespace {

using nlohmann::json;

json read_json_file(const std::filesystem::path& path, const char* what) {
  std::ifstream in(path);
  if (!in) throw IoError(std::string(what) + ": cannot open '" + path.string() + "'");
  try {
    json j;
    in >> j;
    return j;
  } catch (const json::exception& e) {
    throw ParseError(std::string(what) + ": '" + path.string() + "': " + e.what());
  }
}

void write_text_file(const std::filesystem::path& path, const std::string& text,
                     const char* what) {
  std::ofstream out(path);
  if (!out) throw IoError(std::string(what) + ": cannot open '" + path.string() + "' for writing");
  out << text;
  if (!out) throw IoError(std::string(what) + ": write to '" + path.string() + "' failed");
}

std::vector<double> parse_matrix(const json& j, const std::string& ctx) {
  if (!j.is_array()) throw ParseError(ctx + ": expected an array of rows");
  std::vector<double> flat;
  std::size_t cols = 0;
  for (std::size_t r = 0; r < j.size(); ++r) {
    const auto& row = j[r];
    if (!row.is_array()) throw ParseError(ctx + " row " + std::to_string(r) + ": expected array");
    if (r == 0) {
      cols = row.size();
    } else if (row.size() != cols) {
      throw ParseError(ctx + " row " + std::to_string(r) + ": ragged matrix");
    }
    for (const auto& v : row) flat.push_back(v.get<double>());
  }
  return flat;
}

json dump_matrix(std::span<const double> flat, int rows, int cols) {
  json m = json::array();
  for (int r = 0; r < rows; ++r) {
    json row = json::array();
    for (int c = 0; c < cols; ++c) row.push_back(flat[static_cast<std::size_t>(r) * cols + c]);
    m.push_back(std::move(row));
  }
  return m;
}

ScheduleOverheads parse_overheads(const json& j) {
  ScheduleOverheads o;
  o.pipeline_fill = j.value("pipeline_fill", o.pipeline_fill);
  o.activation_latency = j.value("activation_latency", o.activation_latency);
  o.evo_depth = j.value("evo_depth", o.evo_depth);
  o.layer_handoff = j.value("layer_handoff", o.layer_handoff);
  o.control = j.value("control", o.control);
  return o;
}

FixedFormat parse_format(const json& j, const std::string& ctx) {
  if (j.is_string()) return named_format(j.get<std::string>());
  if (!j.is_object() || !j.contains("ws")) {
    throw ParseError(ctx + ": format must be a name or {\"ws\":..,\"fl\":..}");
  }
  int ws = j.at("ws").get<int>();
  FixedFormat fmt{ws, j.value("fl", ws / 2)};
  if (!fmt.valid() || ws > 64) {
    throw ParseError(ctx + ": tensor formats must have 2 <= ws <= 64 and 0 <= fl < ws");
  }
  return fmt;
}

}  // namespace

NetworkSpec load_network_json(const std::filesystem::path& path) {
  json j = read_json_file(path, "load_network_json");
  const std::string ctx = "weight file '" + path.string() + "'";
  try {
    NetworkSpec net;
    if (!j.contains("layers")) throw ParseError(ctx + ": missing \"layers\"");
    for (std::size_t l = 0; l < j["layers"].size(); ++l) {
      const auto& jl = j["layers"][l];
      const std::string lctx = ctx + " layer " + std::to_string(l);
      LayerParams layer;
      layer.input_size = jl.at("input_size").get<int>();
      layer.hidden_size = jl.at("hidden_size").get<int>();
      const auto& gates = jl.at("gates");
      for (int g = 0; g < kNumGates; ++g) {
        if (!gates.contains(kGateNames[g])) {
          throw ParseError(lctx + ": missing gate \"" + kGateNames[g] + "\"");
        }
        const auto& jg = gates[kGateNames[g]];
        layer.gates[g].wx = parse_matrix(jg.at("wx"), lctx + " wx");
        layer.gates[g].wh = parse_matrix(jg.at("wh"), lctx + " wh");
        layer.gates[g].b = jg.at("b").get<std::vector<double>>();
      }
      net.layers.push_back(std::move(layer));
    }
    if (j.contains("readout") && !j["readout"].is_null()) {
      Readout r;
      r.w = j["readout"].at("w").get<std::vector<double>>();
      r.b = j["readout"].at("b").get<double>();
      net.readout = std::move(r);
    }
    net.validate();
    return net;
  } catch (const json::exception& e) {
    throw ParseError(ctx + ": " + e.what());
  } catch (const std::invalid_argument& e) {
    throw ParseError(ctx + ": " + e.what());
  }
}

void save_network_json(const NetworkSpec& net, const std::filesystem::path& path) {
  net.validate();
  json j;
  j["layers"] = json::array();
  for (const auto& layer : net.layers) {
    json jl;
    jl["input_size"] = layer.input_size;
    jl["hidden_size"] = layer.hidden_size;
    json gates;
    for (int g = 0; g < kNumGates; ++g) {
      json jg;
      jg["wx"] = dump_matrix(layer.gates[g].wx, layer.hidden_size, layer.input_size);
      jg["wh"] = dump_matrix(layer.gates[g].wh, layer.hidden_size, layer.hidden_size);
      jg["b"] = layer.gates[g].b;
      gates[kGateNames[g]] = std::move(jg);
    }
    jl["gates"] = std::move(gates);
    j["layers"].push_back(std::move(jl));
  }
  if (net.readout) {
    j["readout"] = json{{"w", net.readout->w}, {"b", net.readout->b}};
  }
  write_text_file(path, j.dump(2) + "\n", "save_network_json");
}

std::vector<double> load_signal_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("load_signal_csv: cannot open '" + path.string() + "'");
  std::vector<double> signal;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line[0] == '#') continue;
    try {
      std::size_t used = 0;
      double v = std::stod(line, &used);
      while (used < line.size() && (line[used] == ' ' || line[used] == '\r')) ++used;
      if (used != line.size()) throw std::invalid_argument("trailing characters");
      signal.push_back(v);
    } catch (const std::exception&) {
      throw ParseError("load_signal_csv: '" + path.string() + "' line " +
                       std::to_string(line_no) + ": not a real number: '" + line + "'");
    }
  }
  return signal;
}

void save_signal_csv(std::span<const double> signal, const std::filesystem::path& path) {
  std::string text = "# one sample per line\n";
  for (double v : signal) {
    text += json(v).dump();
    text += '\n';
  }
  write_text_file(path, text, "save_signal_csv");
}

PlatformBudget load_platform_json(const std::filesystem::path& path) {
  json j = read_json_file(path, "load_platform_json");
  try {
    PlatformBudget b;
    b.name = j.at("name").get<std::string>();
    b.lut = j.at("lut").get<std::int64_t>();
    b.ff = j.at("ff").get<std::int64_t>();
    b.bram36k = j.at("bram36k").get<double>();
    b.dsp = j.at("dsp").get<std::int64_t>();
    b.fmax_mhz = j.at("fmax_mhz").get<double>();
    if (b.lut <= 0 || b.ff <= 0 || b.bram36k <= 0.0 || b.dsp <= 0) {
      throw ParseError("load_platform_json: '" + path.string() + "': totals must be positive");
    }
    return b;
  } catch (const json::exception& e) {
    throw ParseError("load_platform_json: '" + path.string() + "': " + e.what());
  }
}

CalibrationFile load_calibration_json(const std::filesystem::path& path) {
  json j = read_json_file(path, "load_calibration_json");
  const std::string ctx = "calibration file '" + path.string() + "'";
  try {
    CalibrationFile file;
    file.table = CalibrationTable::defaults();
    if (j.contains("overheads")) file.overheads = parse_overheads(j["overheads"]);
    if (j.contains("precisions")) {
      for (const auto& [key, jp] : j["precisions"].items()) {
        int width = std::stoi(key);
        PrecisionCalibration cal = file.table.lookup(width);
        if (jp.contains("pipelined")) {
          const auto& p = jp["pipelined"];
          cal.pipelined.dsp_mac = p.value("dsp_mac", cal.pipelined.dsp_mac);
          cal.pipelined.dsp_act = p.value("dsp_act", cal.pipelined.dsp_act);
          cal.pipelined.lut = p.value("lut", cal.pipelined.lut);
          cal.pipelined.ff = p.value("ff", cal.pipelined.ff);
          cal.pipelined.bram36k = p.value("bram36k", cal.pipelined.bram36k);
        }
        if (jp.contains("unit_parallel")) {
          const auto& u = jp["unit_parallel"];
          auto& c = cal.unit_parallel;
          c.dsp_per_mac_lane = u.value("dsp_per_mac_lane", c.dsp_per_mac_lane);
          c.act_dsp_per_unit = u.value("act_dsp_per_unit", c.act_dsp_per_unit);
          c.evo_dsp_per_unit = u.value("evo_dsp_per_unit", c.evo_dsp_per_unit);
          c.lut_per_lane = u.value("lut_per_lane", c.lut_per_lane);
          c.ff_per_lane = u.value("ff_per_lane", c.ff_per_lane);
          c.bram_per_unit = u.value("bram_per_unit", c.bram_per_unit);
          c.lut_base = u.value("lut_base", c.lut_base);
          c.ff_base = u.value("ff_base", c.ff_base);
        }
        file.table.by_width[width] = cal;
      }
    }
    return file;
  } catch (const json::exception& e) {
    throw ParseError(ctx + ": " + e.what());
  } catch (const std::exception& e) {
    throw ParseError(ctx + ": " + e.what());
  }
}

SweepFileConfig load_sweep_config(const std::filesystem::path& path) {
  json j = read_json_file(path, "load_sweep_config");
  const std::string ctx = "sweep config '" + path.string() + "'";
  try {
    SweepFileConfig cfg;
    cfg.weights = j.at("weights").get<std::string>();
    if (j.contains("signal") && !j["signal"].is_null()) {
      cfg.signal = std::filesystem::path(j["signal"].get<std::string>());
    }

    for (const auto& jp : j.at("platforms")) {
      if (jp.is_string()) {
        cfg.grid.platforms.push_back(builtin_platform(jp.get<std::string>()));
      } else {
        PlatformBudget b;
        b.name = jp.at("name").get<std::string>();
        b.lut = jp.at("lut").get<std::int64_t>();
        b.ff = jp.at("ff").get<std::int64_t>();
        b.bram36k = jp.at("bram36k").get<double>();
        b.dsp = jp.at("dsp").get<std::int64_t>();
        b.fmax_mhz = jp.at("fmax_mhz").get<double>();
        cfg.grid.platforms.push_back(std::move(b));
      }
    }
    if (j.contains("styles")) {
      for (const auto& js : j["styles"]) cfg.grid.styles.push_back(parse_style(js.get<std::string>()));
    } else {
      cfg.grid.styles = {DesignStyle::unit_parallel};
    }
    for (const auto& jp : j.at("precisions")) {
      PrecisionPoint p;
      if (jp.is_string()) {
        p.name = jp.get<std::string>();
        p.value_format = named_format(p.name);
        p.weight_format = p.value_format;
      } else {
        p.name = jp.value("name", std::string("custom"));
        p.value_format = parse_format(jp.at("value"), ctx + " precision value");
        p.weight_format = jp.contains("weight")
                              ? parse_format(jp["weight"], ctx + " precision weight")
                              : p.value_format;
      }
      cfg.grid.precisions.push_back(std::move(p));
    }
    cfg.grid.unit_parallelism = j.at("unit_parallelism").get<std::vector<int>>();
    if (j.contains("clock_mhz") && !j["clock_mhz"].is_null()) {
      cfg.grid.clock_mhz = j["clock_mhz"].get<double>();
    }

    if (j.contains("activation")) {
      const auto& ja = j["activation"];
      auto& a = cfg.grid.activation;
      std::string mode = ja.value("mode", std::string("exact"));
      if (mode == "exact") {
        a.mode = ActivationMode::exact;
      } else if (mode == "lut") {
        a.mode = ActivationMode::lut;
      } else {
        throw ParseError(ctx + ": activation.mode must be \"exact\" or \"lut\"");
      }
      if (ja.contains("sigmoid")) {
        a.sigmoid_lo = ja["sigmoid"].value("lo", a.sigmoid_lo);
        a.sigmoid_hi = ja["sigmoid"].value("hi", a.sigmoid_hi);
        a.sigmoid_step = ja["sigmoid"].value("step", a.sigmoid_step);
      }
      if (ja.contains("tanh")) {
        a.tanh_lo = ja["tanh"].value("lo", a.tanh_lo);
        a.tanh_hi = ja["tanh"].value("hi", a.tanh_hi);
        a.tanh_step = ja["tanh"].value("step", a.tanh_step);
      }
    }

    if (j.contains("overheads")) cfg.grid.overheads = parse_overheads(j["overheads"]);
    if (j.contains("calibration") && !j["calibration"].is_null()) {
      std::filesystem::path cal_path = j["calibration"].get<std::string>();
      if (cal_path.is_relative()) cal_path = path.parent_path() / cal_path;
      CalibrationFile cal = load_calibration_json(cal_path);
      cfg.grid.calibration = cal.table;
      if (cal.overheads) cfg.grid.overheads = *cal.overheads;
    }

    if (j.contains("output")) {
      cfg.output = std::filesystem::path(j["output"].at("path").get<std::string>());
      cfg.format = parse_report_format(j["output"].value("format", std::string("csv")));
    }
    cfg.pareto_only = j.value("pareto_only", false);
    return cfg;
  } catch (const json::exception& e) {
    throw ParseError(ctx + ": " + e.what());
  } catch (const std::invalid_argument& e) {
    throw ParseError(ctx + ": " + e.what());
  }
}

}  // namespace lstmforge

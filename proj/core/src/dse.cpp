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

#include "lstmforge/dse.hpp"

#include <algorithm>
#include <atomic>
#include <fstream>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "lstmforge/io.hpp"
#include "lstmforge/quantized.hpp"

namespace lstmforge {
namespace {

using nlohmann::json;

// Shortest-round-trip decimal text for a double; keeps reports byte-stable
// and reparseable without loss.
std::string number_text(double v) { return json(v).dump(); }

void evaluate_point(const NetworkSpec& net,
                    const std::vector<std::vector<double>>* features,
                    const std::vector<double>* reference, const SweepGrid& grid,
                    const PrecisionPoint& precision, const PlatformBudget& platform,
                    SweepRow& row) {
  try {
    QuantizedNetwork qnet =
        quantize_network(net, precision.value_format, precision.weight_format);
    if (features != nullptr && reference != nullptr) {
      std::vector<double> estimate = forward_fixed(qnet, *features, grid.activation);
      row.snr_db = snr_db(*reference, estimate);
    }

    AccelConfig cfg;
    cfg.style = row.style;
    cfg.unit_parallelism = row.units;
    cfg.value_format = precision.value_format;
    cfg.weight_format = precision.weight_format;
    cfg.clock_mhz = row.f_mhz;
    cfg.platform = platform;
    cfg.overheads = grid.overheads;
    cfg.calibration = grid.calibration;
    row.report = simulate_network(net, cfg);
  } catch (const std::exception& e) {
    row.report.reset();
    row.snr_db.reset();
    row.error = e.what();
  }
}

}  // namespace

std::vector<SweepRow> run_sweep(const NetworkSpec& net, const std::vector<double>* signal,
                                const SweepGrid& grid, unsigned max_threads) {
  if (grid.platforms.empty() || grid.styles.empty() || grid.precisions.empty() ||
      grid.unit_parallelism.empty()) {
    throw std::invalid_argument("run_sweep: every grid axis must be non-empty");
  }
  net.validate();

  // The double-precision reference is shared by every grid point.
  std::vector<std::vector<double>> features;
  std::vector<double> reference;
  if (signal != nullptr) {
    features = windowed_features(*signal, net.input_window);
    reference = forward(net, features);
  }

  std::vector<SweepRow> rows;
  std::vector<std::pair<const PrecisionPoint*, const PlatformBudget*>> point_inputs;
  for (const auto& platform : grid.platforms) {
    for (DesignStyle style : grid.styles) {
      for (const auto& precision : grid.precisions) {
        for (int units : grid.unit_parallelism) {
          SweepRow row;
          row.platform = platform.name;
          row.style = style;
          row.ws_z = precision.value_format.word_length;
          row.ws_w = precision.weight_format.word_length;
          row.units = units;
          row.f_mhz = grid.clock_mhz.value_or(platform.fmax_mhz);
          rows.push_back(std::move(row));
          point_inputs.emplace_back(&precision, &platform);
        }
      }
    }
  }

  unsigned wanted = max_threads != 0 ? max_threads : std::thread::hardware_concurrency();
  unsigned n_threads = std::clamp<unsigned>(wanted, 1, static_cast<unsigned>(rows.size()));

  const std::vector<std::vector<double>>* features_ptr =
      signal != nullptr ? &features : nullptr;
  const std::vector<double>* reference_ptr = signal != nullptr ? &reference : nullptr;

  auto evaluate_index = [&](std::size_t k) {
    evaluate_point(net, features_ptr, reference_ptr, grid, *point_inputs[k].first,
                   *point_inputs[k].second, rows[k]);
  };

  if (n_threads <= 1) {
    for (std::size_t k = 0; k < rows.size(); ++k) evaluate_index(k);
    return rows;
  }

  std::atomic<std::size_t> next{0};
  std::vector<std::thread> workers;
  workers.reserve(n_threads);
  for (unsigned t = 0; t < n_threads; ++t) {
    workers.emplace_back([&]() {
      for (std::size_t k = next.fetch_add(1); k < rows.size(); k = next.fetch_add(1)) {
        evaluate_index(k);
      }
    });
  }
  for (auto& w : workers) w.join();
  return rows;
}

std::vector<SweepRow> pareto_front(const std::vector<SweepRow>& rows) {
  if (rows.empty()) throw std::invalid_argument("pareto_front: no rows");

  bool use_snr = true;
  for (const auto& row : rows) {
    if (row.report && !row.snr_db) use_snr = false;
  }

  auto dominates = [use_snr](const SweepRow& a, const SweepRow& b) {
    double la = a.report->latency_us, lb = b.report->latency_us;
    auto da = a.report->resources.dsp, db = b.report->resources.dsp;
    bool no_worse = la <= lb && da <= db;
    bool better = la < lb || da < db;
    if (use_snr) {
      no_worse = no_worse && *a.snr_db >= *b.snr_db;
      better = better || *a.snr_db > *b.snr_db;
    }
    return no_worse && better;
  };

  std::vector<SweepRow> front;
  for (const auto& candidate : rows) {
    if (!candidate.report) continue;
    bool dominated = false;
    for (const auto& other : rows) {
      if (other.report && dominates(other, candidate)) {
        dominated = true;
        break;
      }
    }
    if (!dominated) front.push_back(candidate);
  }
  return front;
}

ReportFormat parse_report_format(std::string_view name) {
  if (name == "csv") return ReportFormat::csv;
  if (name == "json") return ReportFormat::json;
  throw std::invalid_argument("parse_report_format: expected csv or json");
}

std::string report_csv(const std::vector<SweepRow>& rows) {
  std::ostringstream out;
  out << "platform,style,ws_z,ws_w,U,f_mhz,cycles,latency_us,ops,gops,gops_per_lut,"
         "gops_per_dsp,lut,ff,bram,dsp,fits,snr_db\n";
  for (const auto& row : rows) {
    out << row.platform << ',' << style_name(row.style) << ',' << row.ws_z << ','
        << row.ws_w << ',' << row.units << ',' << number_text(row.f_mhz) << ',';
    if (row.report) {
      const SimReport& r = *row.report;
      out << r.cycles << ',' << number_text(r.latency_us) << ',' << r.ops << ','
          << number_text(r.gops) << ',' << number_text(r.normalized.per_mega_lut) << ',';
      if (r.normalized.per_kilo_dsp) out << number_text(*r.normalized.per_kilo_dsp);
      out << ',' << r.resources.lut << ',' << r.resources.ff << ','
          << number_text(r.resources.bram36k) << ',' << r.resources.dsp << ','
          << (r.fits ? "true" : "false") << ',';
    } else {
      out << ",,,,,,,,,,false,";  // infeasible point: ten empty metric fields
    }
    if (row.snr_db) out << number_text(*row.snr_db);
    out << '\n';
  }
  return out.str();
}

std::string report_json(const std::vector<SweepRow>& rows) {
  json arr = json::array();
  for (const auto& row : rows) {
    json j;
    j["platform"] = row.platform;
    j["style"] = std::string(style_name(row.style));
    j["ws_z"] = row.ws_z;
    j["ws_w"] = row.ws_w;
    j["U"] = row.units;
    j["f_mhz"] = row.f_mhz;
    if (row.report) {
      const SimReport& r = *row.report;
      j["cycles"] = r.cycles;
      j["latency_us"] = r.latency_us;
      j["ops"] = r.ops;
      j["gops"] = r.gops;
      j["gops_per_lut"] = r.normalized.per_mega_lut;
      j["gops_per_dsp"] =
          r.normalized.per_kilo_dsp ? json(*r.normalized.per_kilo_dsp) : json(nullptr);
      j["lut"] = r.resources.lut;
      j["ff"] = r.resources.ff;
      j["bram"] = r.resources.bram36k;
      j["dsp"] = r.resources.dsp;
      j["fits"] = r.fits;
    } else {
      j["fits"] = false;
    }
    j["snr_db"] = row.snr_db ? json(*row.snr_db) : json(nullptr);
    j["error"] = row.error;
    arr.push_back(std::move(j));
  }
  return arr.dump(2) + "\n";
}

void emit_report(const std::vector<SweepRow>& rows, ReportFormat format,
                 const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw IoError("emit_report: cannot open '" + path.string() + "' for writing");
  out << (format == ReportFormat::csv ? report_csv(rows) : report_json(rows));
  if (!out) throw IoError("emit_report: write to '" + path.string() + "' failed");
}

std::vector<SweepRow> parse_report_json(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("parse_report_json: cannot open '" + path.string() + "'");
  json arr;
  try {
    in >> arr;
  } catch (const json::exception& e) {
    throw ParseError("parse_report_json: '" + path.string() + "': " + e.what());
  }
  std::vector<SweepRow> rows;
  for (const auto& j : arr) {
    SweepRow row;
    row.platform = j.at("platform").get<std::string>();
    row.style = parse_style(j.at("style").get<std::string>());
    row.ws_z = j.at("ws_z").get<int>();
    row.ws_w = j.at("ws_w").get<int>();
    row.units = j.at("U").get<int>();
    row.f_mhz = j.at("f_mhz").get<double>();
    row.error = j.value("error", std::string{});
    if (j.contains("cycles")) {
      SimReport r;
      r.cycles = j.at("cycles").get<std::int64_t>();
      r.latency_us = j.at("latency_us").get<double>();
      r.ops = j.at("ops").get<std::int64_t>();
      r.gops = j.at("gops").get<double>();
      r.normalized.per_mega_lut = j.at("gops_per_lut").get<double>();
      if (!j.at("gops_per_dsp").is_null()) {
        r.normalized.per_kilo_dsp = j.at("gops_per_dsp").get<double>();
      }
      r.resources.lut = j.at("lut").get<std::int64_t>();
      r.resources.ff = j.at("ff").get<std::int64_t>();
      r.resources.bram36k = j.at("bram").get<double>();
      r.resources.dsp = j.at("dsp").get<std::int64_t>();
      r.fits = j.at("fits").get<bool>();
      row.report = r;
    }
    if (!j.at("snr_db").is_null()) row.snr_db = j.at("snr_db").get<double>();
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace lstmforge

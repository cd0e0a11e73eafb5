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
//
// Drives the installed-style binary end to end through popen; exercises the
// exit-code contract (0 ok, 1 usage, 2 parse, 3 io) and the file formats.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include <doctest.h>
#include <json.hpp>

#include "lstmforge/demo.hpp"
#include "lstmforge/io.hpp"
#include "lstmforge/network.hpp"

#ifndef LSTMFORGE_CLI_PATH
#error "LSTMFORGE_CLI_PATH must point at the lstmforge binary"
#endif

namespace {

namespace fs = std::filesystem;
using nlohmann::json;
using namespace lstmforge;

struct RunResult {
  int exit_code = -1;
  std::string out;
};

RunResult run(const std::string& args) {
  std::string cmd = std::string(LSTMFORGE_CLI_PATH) + " " + args + " 2>/dev/null";
  FILE* pipe = ::popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  RunResult r;
  char buf[4096];
  std::size_t n;
  while ((n = std::fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, n);
  int status = ::pclose(pipe);
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string read_file(const fs::path& p) {
  std::ifstream in(p);
  REQUIRE(in.good());
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

struct Workspace {
  fs::path dir;
  Workspace() {
    dir = fs::temp_directory_path() / ("lstmforge_cli_" + std::to_string(::getpid()));
    fs::create_directories(dir);
  }
  ~Workspace() { fs::remove_all(dir); }
  [[nodiscard]] std::string p(const std::string& name) const { return (dir / name).string(); }
};

TEST_CASE("gen-demo writes a loadable network and signal") {
  Workspace ws;
  RunResult r = run("gen-demo --net " + ws.p("net.json") + " --signal " + ws.p("sig.csv") +
                    " --samples 200 --seed 42");
  CHECK(r.exit_code == 0);

  NetworkSpec net = load_network_json(ws.p("net.json"));
  CHECK(net.layers.size() == 3);
  CHECK(net.layers[0].input_size == 16);
  CHECK(net.layers[0].hidden_size == 15);
  CHECK(net.readout.has_value());
  CHECK(load_signal_csv(ws.p("sig.csv")).size() == 200);

  // seeded: identical regeneration
  RunResult again = run("gen-demo --net " + ws.p("net2.json") + " --signal " +
                        ws.p("sig2.csv") + " --samples 200 --seed 42");
  CHECK(again.exit_code == 0);
  CHECK(read_file(ws.p("net.json")) == read_file(ws.p("net2.json")));
}

TEST_CASE("infer: reference alias equals the library forward path") {
  Workspace ws;
  REQUIRE(run("gen-demo --net " + ws.p("net.json") + " --signal " + ws.p("sig.csv") +
              " --samples 120")
              .exit_code == 0);
  RunResult r = run("infer --weights " + ws.p("net.json") + " --signal " + ws.p("sig.csv") +
                    " --precision fp64-reference -o " + ws.p("pred.csv"));
  CHECK(r.exit_code == 0);

  NetworkSpec net = load_network_json(ws.p("net.json"));
  auto signal = load_signal_csv(ws.p("sig.csv"));
  auto want = forward(net, windowed_features(signal, net.input_window));
  auto got = load_signal_csv(ws.p("pred.csv"));  // same one-value-per-line format
  REQUIRE(got.size() == want.size());
  for (std::size_t k = 0; k < got.size(); ++k) {
    CHECK(got[k] == doctest::Approx(want[k]).epsilon(1e-12));
  }
}

TEST_CASE("infer: fp16 against the reference reports SNR >= 40 dB") {
  Workspace ws;
  REQUIRE(run("gen-demo --net " + ws.p("net.json") + " --signal " + ws.p("sig.csv")).exit_code ==
          0);
  RunResult r = run("infer --weights " + ws.p("net.json") + " --signal " + ws.p("sig.csv") +
                    " --precision fp16 --reference -o " + ws.p("pred.csv"));
  REQUIRE(r.exit_code == 0);
  json summary = json::parse(r.out);
  REQUIRE(summary.contains("snr_db"));
  CHECK(summary["snr_db"].get<double>() >= 40.0);
  CHECK(summary["saturations"]["mac"].get<int>() == 0);
}

TEST_CASE("infer: zero-weight network emits the constant readout bias") {
  Workspace ws;
  NetworkSpec net;
  LayerParams layer;
  layer.input_size = 4;
  layer.hidden_size = 2;
  for (int g = 0; g < kNumGates; ++g) {
    layer.gates[g].wx.assign(8, 0.0);
    layer.gates[g].wh.assign(4, 0.0);
    layer.gates[g].b.assign(2, 0.0);
  }
  net.layers.push_back(layer);
  net.readout = Readout{{0.0, 0.0}, 0.75};
  net.input_window = 4;
  save_network_json(net, ws.p("zero.json"));
  save_signal_csv(make_demo_signal(50), ws.p("sig.csv"));

  RunResult r = run("infer --weights " + ws.p("zero.json") + " --signal " + ws.p("sig.csv") +
                    " --precision fp16 --window 4 -o " + ws.p("pred.csv"));
  REQUIRE(r.exit_code == 0);
  for (double y : load_signal_csv(ws.p("pred.csv"))) CHECK(y == 0.75);
}

TEST_CASE("simulate: headline configuration and the frequency identity") {
  Workspace ws;
  REQUIRE(run("gen-demo --net " + ws.p("net.json") + " --signal " + ws.p("sig.csv") +
              " --samples 64")
              .exit_code == 0);

  RunResult r = run("simulate --weights " + ws.p("net.json") +
                    " --style unit-parallel -U 15 --freq 250 --platform u55c");
  REQUIRE(r.exit_code == 0);
  json report = json::parse(r.out);
  double latency = report["latency_us"].get<double>();
  CHECK(latency >= 0.71);   // within a factor of two of 1.42 us
  CHECK(latency <= 2.84);
  CHECK(report["fits"].get<bool>());

  RunResult slow = run("simulate --weights " + ws.p("net.json") +
                       " --style unit-parallel -U 15 --freq 125 --platform u55c");
  REQUIRE(slow.exit_code == 0);
  json slow_report = json::parse(slow.out);
  CHECK(slow_report["latency_us"].get<double>() == doctest::Approx(2.0 * latency));
}

TEST_CASE("simulate: budget overrun still exits zero, verdict is data") {
  Workspace ws;
  REQUIRE(run("gen-demo --net " + ws.p("net.json") + " --signal " + ws.p("s.csv")).exit_code == 0);
  RunResult r = run("simulate --weights " + ws.p("net.json") +
                    " --style unit-parallel -U 15 --freq 200 --platform zcu104 "
                    "--precision fp32");
  REQUIRE(r.exit_code == 0);
  json report = json::parse(r.out);
  CHECK_FALSE(report["fits"].get<bool>());
}

TEST_CASE("simulate: U beyond the hidden size is a usage error") {
  Workspace ws;
  REQUIRE(run("gen-demo --net " + ws.p("net.json") + " --signal " + ws.p("s.csv")).exit_code == 0);
  RunResult r = run("simulate --weights " + ws.p("net.json") +
                    " --style unit-parallel -U 16 --freq 250 --platform u55c");
  CHECK(r.exit_code == 1);
}

TEST_CASE("exit codes: parse failures are 2, missing files are 3, bad flags 1") {
  Workspace ws;
  std::ofstream(ws.p("garbage.json")) << "{ definitely not json";
  std::ofstream(ws.p("sig.csv")) << "0.0\n";
  CHECK(run("infer --weights " + ws.p("garbage.json") + " --signal " + ws.p("sig.csv"))
            .exit_code == 2);
  CHECK(run("infer --weights " + ws.p("nosuch.json") + " --signal " + ws.p("sig.csv"))
            .exit_code == 3);
  CHECK(run("simulate --no-such-flag").exit_code == 1);
  CHECK(run("bogus-subcommand").exit_code == 1);
}

TEST_CASE("sweep: demo config, determinism, and pareto filtering") {
  Workspace ws;
  REQUIRE(run("gen-demo --net " + ws.p("net.json") + " --signal " + ws.p("sig.csv") +
              " --samples 150")
              .exit_code == 0);
  json cfg = {
      {"weights", "net.json"},
      {"signal", "sig.csv"},
      {"platforms", {"u55c"}},
      {"styles", {"unit-parallel"}},
      {"precisions", {"fp32", "fp16", "fp8"}},
      {"unit_parallelism", {1, 2, 15}},
      {"clock_mhz", 250},
      {"output", {{"path", "report.csv"}, {"format", "csv"}}},
  };
  std::ofstream(ws.p("sweep.json")) << cfg.dump(2);

  RunResult r = run("sweep " + ws.p("sweep.json"));
  REQUIRE(r.exit_code == 0);
  CHECK(r.out.find("9 rows") != std::string::npos);

  std::string first = read_file(ws.p("report.csv"));
  CHECK(std::count(first.begin(), first.end(), '\n') == 10);  // header + 9 rows

  // reruns are byte-identical
  REQUIRE(run("sweep " + ws.p("sweep.json")).exit_code == 0);
  CHECK(read_file(ws.p("report.csv")) == first);

  // pareto-only emits a subset
  RunResult pr = run("sweep " + ws.p("sweep.json") + " --pareto-only");
  REQUIRE(pr.exit_code == 0);
  std::string pareto = read_file(ws.p("report.csv"));
  CHECK(std::count(pareto.begin(), pareto.end(), '\n') <= 10);
  CHECK(pareto.substr(0, pareto.find('\n')) == first.substr(0, first.find('\n')));
}

TEST_CASE("quantize reports the derived accumulator width") {
  Workspace ws;
  REQUIRE(run("gen-demo --net " + ws.p("net.json") + " --signal " + ws.p("s.csv")).exit_code == 0);
  RunResult r = run("quantize " + ws.p("net.json") + " --precision fp16");
  REQUIRE(r.exit_code == 0);
  json report = json::parse(r.out);
  CHECK(report["accumulator"]["fan_in"].get<int>() == 31);
  CHECK(report["accumulator"]["bits"].get<int>() == 36);
  CHECK(report["saturated_weights"].get<int>() == 0);
}

}  // namespace

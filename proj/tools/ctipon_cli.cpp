// Copyright 2026 The ctipon Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// ctipon: batch runs, CTI/SR comparisons and the live control server.

#include <csignal>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "ctipon/harness/compare.hpp"
#include "ctipon/harness/live.hpp"
#include "ctipon/harness/scenario.hpp"
#include "ctipon/harness/simulation.hpp"
#include "ctipon/telemetry/metrics.hpp"

namespace {

using namespace ctipon;

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitRuntime = 3;

class OutputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

void WriteFile(std::filesystem::path const& path, std::string const& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw OutputError("cannot write " + path.string());
  out << text;
  if (!out.flush()) throw OutputError("cannot write " + path.string());
}

void PrintSummary(telemetry::RunReport const& r) {
  auto us = [](auto v) -> std::string {
    if (!v) return "-";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3f", static_cast<double>(*v) / 1000.0);
    return buf;
  };
  auto const& a = r.aggregate;
  std::cerr << "mode=" << r.mode << " samples=" << a.samples()
            << " queue_delay_us mean=" << us(a.queue_delay.mean) << " p99=" << us(a.queue_delay.p99)
            << " max=" << us(a.queue_delay.max) << " util=" << a.utilization
            << " cti_msgs=" << a.cti_msgs << " violations=" << r.bwmap_violations << "\n";
}

struct RunArgs {
  std::string scenario;
  std::string mode;
  std::string out;
  std::string windows_csv;
  std::string windows_jsonl;
  std::string bwmap_trace;
  bool strict = false;
};

int DoRun(RunArgs const& args) {
  harness::ScenarioConfig cfg = harness::LoadScenario(args.scenario);
  pon::DbaMode mode = args.mode.empty() ? cfg.mode : pon::ParseDbaMode(args.mode);

  harness::SimulationOptions opts;
  opts.strict = args.strict;
  std::ofstream trace;
  if (!args.bwmap_trace.empty()) {
    trace.open(args.bwmap_trace, std::ios::binary | std::ios::trunc);
    if (!trace) throw OutputError("cannot write " + args.bwmap_trace);
    opts.bwmap_trace = &trace;
  }
  telemetry::RunReport report = harness::RunScenario(cfg, mode, opts);
  if (args.out.empty()) {
    std::cout << telemetry::ToJson(report);
  } else {
    WriteFile(args.out, telemetry::ToJson(report));
  }
  if (!args.windows_csv.empty()) {
    WriteFile(args.windows_csv, telemetry::Export(report, telemetry::ExportFormat::kCsv));
  }
  if (!args.windows_jsonl.empty()) {
    WriteFile(args.windows_jsonl, telemetry::Export(report, telemetry::ExportFormat::kJsonLines));
  }
  PrintSummary(report);
  return kExitOk;
}

int DoCompare(std::string const& scenario, std::string const& out_dir) {
  harness::ScenarioConfig cfg = harness::LoadScenario(scenario);
  harness::ComparisonReport cmp = harness::Compare(cfg);
  if (out_dir.empty()) {
    std::cout << harness::ToJson(cmp);
  } else {
    std::filesystem::path dir(out_dir);
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) throw OutputError("cannot create " + out_dir + ": " + ec.message());
    WriteFile(dir / "comparison.json", harness::ToJson(cmp));
    WriteFile(dir / "cti.json", telemetry::ToJson(cmp.cooperative));
    WriteFile(dir / "sr.json", telemetry::ToJson(cmp.status_report));
    WriteFile(dir / "cti_windows.csv",
              telemetry::Export(cmp.cooperative, telemetry::ExportFormat::kCsv));
    WriteFile(dir / "sr_windows.csv",
              telemetry::Export(cmp.status_report, telemetry::ExportFormat::kCsv));
  }
  PrintSummary(cmp.cooperative);
  PrintSummary(cmp.status_report);
  if (auto const* m = cmp.Find("mean_queue_delay_ns"); m && m->ratio) {
    std::cerr << "mean queue_delay ratio sr/cti = " << *m->ratio << "\n";
  }
  return kExitOk;
}

int DoServe(std::string const& scenario, std::optional<int> port, std::optional<double> pace,
            std::optional<int> cti_udp) {
  harness::ScenarioConfig cfg = harness::LoadScenario(scenario);
  std::uint16_t p = port ? static_cast<std::uint16_t>(*port) : cfg.live.port;
  double r = pace ? *pace : cfg.live.pace;
  std::uint16_t udp = cti_udp ? static_cast<std::uint16_t>(*cti_udp) : cfg.live.cti_udp_port;
  if (!(r >= 0.0)) throw harness::ConfigError({"--pace: must be >= 0"});

  // Block termination signals before any thread starts so sigwait sees them.
  sigset_t set;
  sigemptyset(&set);
  sigaddset(&set, SIGINT);
  sigaddset(&set, SIGTERM);
  pthread_sigmask(SIG_BLOCK, &set, nullptr);

  harness::LiveServer server(cfg, p, r, udp);
  server.Start();
  std::cerr << "serving " << cfg.name << " on port " << server.port() << " (pace " << r << ")\n";
  int sig = 0;
  sigwait(&set, &sig);
  server.Stop();
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Cooperative vs status-report PON DBA simulator for 7.2 fronthaul"};
  app.require_subcommand(1);

  RunArgs run_args;
  auto* run = app.add_subcommand("run", "Run one scenario in one DBA mode");
  run->add_option("scenario", run_args.scenario, "Scenario YAML file")->required();
  run->add_option("--mode", run_args.mode, "DBA mode (default: the scenario's)")
      ->check(CLI::IsMember({"cti", "sr"}));
  run->add_option("--out", run_args.out, "Write the JSON report here instead of stdout");
  run->add_option("--windows-csv", run_args.windows_csv, "Export per-window metrics as CSV");
  run->add_option("--windows-jsonl", run_args.windows_jsonl,
                  "Export per-window metrics as JSON lines");
  run->add_option("--bwmap-trace", run_args.bwmap_trace, "Write every BwMap as CSV");
  run->add_flag("--strict", run_args.strict, "Exit with status 3 on the first invalid BwMap");

  std::string cmp_scenario, cmp_out;
  auto* cmp = app.add_subcommand("compare", "Run both DBA modes with the same seed");
  cmp->add_option("scenario", cmp_scenario, "Scenario YAML file")->required();
  cmp->add_option("--out", cmp_out, "Directory for comparison.json, per-mode reports and CSVs");

  std::string serve_scenario;
  std::optional<int> serve_port;
  std::optional<double> serve_pace;
  std::optional<int> serve_udp;
  auto* serve = app.add_subcommand("serve", "Live mode: paced simulation with a control port");
  serve->add_option("scenario", serve_scenario, "Scenario YAML file")->required();
  serve->add_option("--port", serve_port, "TCP port (0 picks a free one)")
      ->check(CLI::Range(0, 65535));
  serve->add_option("--pace", serve_pace, "Sim seconds per wall second; 0 runs unpaced");
  serve->add_option("--cti-udp", serve_udp, "Mirror encoded CTI reports to this local UDP port")
      ->check(CLI::Range(0, 65535));

  app.add_subcommand("explain-config", "Print every scenario key with its default");

  std::string validate_scenario;
  auto* validate = app.add_subcommand("validate", "Check a scenario file and print its hash");
  validate->add_option("scenario", validate_scenario, "Scenario YAML file")->required();

  try {
    app.parse(argc, argv);
  } catch (CLI::CallForHelp const& e) {
    return app.exit(e);
  } catch (CLI::CallForAllHelp const& e) {
    return app.exit(e);
  } catch (CLI::ParseError const& e) {
    app.exit(e);
    return kExitConfig;
  }

  try {
    if (*run) return DoRun(run_args);
    if (*cmp) return DoCompare(cmp_scenario, cmp_out);
    if (*serve) return DoServe(serve_scenario, serve_port, serve_pace, serve_udp);
    if (app.got_subcommand("explain-config")) {
      std::cout << harness::ExplainConfig();
      return kExitOk;
    }
    if (*validate) {
      auto cfg = harness::LoadScenario(validate_scenario);
      std::cout << "ok " << cfg.name << " " << harness::ScenarioHash(cfg) << "\n";
      return kExitOk;
    }
  } catch (harness::ConfigError const& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  } catch (harness::BwMapViolationError const& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitRuntime;
  } catch (harness::PortBusyError const& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitRuntime;
  } catch (std::exception const& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitRuntime;
  }
  return kExitConfig;
}

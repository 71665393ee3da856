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

#ifndef CTIPON_HARNESS_LIVE_HPP_
#define CTIPON_HARNESS_LIVE_HPP_

#include <chrono>
#include <condition_variable>
#include <cstdint>
#include <deque>
#include <functional>
#include <memory>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "ctipon/harness/control.hpp"
#include "ctipon/harness/scenario.hpp"
#include "ctipon/harness/simulation.hpp"
#include "ctipon/telemetry/metrics.hpp"

namespace ctipon::harness {

struct LiveConfig {
  double pace = 1.0;  // 0 = as fast as possible
  std::chrono::milliseconds telemetry_period{100};
  std::size_t cti_frames_per_period = 50;  // rolling log, newest kept
  bool start_paused = false;
  // Called from the simulation thread with each telemetry line.
  std::function<void(std::string const&)> sink;
  std::function<void(std::vector<std::uint8_t> const&)> cti_bytes_sink;
};

/// Runs one Simulation on its own thread, paced to the wall clock.
///
/// Commands go through a mailbox that the simulation thread drains between
/// slot-sized steps, so a command never changes anything at or before the
/// simulated time already reached. The simulation thread never waits on I/O:
/// telemetry is handed to `sink`, which must not block.
class LiveSession {
 public:
  LiveSession(ScenarioConfig cfg, LiveConfig live);
  ~LiveSession();
  LiveSession(LiveSession const&) = delete;
  LiveSession& operator=(LiveSession const&) = delete;

  void Start();
  void Stop();

  /// Blocks until the simulation thread has applied the command.
  Reply Submit(Command const& cmd);

  /// Latest immutable snapshot of the current window.
  std::shared_ptr<telemetry::MetricWindow const> LatestSnapshot() const;
  std::uint64_t generation() const;
  SimTime sim_time() const;

  /// Waits for the current generation to reach its end and returns its report.
  telemetry::RunReport WaitForReport();

 private:
  struct Pending {
    Command cmd;
    std::optional<Reply> reply;
  };

  void Loop();
  void Rebuild();
  Reply Apply(Command const& cmd);
  void Publish(bool force);
  void Emit(std::string line);

  ScenarioConfig cfg_;
  LiveConfig live_;

  mutable std::mutex mu_;
  std::condition_variable cv_;
  std::deque<std::shared_ptr<Pending>> mailbox_;
  std::shared_ptr<telemetry::MetricWindow const> snapshot_;
  std::optional<telemetry::RunReport> report_;
  std::uint64_t generation_ = 0;
  SimTime sim_time_ = 0;
  bool stop_ = false;

  // Simulation-thread state.
  std::unique_ptr<Simulation> sim_;
  bool paused_ = false;
  std::chrono::steady_clock::time_point anchor_wall_;
  SimTime anchor_sim_ = 0;
  std::chrono::steady_clock::time_point next_publish_;
  std::int64_t slip_ns_ = 0;
  std::deque<std::string> cti_log_;
  std::thread thread_;
};

class PortBusyError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Line-delimited JSON over TCP. Every connection may send commands and
/// receives every telemetry frame. Optionally mirrors encoded CTI reports to
/// a local UDP port.
class LiveServer {
 public:
  LiveServer(ScenarioConfig cfg, std::uint16_t port, double pace,
             std::uint16_t cti_udp_port = 0);
  ~LiveServer();
  LiveServer(LiveServer const&) = delete;
  LiveServer& operator=(LiveServer const&) = delete;

  /// Binds and starts the I/O and simulation threads. Throws PortBusyError.
  void Start();
  void Stop();
  /// Actual bound port (useful with port 0).
  std::uint16_t port() const { return port_; }
  LiveSession& session() { return *session_; }

 private:
  struct Client {
    int fd = -1;
    std::string in;
    std::string out;
  };

  void IoLoop();
  void Broadcast(std::string const& line);
  void Wake();

  ScenarioConfig cfg_;
  std::uint16_t port_;
  double pace_;
  std::uint16_t cti_udp_port_;
  int listen_fd_ = -1;
  int wake_[2] = {-1, -1};
  int udp_fd_ = -1;
  std::unique_ptr<LiveSession> session_;
  std::mutex out_mu_;
  std::vector<std::string> outbound_;
  bool stop_ = false;
  std::thread io_;
};

}  // namespace ctipon::harness

#endif  // CTIPON_HARNESS_LIVE_HPP_

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

#include "ctipon/harness/live.hpp"

#include <arpa/inet.h>
#include <fcntl.h>
#include <netinet/in.h>
#include <poll.h>
#include <sys/socket.h>
#include <unistd.h>

#include <algorithm>
#include <cerrno>
#include <cstring>

namespace ctipon::harness {
namespace {

using Clock = std::chrono::steady_clock;

constexpr std::size_t kMaxClientBacklog = 16u << 20;
constexpr std::size_t kMaxLineBytes = 64u << 10;

void SetNonBlocking(int fd) {
  int flags = fcntl(fd, F_GETFL, 0);
  fcntl(fd, F_SETFL, flags | O_NONBLOCK);
}

}  // namespace

// ---------------------------------------------------------------------------
// LiveSession

LiveSession::LiveSession(ScenarioConfig cfg, LiveConfig live)
    : cfg_(std::move(cfg)), live_(std::move(live)) {
  paused_ = live_.start_paused;
}

LiveSession::~LiveSession() { Stop(); }

void LiveSession::Start() {
  Rebuild();
  thread_ = std::thread([this] { Loop(); });
}

void LiveSession::Stop() {
  {
    std::lock_guard lock(mu_);
    stop_ = true;
  }
  cv_.notify_all();
  if (thread_.joinable()) thread_.join();
}

Reply LiveSession::Submit(Command const& cmd) {
  auto p = std::make_shared<Pending>();
  p->cmd = cmd;
  std::unique_lock lock(mu_);
  if (stop_) return Reply{false, 0, "session stopped", cmd.id};
  mailbox_.push_back(p);
  cv_.notify_all();
  cv_.wait(lock, [&] { return p->reply.has_value() || stop_; });
  if (!p->reply) return Reply{false, 0, "session stopped", cmd.id};
  return *p->reply;
}

std::shared_ptr<telemetry::MetricWindow const> LiveSession::LatestSnapshot() const {
  std::lock_guard lock(mu_);
  return snapshot_;
}

std::uint64_t LiveSession::generation() const {
  std::lock_guard lock(mu_);
  return generation_;
}

SimTime LiveSession::sim_time() const {
  std::lock_guard lock(mu_);
  return sim_time_;
}

telemetry::RunReport LiveSession::WaitForReport() {
  std::unique_lock lock(mu_);
  cv_.wait(lock, [&] { return report_.has_value() || stop_; });
  if (!report_) throw std::runtime_error("session stopped before the run finished");
  return *report_;
}

void LiveSession::Emit(std::string line) {
  if (live_.sink) live_.sink(line);
}

void LiveSession::Rebuild() {
  std::uint64_t gen;
  {
    std::lock_guard lock(mu_);
    gen = generation_;
    report_.reset();
    sim_time_ = 0;
  }
  SimulationOptions opts;
  opts.on_window = [this, gen](telemetry::MetricWindow const& w) {
    Emit(WindowFrame(w, false, gen, sim_ ? sim_->now() : 0, slip_ns_));
  };
  opts.on_cti = [this, gen](cti::CtiReport const& r, SimTime at) {
    cti_log_.push_back(CtiFrame(r, at, gen));
    while (cti_log_.size() > live_.cti_frames_per_period) cti_log_.pop_front();
  };
  if (live_.cti_bytes_sink) opts.on_cti_bytes = live_.cti_bytes_sink;
  sim_.reset();
  cti_log_.clear();
  sim_ = std::make_unique<Simulation>(cfg_, cfg_.mode, std::move(opts));
  anchor_wall_ = Clock::now();
  anchor_sim_ = 0;
  slip_ns_ = 0;
  next_publish_ = Clock::now();
  {
    std::lock_guard lock(mu_);
    snapshot_ = std::make_shared<telemetry::MetricWindow const>(sim_->Snapshot());
  }
}

Reply LiveSession::Apply(Command const& cmd) {
  Reply r;
  r.id = cmd.id;
  SimTime const now = sim_->now();
  switch (cmd.kind) {
    case CommandKind::kSetMode:
      if (sim_->done()) {
        r.error = "run has finished; send reset first";
        return r;
      }
      r.effective_at_ns = sim_->RequestMode(cmd.mode);
      break;
    case CommandKind::kSetTrafficScale:
      if (sim_->done()) {
        r.error = "run has finished; send reset first";
        return r;
      }
      try {
        r.effective_at_ns = sim_->RequestTrafficScale(cmd.ue, cmd.scale);
      } catch (std::invalid_argument const& e) {
        r.error = e.what();
        return r;
      }
      break;
    case CommandKind::kPause:
      paused_ = true;
      r.effective_at_ns = now;
      break;
    case CommandKind::kResume:
      paused_ = false;
      anchor_wall_ = Clock::now();
      anchor_sim_ = now;
      r.effective_at_ns = now;
      break;
    case CommandKind::kReset: {
      {
        std::lock_guard lock(mu_);
        ++generation_;
      }
      Rebuild();
      r.effective_at_ns = 0;
      std::uint64_t gen = generation();
      Emit(StatusFrame("reset", gen, 0, pon::ToString(sim_->mode())));
      break;
    }
  }
  r.ok = true;
  return r;
}

void LiveSession::Publish(bool force) {
  auto const wall = Clock::now();
  if (!force && wall < next_publish_) return;
  next_publish_ = wall + live_.telemetry_period;
  auto snap = std::make_shared<telemetry::MetricWindow const>(sim_->Snapshot());
  std::uint64_t gen;
  {
    std::lock_guard lock(mu_);
    snapshot_ = snap;
    gen = generation_;
  }
  Emit(WindowFrame(*snap, true, gen, sim_->now(), slip_ns_));
  for (auto& line : cti_log_) Emit(std::move(line));
  cti_log_.clear();
}

void LiveSession::Loop() {
  SimTime const slot = cfg_.slot.slot_duration;
  while (true) {
    std::deque<std::shared_ptr<Pending>> batch;
    {
      std::lock_guard lock(mu_);
      if (stop_) break;
      batch.swap(mailbox_);
    }
    for (auto& p : batch) {
      Reply r = Apply(p->cmd);
      std::lock_guard lock(mu_);
      p->reply = r;
    }
    if (!batch.empty()) cv_.notify_all();

    bool const running = !paused_ && !sim_->done();
    auto deadline = next_publish_;
    if (running) {
      SimTime target = std::min((sim_->now() / slot + 1) * slot, sim_->end());
      sim_->RunUntil(target);
      {
        std::lock_guard lock(mu_);
        sim_time_ = sim_->now();
      }
      if (sim_->done()) {
        telemetry::RunReport report = sim_->Finish();
        Publish(true);
        Emit(StatusFrame("done", generation(), sim_->now(), pon::ToString(sim_->mode())));
        {
          std::lock_guard lock(mu_);
          report_ = std::move(report);
        }
        cv_.notify_all();
      }
      if (live_.pace > 0) {
        auto due = anchor_wall_ + std::chrono::nanoseconds(static_cast<std::int64_t>(
                                      static_cast<double>(sim_->now() - anchor_sim_) / live_.pace));
        auto wall = Clock::now();
        slip_ns_ = wall > due ? std::chrono::duration_cast<std::chrono::nanoseconds>(wall - due)
                                    .count()
                              : 0;
        deadline = std::min(deadline, due);
      } else {
        deadline = Clock::now();
      }
    }
    Publish(false);

    std::unique_lock lock(mu_);
    cv_.wait_until(lock, std::min(deadline, next_publish_),
                   [&] { return stop_ || !mailbox_.empty(); });
  }
}

// ---------------------------------------------------------------------------
// LiveServer

LiveServer::LiveServer(ScenarioConfig cfg, std::uint16_t port, double pace,
                       std::uint16_t cti_udp_port)
    : cfg_(std::move(cfg)), port_(port), pace_(pace), cti_udp_port_(cti_udp_port) {}

LiveServer::~LiveServer() { Stop(); }

void LiveServer::Start() {
  listen_fd_ = socket(AF_INET, SOCK_STREAM, 0);
  if (listen_fd_ < 0) throw std::runtime_error(std::string("socket: ") + std::strerror(errno));
  int one = 1;
  setsockopt(listen_fd_, SOL_SOCKET, SO_REUSEADDR, &one, sizeof one);
  sockaddr_in addr{};
  addr.sin_family = AF_INET;
  addr.sin_addr.s_addr = htonl(INADDR_ANY);
  addr.sin_port = htons(port_);
  if (bind(listen_fd_, reinterpret_cast<sockaddr*>(&addr), sizeof addr) != 0) {
    int err = errno;
    close(listen_fd_);
    listen_fd_ = -1;
    if (err == EADDRINUSE || err == EACCES) {
      throw PortBusyError("port " + std::to_string(port_) + ": " + std::strerror(err));
    }
    throw std::runtime_error(std::string("bind: ") + std::strerror(err));
  }
  if (listen(listen_fd_, 16) != 0) {
    throw std::runtime_error(std::string("listen: ") + std::strerror(errno));
  }
  socklen_t len = sizeof addr;
  getsockname(listen_fd_, reinterpret_cast<sockaddr*>(&addr), &len);
  port_ = ntohs(addr.sin_port);
  SetNonBlocking(listen_fd_);
  if (pipe(wake_) != 0) throw std::runtime_error("pipe failed");
  SetNonBlocking(wake_[0]);
  SetNonBlocking(wake_[1]);

  LiveConfig live;
  live.pace = pace_;
  live.sink = [this](std::string const& line) { Broadcast(line); };
  if (cti_udp_port_ != 0) {
    udp_fd_ = socket(AF_INET, SOCK_DGRAM, 0);
    std::uint16_t udp_port = cti_udp_port_;
    live.cti_bytes_sink = [this, udp_port](std::vector<std::uint8_t> const& bytes) {
      sockaddr_in to{};
      to.sin_family = AF_INET;
      to.sin_addr.s_addr = htonl(INADDR_LOOPBACK);
      to.sin_port = htons(udp_port);
      // Best effort; the simulation thread must not block on it.
      sendto(udp_fd_, bytes.data(), bytes.size(), MSG_DONTWAIT,
             reinterpret_cast<sockaddr const*>(&to), sizeof to);
    };
  }
  session_ = std::make_unique<LiveSession>(cfg_, std::move(live));
  io_ = std::thread([this] { IoLoop(); });
  session_->Start();
}

void LiveServer::Stop() {
  if (session_) session_->Stop();
  {
    std::lock_guard lock(out_mu_);
    stop_ = true;
  }
  Wake();
  if (io_.joinable()) io_.join();
  for (int* fd : {&listen_fd_, &wake_[0], &wake_[1], &udp_fd_}) {
    if (*fd >= 0) close(*fd);
    *fd = -1;
  }
}

void LiveServer::Wake() {
  if (wake_[1] < 0) return;
  char b = 1;
  [[maybe_unused]] auto n = write(wake_[1], &b, 1);
}

void LiveServer::Broadcast(std::string const& line) {
  {
    std::lock_guard lock(out_mu_);
    outbound_.push_back(line);
  }
  Wake();
}

void LiveServer::IoLoop() {
  std::vector<Client> clients;
  auto flush = [](Client& c) {
    while (!c.out.empty()) {
      ssize_t n = send(c.fd, c.out.data(), c.out.size(), MSG_NOSIGNAL);
      if (n > 0) {
        c.out.erase(0, static_cast<std::size_t>(n));
        continue;
      }
      if (n < 0 && (errno == EAGAIN || errno == EWOULDBLOCK || errno == EINTR)) return true;
      return false;
    }
    return true;
  };

  while (true) {
    std::vector<std::string> lines;
    {
      std::lock_guard lock(out_mu_);
      if (stop_) break;
      lines.swap(outbound_);
    }
    for (auto& c : clients) {
      for (auto const& l : lines) {
        c.out += l;
        c.out.push_back('\n');
      }
    }

    std::vector<pollfd> fds;
    fds.push_back({listen_fd_, POLLIN, 0});
    fds.push_back({wake_[0], POLLIN, 0});
    for (auto const& c : clients) {
      short ev = POLLIN;
      if (!c.out.empty()) ev |= POLLOUT;
      fds.push_back({c.fd, ev, 0});
    }
    if (poll(fds.data(), fds.size(), 200) < 0 && errno != EINTR) break;

    if (fds[1].revents & POLLIN) {
      char buf[256];
      while (read(wake_[0], buf, sizeof buf) > 0) {
      }
    }
    if (fds[0].revents & POLLIN) {
      while (true) {
        int fd = accept(listen_fd_, nullptr, nullptr);
        if (fd < 0) break;
        SetNonBlocking(fd);
        Client c;
        c.fd = fd;
        auto snap = session_->LatestSnapshot();
        if (snap) {
          c.out = StatusFrame("connected", session_->generation(), session_->sim_time(),
                              snap->mode) +
                  "\n";
        }
        clients.push_back(std::move(c));
      }
    }

    std::vector<bool> dead(clients.size(), false);
    for (std::size_t i = 0; i < clients.size(); ++i) {
      Client& c = clients[i];
      short rev = fds[i + 2].revents;
      if (rev & (POLLERR | POLLNVAL)) {
        dead[i] = true;
        continue;
      }
      if (rev & (POLLIN | POLLHUP)) {
        char buf[4096];
        ssize_t n = recv(c.fd, buf, sizeof buf, 0);
        if (n <= 0 && !(n < 0 && (errno == EAGAIN || errno == EINTR))) {
          dead[i] = true;
          continue;
        }
        if (n > 0) c.in.append(buf, static_cast<std::size_t>(n));
        std::size_t nl;
        while ((nl = c.in.find('\n')) != std::string::npos) {
          std::string line = c.in.substr(0, nl);
          c.in.erase(0, nl + 1);
          if (!line.empty() && line.back() == '\r') line.pop_back();
          if (line.empty()) continue;
          Reply reply;
          try {
            reply = session_->Submit(ParseCommand(line));
          } catch (ControlError const& e) {
            reply.ok = false;
            reply.error = e.what();
          }
          c.out += FormatReply(reply);
          c.out.push_back('\n');
        }
        if (c.in.size() > kMaxLineBytes) {
          c.out += FormatReply(Reply{false, 0, "line too long", std::nullopt}) + "\n";
          c.in.clear();
        }
      }
      if (!flush(c) || c.out.size() > kMaxClientBacklog) dead[i] = true;
    }
    for (std::size_t i = clients.size(); i-- > 0;) {
      if (dead[i]) {
        close(clients[i].fd);
        clients.erase(clients.begin() + static_cast<std::ptrdiff_t>(i));
      }
    }
  }
  for (auto& c : clients) close(c.fd);
}

}  // namespace ctipon::harness

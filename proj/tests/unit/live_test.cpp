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

#include <gtest/gtest.h>

#include <arpa/inet.h>
#include <netinet/in.h>
#include <sys/socket.h>
#include <unistd.h>

#include <atomic>
#include <nlohmann/json.hpp>
#include <thread>

#include "ctipon/harness/control.hpp"
#include "ctipon/harness/live.hpp"
#include "ctipon/harness/simulation.hpp"

namespace ctipon::harness {
namespace {

using sim::kMillisecond;
using Json = nlohmann::json;

ScenarioConfig Minimal(SimTime duration) {
  ScenarioConfig c = LoadScenario(std::string(CTIPON_SCENARIO_DIR) + "/minimal.yaml");
  c.duration = duration;
  return c;
}

TEST(Control, ParsesEveryCommand) {
  auto c = ParseCommand(R"({"cmd":"set_mode","mode":"sr","id":"a"})");
  EXPECT_EQ(c.kind, CommandKind::kSetMode);
  EXPECT_EQ(c.mode, pon::DbaMode::kStatusReport);
  EXPECT_EQ(c.id, "a");
  c = ParseCommand(R"({"cmd":"set_traffic_scale","ue":3,"scale":0.5,"id":7})");
  EXPECT_EQ(c.ue, UeId{3});
  EXPECT_DOUBLE_EQ(c.scale, 0.5);
  EXPECT_EQ(c.id, "7");
  c = ParseCommand(R"({"cmd":"set_traffic_scale","ue":"all","scale":0})");
  EXPECT_FALSE(c.ue.has_value());
  EXPECT_EQ(ParseCommand(R"({"cmd":"pause"})").kind, CommandKind::kPause);
  EXPECT_EQ(ParseCommand(R"({"cmd":"resume"})").kind, CommandKind::kResume);
  EXPECT_EQ(ParseCommand(R"({"cmd":"reset"})").kind, CommandKind::kReset);
}

TEST(Control, RejectsBadCommands) {
  for (char const* bad : {"", "not json", "[1]", R"({"mode":"sr"})", R"({"cmd":"launch"})",
                          R"({"cmd":"set_mode"})", R"({"cmd":"set_mode","mode":"fast"})",
                          R"({"cmd":"set_traffic_scale","ue":1})",
                          R"({"cmd":"set_traffic_scale","ue":-1,"scale":1})",
                          R"({"cmd":"set_traffic_scale","ue":"some","scale":1})",
                          R"({"cmd":"set_traffic_scale","ue":1,"scale":-0.5})",
                          R"({"cmd":"pause","id":[1]})"}) {
    EXPECT_THROW(ParseCommand(bad), ControlError) << bad;
  }
}

TEST(Control, ReplyFormat) {
  EXPECT_EQ(Json::parse(FormatReply({true, 125000, "", "x"})),
            Json::parse(R"({"id":"x","ok":true,"effective_at_ns":125000})"));
  EXPECT_EQ(Json::parse(FormatReply({false, 0, "nope", std::nullopt})),
            Json::parse(R"({"ok":false,"error":"nope"})"));
}

TEST(Live, UnpacedRunMatchesBatch) {
  ScenarioConfig c = Minimal(200 * kMillisecond);
  LiveConfig lc;
  lc.pace = 0;
  LiveSession s(c, lc);
  s.Start();
  auto live = s.WaitForReport();
  s.Stop();
  auto batch = RunScenario(c, c.mode);
  EXPECT_EQ(live.aggregate, batch.aggregate);
  EXPECT_EQ(live.windows, batch.windows);
  EXPECT_EQ(live.histogram, batch.histogram);
}

TEST(Live, CommandsAppliedAtBoundaries) {
  ScenarioConfig c = Minimal(400 * kMillisecond);
  LiveConfig lc;
  lc.pace = 0;
  lc.start_paused = true;
  std::atomic<int> lines{0};
  lc.sink = [&](std::string const&) { ++lines; };
  LiveSession s(c, lc);
  s.Start();
  Command mode;
  mode.kind = CommandKind::kSetMode;
  mode.mode = pon::DbaMode::kStatusReport;
  Reply r = s.Submit(mode);
  ASSERT_TRUE(r.ok);
  EXPECT_GT(r.effective_at_ns, s.sim_time());
  EXPECT_EQ(r.effective_at_ns % c.pon.frame_duration, 0);

  // Paused: simulated time stays put while telemetry keeps flowing.
  SimTime frozen = s.sim_time();
  int before = lines.load();
  std::this_thread::sleep_for(std::chrono::milliseconds(350));
  EXPECT_EQ(s.sim_time(), frozen);
  EXPECT_GE(lines.load() - before, 2);

  Command scale;
  scale.kind = CommandKind::kSetTrafficScale;
  scale.ue = 99;
  EXPECT_FALSE(s.Submit(scale).ok);

  Command resume;
  resume.kind = CommandKind::kResume;
  ASSERT_TRUE(s.Submit(resume).ok);
  auto report = s.WaitForReport();
  EXPECT_EQ(report.windows.back().mode, "sr");
  EXPECT_EQ(report.aggregate.mode, "mixed");
  s.Stop();
}

TEST(Live, ResetStartsNewGeneration) {
  ScenarioConfig c = Minimal(100 * kMillisecond);
  LiveConfig lc;
  lc.pace = 0;
  std::mutex mu;
  std::vector<std::string> out;
  lc.sink = [&](std::string const& l) {
    std::lock_guard lock(mu);
    out.push_back(l);
  };
  LiveSession s(c, lc);
  s.Start();
  auto first = s.WaitForReport();
  Command reset;
  reset.kind = CommandKind::kReset;
  ASSERT_TRUE(s.Submit(reset).ok);
  EXPECT_EQ(s.generation(), 1u);
  auto second = s.WaitForReport();
  s.Stop();
  EXPECT_EQ(first.aggregate, second.aggregate);
  std::lock_guard lock(mu);
  bool saw_reset = false;
  for (auto const& l : out) {
    auto j = Json::parse(l);
    if (j["type"] == "status" && j["state"] == "reset") {
      saw_reset = true;
      EXPECT_EQ(j["generation"], 1);
    }
  }
  EXPECT_TRUE(saw_reset);
}

class Client {
 public:
  explicit Client(std::uint16_t port) {
    fd_ = ::socket(AF_INET, SOCK_STREAM, 0);
    sockaddr_in a{};
    a.sin_family = AF_INET;
    a.sin_port = htons(port);
    a.sin_addr.s_addr = htonl(INADDR_LOOPBACK);
    ok_ = ::connect(fd_, reinterpret_cast<sockaddr*>(&a), sizeof a) == 0;
    timeval tv{5, 0};
    ::setsockopt(fd_, SOL_SOCKET, SO_RCVTIMEO, &tv, sizeof tv);
  }
  ~Client() { ::close(fd_); }
  bool ok() const { return ok_; }
  void Send(std::string const& s) { (void)!::write(fd_, s.data(), s.size()); }
  std::optional<std::string> Line() {
    while (true) {
      if (auto nl = buf_.find('\n'); nl != std::string::npos) {
        std::string l = buf_.substr(0, nl);
        buf_.erase(0, nl + 1);
        return l;
      }
      char tmp[4096];
      ssize_t n = ::read(fd_, tmp, sizeof tmp);
      if (n <= 0) return std::nullopt;
      buf_.append(tmp, static_cast<std::size_t>(n));
    }
  }

 private:
  int fd_ = -1;
  bool ok_ = false;
  std::string buf_;
};

TEST(LiveServer, TcpRoundTrip) {
  LiveServer server(Minimal(60'000 * kMillisecond), 0, 1.0);
  server.Start();
  Client cl(server.port());
  ASSERT_TRUE(cl.ok());
  auto hello = cl.Line();
  ASSERT_TRUE(hello);
  EXPECT_EQ(Json::parse(*hello)["state"], "connected");

  cl.Send("{\"cmd\":\"set_mode\",\"mode\":\"sr\",\"id\":\"m1\"}\nnonsense\n");
  bool got_ack = false, got_err = false, got_window = false;
  for (int i = 0; i < 200 && !(got_ack && got_err && got_window); ++i) {
    auto l = cl.Line();
    ASSERT_TRUE(l);
    auto j = Json::parse(*l);
    if (j.contains("ok")) {
      if (j.contains("id") && j["id"] == "m1") {
        EXPECT_TRUE(j["ok"].get<bool>());
        EXPECT_GT(j["effective_at_ns"].get<std::int64_t>(), 0);
        got_ack = true;
      } else {
        EXPECT_FALSE(j["ok"].get<bool>());
        got_err = true;
      }
    } else if (j["type"] == "window") {
      got_window = true;
    }
  }
  EXPECT_TRUE(got_ack);
  EXPECT_TRUE(got_err);
  EXPECT_TRUE(got_window);
  server.Stop();
}

TEST(LiveServer, BusyPortIsReported) {
  LiveServer first(Minimal(kMillisecond * 100), 0, 1.0);
  first.Start();
  LiveServer second(Minimal(kMillisecond * 100), first.port(), 1.0);
  EXPECT_THROW(second.Start(), PortBusyError);
  first.Stop();
}

}  // namespace
}  // namespace ctipon::harness

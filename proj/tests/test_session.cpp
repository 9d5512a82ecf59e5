#include <doctest.h>

#include <thread>

#include "session_probe.hpp"
#include "tfdp/generators.hpp"
#include "tfdp/session.hpp"

using namespace tfdp;
using nlohmann::json;

namespace {

GraphResolver generated() {
  return [](std::string_view name) -> std::optional<Graph> {
    try {
      return generate_graph(name, 0);
    } catch (const std::exception&) {
      return std::nullopt;
    }
  };
}

struct Fixture {
  FrameLog log;
  Session session;
  explicit Fixture(SessionOptions options = {})
      : session("test", generated(), [this](const json& f) { log.push(f); }, options) {}
};

bool is_type(const json& f, const char* type) { return f["type"] == type; }

}  // namespace

TEST_SUITE("session") {
  TEST_CASE("frame queue evicts the oldest droppable frame") {
    FrameQueue q(2);
    q.push({{"k", 1}}, true);
    q.push({{"k", 2}}, false);
    q.push({{"k", 3}}, true);
    q.push({{"k", 4}}, true);
    CHECK(q.dropped() == 1);
    CHECK((*q.pop())["k"] == 2);
    CHECK((*q.pop())["k"] == 3);
    CHECK((*q.pop())["k"] == 4);
    q.close();
    CHECK_FALSE(q.pop());
  }

  TEST_CASE("load then run streams positions and finishes") {
    Fixture fx;
    fx.session.handle(R"({"type":"load_graph","name":"grid:8x8"})");
    fx.session.handle(R"({"type":"run","iterations":50,"solver":"exact"})");
    const int done = fx.log.wait_type("run_done");
    REQUIRE(done >= 0);
    fx.session.wait_idle();
    const auto frames = fx.log.snapshot();
    CHECK(is_type(frames[0], "ack"));
    CHECK(frames[0]["n"] == 64);
    int positions = 0;
    std::uint64_t last = 0;
    for (const auto& f : frames) {
      if (!is_type(f, "positions")) continue;
      ++positions;
      CHECK(f["xy"].size() == 128);
      CHECK(f["generation"].get<std::uint64_t>() > last);
      last = f["generation"];
    }
    CHECK(positions >= 2);
    CHECK(frames[done]["completed"] == true);
    CHECK(frames[done]["iterations"] == 50);
    CHECK(fx.session.status() == RunStatus::Idle);
  }

  TEST_CASE("set_params echoes and applies mid-run") {
    Fixture fx;
    fx.session.handle(R"({"type":"load_graph","name":"path:30"})");
    fx.session.handle(R"({"type":"pause"})");  // nothing to pause yet
    CHECK(fx.log.wait_type("error") >= 0);
    fx.session.handle(R"({"type":"run","iterations":300,"solver":"exact"})");
    fx.session.handle(R"({"type":"set_params","gamma":4})");
    const int ack = fx.log.wait_for([](const json& f) { return f["type"] == "ack" && f["command"] == "set_params"; });
    REQUIRE(ack >= 0);
    CHECK(fx.log.snapshot()[ack]["params"]["gamma"] == 4.0);
    CHECK(fx.session.params().gamma == 4.0);
    fx.session.wait_idle();
  }

  TEST_CASE("a second run is refused while one is active") {
    Fixture fx;
    fx.session.handle(R"({"type":"load_graph","name":"grid:15x15"})");
    fx.session.handle(R"({"type":"run","iterations":200,"solver":"exact"})");
    std::vector<std::thread> injectors;
    for (int i = 0; i < 4; ++i)
      injectors.emplace_back([&] { fx.session.handle(R"({"type":"run","iterations":5})"); });
    for (auto& t : injectors) t.join();
    fx.session.wait_idle();
    REQUIRE(fx.log.wait_type("run_done") >= 0);
    std::this_thread::sleep_for(std::chrono::milliseconds(50));
    const auto frames = fx.log.snapshot();
    int errors = 0, run_acks = 0, done = 0;
    for (const auto& f : frames) {
      if (is_type(f, "error")) ++errors;
      if (is_type(f, "ack") && f["command"] == "run") ++run_acks;
      if (is_type(f, "run_done")) ++done;
    }
    // The run may finish before an injector gets in; every accepted run ends exactly once.
    CHECK(run_acks == done);
    CHECK(run_acks + errors == 5);
  }

  TEST_CASE("pause holds the layout until resume") {
    Fixture fx;
    fx.session.handle(R"({"type":"load_graph","name":"grid:20x20"})");
    fx.session.handle(R"({"type":"run","iterations":300,"solver":"exact"})");
    fx.session.handle(R"({"type":"pause"})");
    REQUIRE(fx.log.wait_for([](const json& f) { return f["type"] == "ack" && f["command"] == "pause"; }) >= 0);
    CHECK(fx.session.status() == RunStatus::Paused);
    // The iteration in flight when the pause arrives still completes.
    std::this_thread::sleep_for(std::chrono::milliseconds(100));
    const auto held = fx.session.generation();
    std::this_thread::sleep_for(std::chrono::milliseconds(100));
    CHECK(fx.session.generation() == held);
    fx.session.handle(R"({"type":"resume"})");
    fx.session.wait_idle();
    CHECK(fx.session.generation() > held);
  }

  TEST_CASE("protocol violations keep the session usable") {
    Fixture fx;
    fx.session.handle("{not json");
    fx.session.handle(R"([1,2])");
    fx.session.handle(R"({"type":"teleport"})");
    fx.session.handle(R"({"type":"run"})");
    fx.session.handle(R"({"type":"load_graph","name":"no-such-graph"})");
    fx.session.handle(R"({"type":"load_graph","name":"star:6"})");
    fx.session.handle(R"({"type":"local_refine","focal":[]})");
    fx.session.handle(R"({"type":"local_refine","focal":[0],"boosts":[1,2]})");
    fx.session.handle(R"({"type":"global_refine","gamma":0.5})");
    fx.session.handle(R"({"type":"set_params","alpha":"x"})");
    fx.session.handle(R"({"type":"get_metrics"})");
    REQUIRE(fx.log.wait_type("metrics") >= 0);
    const auto frames = fx.log.snapshot();
    int errors = 0;
    for (const auto& f : frames)
      if (is_type(f, "error")) {
        ++errors;
        CHECK(f["message"].is_string());
      }
    CHECK(errors == 9);
    CHECK(is_type(frames.back(), "metrics"));
    CHECK(frames.back()["np1"].is_number());
  }

  TEST_CASE("refinements run with increasing generations") {
    Fixture fx;
    fx.session.handle(R"({"type":"load_graph","edges":[[0,1],[1,2],[2,3],[3,0],[0,2]]})");
    fx.session.handle(R"({"type":"run","iterations":50,"solver":"exact"})");
    REQUIRE(fx.log.wait_type("run_done") >= 0);
    fx.session.wait_idle();
    fx.session.handle(R"({"type":"global_refine","rho":2})");
    fx.session.wait_idle();
    fx.session.handle(R"({"type":"local_refine","focal":[1]})");
    fx.session.wait_idle();
    std::this_thread::sleep_for(std::chrono::milliseconds(50));
    const auto frames = fx.log.snapshot();
    std::uint64_t last = 0;
    int done = 0;
    for (const auto& f : frames) {
      if (is_type(f, "positions")) {
        CHECK(f["generation"].get<std::uint64_t>() > last);
        last = f["generation"];
      }
      if (is_type(f, "run_done")) ++done;
      if (is_type(f, "ack") && f["command"] == "local_refine") {
        CHECK(f["boosts"] == json::array({4.0, 2.0, 2.0}));
      }
    }
    CHECK(done == 3);
    CHECK(is_type(frames.back(), "run_done"));
  }

  TEST_CASE("refinement while running restarts the schedule") {
    Fixture fx;
    fx.session.handle(R"({"type":"load_graph","name":"grid:12x12"})");
    fx.session.handle(R"({"type":"run","iterations":100,"solver":"exact"})");
    fx.session.handle(R"({"type":"local_refine","focal":[5,6],"boosts":[4,2,2]})");
    const int done = fx.log.wait_type("run_done");
    REQUIRE(done >= 0);
    const auto frames = fx.log.snapshot();
    CHECK(frames[done]["completed"] == true);
    CHECK(frames[done]["generation"].get<std::uint64_t>() > 100);
  }
}

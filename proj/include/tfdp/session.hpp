#pragma once

#include <condition_variable>
#include <cstddef>
#include <deque>
#include <functional>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <thread>

#include <json.hpp>

#include "tfdp/graph.hpp"
#include "tfdp/runner.hpp"

namespace tfdp {

/// Outgoing frames. Position frames beyond `capacity` evict the oldest queued
/// position frame; every other frame is always delivered.
class FrameQueue {
 public:
  explicit FrameQueue(std::size_t capacity) : capacity_(capacity ? capacity : 1) {}

  void push(nlohmann::json frame, bool droppable);
  /// Blocks until a frame is available; empty once closed and drained.
  std::optional<nlohmann::json> pop();
  void close();
  std::size_t dropped() const;

 private:
  struct Item {
    nlohmann::json frame;
    bool droppable;
  };
  mutable std::mutex mutex_;
  std::condition_variable ready_;
  std::deque<Item> items_;
  std::size_t capacity_;
  std::size_t droppable_count_ = 0;
  std::size_t dropped_ = 0;
  bool closed_ = false;
};

enum class RunStatus { Idle, Running, Paused };
std::string_view to_string(RunStatus status);

/// Resolves a graph name from a load_graph frame. Returns nullopt when unknown.
using GraphResolver = std::function<std::optional<Graph>(std::string_view name)>;

/// Looks up name, name.txt, name.edges, name.mtx in `dir`, then tries the name
/// as a generator description. Names containing path separators are rejected.
GraphResolver directory_resolver(std::string dir);

struct SessionOptions {
  int snapshot_every = 10;
  std::size_t queue_capacity = 64;
  int default_iterations = 300;
};

/// One client's protocol state. handle() may be called from any thread;
/// commands reach the running layout at iteration boundaries, and frames are
/// delivered to the sink from a dedicated writer thread in order.
class Session {
 public:
  using Sink = std::function<void(const nlohmann::json&)>;

  Session(std::string id, GraphResolver resolver, Sink sink, SessionOptions options = {});
  ~Session();
  Session(const Session&) = delete;
  Session& operator=(const Session&) = delete;

  /// Parses and dispatches one JSON frame. Never throws: failures become
  /// error frames and the session stays usable.
  void handle(std::string_view frame);

  const std::string& id() const noexcept { return id_; }
  RunStatus status() const;
  std::uint64_t generation() const;
  ForceParams params() const;
  /// Blocks until no run is active.
  void wait_idle() const;
  std::size_t dropped_frames() const { return queue_.dropped(); }

 private:

  void dispatch(const nlohmann::json& msg);
  void load_graph(const nlohmann::json& msg);
  void start_run(const nlohmann::json& msg);
  void set_params(const nlohmann::json& msg);
  void global_refine(const nlohmann::json& msg);
  void local_refine(const nlohmann::json& msg);
  void get_metrics();
  void pause(bool paused);
  void error(const std::string& message);
  void ack(nlohmann::json body);
  void begin_run_locked(int iterations);
  void worker_loop();
  void writer_loop();
  nlohmann::json positions_frame(const Layout& layout) const;

  std::string id_;
  GraphResolver resolver_;
  Sink sink_;
  SessionOptions options_;
  FrameQueue queue_;

  mutable std::mutex mutex_;
  mutable std::condition_variable changed_;
  std::shared_ptr<const Graph> graph_;
  Layout layout_;
  ForceParams params_;
  RefinementMask mask_;
  RunConfig run_cfg_;
  RunStatus status_ = RunStatus::Idle;
  bool cancel_ = false;
  // Changes queued by commands while a run is active; the worker applies them
  // before its next iteration.
  std::optional<ForceParams> pending_params_;
  std::optional<RefinementMask> pending_mask_;
  bool pending_restart_ = false;

  std::thread worker_;
  std::thread writer_;
};

}  // namespace tfdp

#include "tfdp/session.hpp"

#include <filesystem>

#include "tfdp/errors.hpp"
#include "tfdp/generators.hpp"
#include "tfdp/graph_io.hpp"
#include "tfdp/init.hpp"
#include "tfdp/metrics.hpp"
#include "tfdp/report.hpp"

namespace tfdp {

using nlohmann::json;

void FrameQueue::push(json frame, bool droppable) {
  {
    std::lock_guard lock(mutex_);
    if (closed_) return;
    if (droppable && droppable_count_ >= capacity_) {
      for (auto it = items_.begin(); it != items_.end(); ++it) {
        if (it->droppable) {
          items_.erase(it);
          --droppable_count_;
          ++dropped_;
          break;
        }
      }
    }
    items_.push_back({std::move(frame), droppable});
    droppable_count_ += droppable;
  }
  ready_.notify_one();
}

std::optional<json> FrameQueue::pop() {
  std::unique_lock lock(mutex_);
  ready_.wait(lock, [this] { return closed_ || !items_.empty(); });
  if (items_.empty()) return std::nullopt;
  Item item = std::move(items_.front());
  items_.pop_front();
  droppable_count_ -= item.droppable;
  return std::move(item.frame);
}

void FrameQueue::close() {
  {
    std::lock_guard lock(mutex_);
    closed_ = true;
  }
  ready_.notify_all();
}

std::size_t FrameQueue::dropped() const {
  std::lock_guard lock(mutex_);
  return dropped_;
}

std::string_view to_string(RunStatus status) {
  switch (status) {
    case RunStatus::Idle:
      return "idle";
    case RunStatus::Running:
      return "running";
    case RunStatus::Paused:
      return "paused";
  }
  return "unknown";
}

GraphResolver directory_resolver(std::string dir) {
  return [dir = std::move(dir)](std::string_view name) -> std::optional<Graph> {
    if (name.empty() || name.find('/') != std::string_view::npos || name.find('\\') != std::string_view::npos ||
        name.find("..") != std::string_view::npos) {
      return std::nullopt;
    }
    if (!dir.empty()) {
      for (const char* ext : {"", ".txt", ".edges", ".el", ".mtx"}) {
        const std::filesystem::path path = std::filesystem::path(dir) / (std::string(name) + ext);
        std::error_code ec;
        if (std::filesystem::is_regular_file(path, ec)) return load_graph(path);
      }
    }
    if (name.find(':') != std::string_view::npos) {
      try {
        return generate_graph(name, 0);
      } catch (const ArgumentError&) {
      }
    }
    return std::nullopt;
  };
}

Session::Session(std::string id, GraphResolver resolver, Sink sink, SessionOptions options)
    : id_(std::move(id)),
      resolver_(std::move(resolver)),
      sink_(std::move(sink)),
      options_(options),
      queue_(options.queue_capacity) {
  run_cfg_.iterations = options_.default_iterations;
  run_cfg_.snapshot_every = options_.snapshot_every;
  writer_ = std::thread([this] { writer_loop(); });
}

Session::~Session() {
  {
    std::lock_guard lock(mutex_);
    cancel_ = true;
  }
  changed_.notify_all();
  if (worker_.joinable()) worker_.join();
  queue_.close();
  if (writer_.joinable()) writer_.join();
}

RunStatus Session::status() const {
  std::lock_guard lock(mutex_);
  return status_;
}

std::uint64_t Session::generation() const {
  std::lock_guard lock(mutex_);
  return layout_.generation;
}

ForceParams Session::params() const {
  std::lock_guard lock(mutex_);
  return params_;
}

void Session::wait_idle() const {
  std::unique_lock lock(mutex_);
  changed_.wait(lock, [this] { return status_ == RunStatus::Idle; });
}

void Session::writer_loop() {
  while (auto frame = queue_.pop()) {
    try {
      sink_(*frame);
    } catch (...) {
      // A broken client connection must not take the session down.
    }
  }
}

void Session::error(const std::string& message) {
  queue_.push({{"type", "error"}, {"message", message}}, false);
}

void Session::ack(json body) {
  body["type"] = "ack";
  queue_.push(std::move(body), false);
}

json Session::positions_frame(const Layout& layout) const {
  std::vector<double> xy;
  xy.reserve(2 * layout.size());
  for (const Vec2& p : layout.positions) {
    xy.push_back(p.x);
    xy.push_back(p.y);
  }
  return {{"type", "positions"}, {"generation", layout.generation}, {"xy", std::move(xy)}};
}

void Session::handle(std::string_view frame) {
  json msg;
  try {
    msg = json::parse(frame);
  } catch (const json::parse_error& e) {
    error(std::string("malformed JSON: ") + e.what());
    return;
  }
  if (!msg.is_object() || !msg.contains("type") || !msg["type"].is_string()) {
    error("frame must be an object with a string \"type\"");
    return;
  }
  try {
    dispatch(msg);
  } catch (const json::exception& e) {
    error(std::string("bad field in ") + msg["type"].get<std::string>() + ": " + e.what());
  } catch (const std::exception& e) {
    error(e.what());
  }
}

void Session::dispatch(const json& msg) {
  const std::string type = msg["type"];
  if (type == "load_graph") load_graph(msg);
  else if (type == "run") start_run(msg);
  else if (type == "pause") pause(true);
  else if (type == "resume") pause(false);
  else if (type == "set_params") set_params(msg);
  else if (type == "global_refine") global_refine(msg);
  else if (type == "local_refine") local_refine(msg);
  else if (type == "get_metrics") get_metrics();
  else error("unknown frame type '" + type + "'");
}

namespace {

// Fields may sit at the top level or under "params".
ForceParams merge_params(ForceParams params, const json& msg) {
  const json& src = msg.contains("params") ? msg.at("params") : msg;
  if (!src.is_object()) throw ArgumentError("params must be an object");
  if (src.contains("alpha")) params.alpha = src.at("alpha").get<double>();
  if (src.contains("beta")) params.beta = src.at("beta").get<double>();
  if (src.contains("gamma")) params.gamma = src.at("gamma").get<double>();
  if (src.contains("rho")) params.repulsion_scale = src.at("rho").get<double>();
  if (!(params.alpha > 0.0) || params.beta < 0.0 || !(params.gamma > 0.0) || !(params.repulsion_scale > 0.0)) {
    throw ArgumentError("params need alpha > 0, beta >= 0, gamma > 0, rho > 0");
  }
  return params;
}

json params_ack(const char* command, const ForceParams& params) {
  json out = {{"command", command}, {"params", to_json(params)}};
  const auto warnings = validate(params);
  if (!warnings.empty()) out["warnings"] = warnings;
  return out;
}

}  // namespace

void Session::load_graph(const json& msg) {
  std::optional<Graph> graph;
  if (msg.contains("name")) {
    graph = resolver_ ? resolver_(msg.at("name").get<std::string>()) : std::nullopt;
    if (!graph) throw InputError("unknown graph '" + msg.at("name").get<std::string>() + "'");
  } else if (msg.contains("edges")) {
    std::vector<Edge> edges;
    std::size_t n = msg.value("n", std::size_t{0});
    for (const auto& e : msg.at("edges")) {
      if (!e.is_array() || e.size() != 2) throw ArgumentError("edges must be [u, v] pairs");
      const auto u = e[0].get<NodeId>(), v = e[1].get<NodeId>();
      edges.push_back({u, v});
      n = std::max<std::size_t>(n, std::size_t{std::max(u, v)} + 1);
    }
    graph.emplace(n, edges);
  } else {
    throw ArgumentError("load_graph needs \"name\" or \"edges\"");
  }
  const auto seed = msg.value("seed", std::uint64_t{0});
  Layout init = init_pivot_mds(*graph, kDefaultPivotCount, seed);

  std::lock_guard lock(mutex_);
  if (status_ != RunStatus::Idle) throw ArgumentError("cannot load a graph while a run is active");
  init.generation = layout_.generation + 1;
  graph_ = std::make_shared<const Graph>(std::move(*graph));
  layout_ = std::move(init);
  mask_ = RefinementMask{};
  run_cfg_.seed = seed;
  ack({{"command", "load_graph"}, {"n", graph_->node_count()}, {"m", graph_->edge_count()},
       {"generation", layout_.generation}});
  queue_.push(positions_frame(layout_), true);
}

void Session::begin_run_locked(int iterations) {
  if (worker_.joinable()) worker_.join();  // previous worker already marked the session idle
  run_cfg_.iterations = iterations;
  validate(run_cfg_);
  pending_params_.reset();
  pending_mask_.reset();
  pending_restart_ = false;
  cancel_ = false;
  status_ = RunStatus::Running;
  worker_ = std::thread([this] { worker_loop(); });
}

void Session::start_run(const json& msg) {
  std::lock_guard lock(mutex_);
  if (!graph_) throw ArgumentError("no graph loaded");
  if (status_ != RunStatus::Idle) throw ArgumentError("a run is already active in this session");
  const int iterations = msg.value("iterations", options_.default_iterations);
  if (iterations < 1) throw ArgumentError("iterations must be at least 1");
  RunConfig cfg = run_cfg_;
  if (msg.contains("solver")) {
    const auto kind = parse_solver_kind(msg.at("solver").get<std::string>());
    if (!kind) throw ArgumentError("unknown solver '" + msg.at("solver").get<std::string>() + "'");
    cfg.solver.kind = *kind;
  }
  if (msg.contains("k_policy")) {
    const auto policy = parse_k_policy(msg.at("k_policy").get<std::string>());
    if (!policy) throw ArgumentError("unknown k_policy");
    cfg.solver.k_policy = *policy;
  }
  if (msg.contains("theta")) cfg.solver.theta = msg.at("theta").get<double>();
  if (msg.contains("seed")) cfg.seed = msg.at("seed").get<std::uint64_t>();
  const ForceParams params = merge_params(params_, msg);
  params_ = params;
  run_cfg_ = cfg;
  begin_run_locked(iterations);
  json body = params_ack("run", params_);
  body["iterations"] = iterations;
  body["solver"] = to_json(run_cfg_.solver);
  ack(std::move(body));
}

void Session::pause(bool paused) {
  {
    std::lock_guard lock(mutex_);
    if (paused) {
      if (status_ != RunStatus::Running) throw ArgumentError("no running layout to pause");
      status_ = RunStatus::Paused;
    } else {
      if (status_ != RunStatus::Paused) throw ArgumentError("layout is not paused");
      status_ = RunStatus::Running;
    }
    ack({{"command", paused ? "pause" : "resume"}, {"status", to_string(status_)}});
  }
  changed_.notify_all();
}

void Session::set_params(const json& msg) {
  std::lock_guard lock(mutex_);
  params_ = merge_params(params_, msg);
  if (status_ != RunStatus::Idle) pending_params_ = params_;
  ack(params_ack("set_params", params_));
}

void Session::global_refine(const json& msg) {
  std::lock_guard lock(mutex_);
  if (!graph_) throw ArgumentError("no graph loaded");
  ForceParams params = params_;
  if (msg.contains("gamma")) {
    params.gamma = msg.at("gamma").get<double>();
    if (!(params.gamma > 1.0)) throw ArgumentError("refinement gamma must exceed 1");
  }
  if (msg.contains("rho")) {
    params.repulsion_scale = msg.at("rho").get<double>();
    if (!(params.repulsion_scale > 0.0)) throw ArgumentError("refinement rho must be positive");
  }
  params_ = params;
  mask_ = RefinementMask{};
  if (status_ == RunStatus::Idle) {
    begin_run_locked(run_cfg_.iterations);
  } else {
    pending_params_ = params_;
    pending_mask_ = mask_;
    pending_restart_ = true;
  }
  ack(params_ack("global_refine", params_));
}

void Session::local_refine(const json& msg) {
  std::lock_guard lock(mutex_);
  if (!graph_) throw ArgumentError("no graph loaded");
  const auto focal = msg.value("focal", std::vector<NodeId>{});
  if (focal.empty()) throw ArgumentError("local_refine needs a nonempty focal list");
  RefinementBoosts boosts{4.0, 2.0, 2.0};
  if (msg.contains("boosts")) {
    const auto b = msg.at("boosts").get<std::vector<double>>();
    if (b.size() != 3) throw ArgumentError("boosts must be [attract, focal_repel, surround_repel]");
    boosts = {b[0], b[1], b[2]};
  }
  mask_ = RefinementMask(*graph_, focal, boosts);
  if (status_ == RunStatus::Idle) {
    begin_run_locked(run_cfg_.iterations);
  } else {
    pending_mask_ = mask_;
    pending_restart_ = true;
  }
  ack({{"command", "local_refine"},
       {"focal", focal},
       {"region_size", mask_.region().size()},
       {"boosts", {boosts.attract, boosts.focal_repel, boosts.surround_repel}}});
}

void Session::get_metrics() {
  std::shared_ptr<const Graph> graph;
  Layout layout;
  ForceParams params;
  RunConfig cfg;
  {
    std::lock_guard lock(mutex_);
    if (!graph_) throw ArgumentError("no graph loaded");
    graph = graph_;
    layout = layout_;
    params = params_;
    cfg = run_cfg_;
  }
  const MetricsReport report = compute_metrics(*graph, layout);
  json frame = to_json(report, Provenance{cfg.solver, params, cfg.seed, "pmds"});
  frame["type"] = "metrics";
  frame["generation"] = layout.generation;
  queue_.push(std::move(frame), false);
}

void Session::worker_loop() {
  std::unique_lock lock(mutex_);
  const auto graph = graph_;
  std::optional<LayoutStepper> stepper;
  bool completed = false;
  try {
    stepper.emplace(*graph, layout_, params_, mask_, run_cfg_);
    while (true) {
      changed_.wait(lock, [this] { return status_ != RunStatus::Paused || cancel_; });
      if (cancel_) break;
      if (pending_params_) stepper->set_params(*std::exchange(pending_params_, std::nullopt));
      if (pending_mask_) stepper->set_mask(*std::exchange(pending_mask_, std::nullopt));
      if (std::exchange(pending_restart_, false)) stepper->restart(run_cfg_.iterations);
      if (stepper->done()) {
        completed = true;
        break;
      }
      lock.unlock();
      stepper->step();
      lock.lock();
      layout_ = stepper->layout();
      const int every = run_cfg_.snapshot_every;
      if (every > 0 && (stepper->iteration() % every == 0 || stepper->done())) {
        queue_.push(positions_frame(layout_), true);
      }
    }
  } catch (const std::exception& e) {
    if (!lock.owns_lock()) lock.lock();
    error(e.what());
  }
  status_ = RunStatus::Idle;
  queue_.push({{"type", "run_done"},
               {"generation", layout_.generation},
               {"iterations", stepper ? stepper->iteration() : 0},
               {"completed", completed}},
              false);
  changed_.notify_all();
}

}  // namespace tfdp

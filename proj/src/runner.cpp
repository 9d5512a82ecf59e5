#include "tfdp/runner.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numbers>
#include <ostream>
#include <sstream>

#include "tfdp/distances.hpp"
#include "tfdp/errors.hpp"
#include "tfdp/metrics.hpp"
#include "tfdp/random.hpp"

namespace tfdp {

void validate(const RunConfig& cfg) {
  if (cfg.iterations < 1) throw ArgumentError("iterations must be at least 1");
  if (!(cfg.step0 > 0.0)) throw ArgumentError("step0 must be positive");
  if (!(cfg.jitter_eps > 0.0)) throw ArgumentError("jitter_eps must be positive");
  if (cfg.snapshot_every < 0 || cfg.metrics_every < 0) throw ArgumentError("strides must be nonnegative");
  if (cfg.early_stop_tol < 0.0) throw ArgumentError("early_stop_tol must be nonnegative");
  if (cfg.max_move < 0.0) throw ArgumentError("max_move must be nonnegative");
  if (cfg.solver.theta < 0.0) throw ArgumentError("theta must be nonnegative");
}

double step_size(const RunConfig& cfg, int iteration) {
  if (cfg.cooling == Cooling::Constant) return cfg.step0;
  return cfg.step0 * (1.0 - static_cast<double>(iteration) / static_cast<double>(cfg.iterations));
}

void RunTrace::write_csv(std::ostream& out) const {
  out << "iteration,mean_force,se,np1,ms\n";
  auto opt = [&out](const std::optional<double>& v) {
    if (v) out << *v;
  };
  const auto old_precision = out.precision(17);
  for (const auto& r : records) {
    out << r.iteration << ',' << r.mean_force << ',';
    opt(r.se);
    out << ',';
    opt(r.np1);
    out << ',' << r.ms << '\n';
  }
  out.precision(old_precision);
}

std::string RunTrace::to_csv() const {
  std::ostringstream out;
  write_csv(out);
  return out.str();
}

namespace {

void check_params(const ForceParams& params, const SolverConfig& solver) {
  if (params.law == ForceLaw::Power && solver.kind == SolverKind::Ibfft) {
    throw ArgumentError("the ibfft solver supports only the t-FDP force law");
  }
}

}  // namespace

LayoutStepper::LayoutStepper(const Graph& g, Layout init, ForceParams params, RefinementMask mask,
                             RunConfig cfg)
    : graph_(&g), layout_(std::move(init)), params_(params), mask_(std::move(mask)), cfg_(cfg) {
  validate(cfg_);
  check_params(params_, cfg_.solver);
  if (layout_.size() != g.node_count()) {
    throw ArgumentError("initial layout has " + std::to_string(layout_.size()) + " nodes, graph has " +
                        std::to_string(g.node_count()));
  }
  if (!all_finite(layout_)) throw ArgumentError("initial layout has non-finite coordinates");
}

void LayoutStepper::set_params(const ForceParams& params) {
  check_params(params, cfg_.solver);
  params_ = params;
}

void LayoutStepper::set_mask(RefinementMask mask) { mask_ = std::move(mask); }

void LayoutStepper::set_solver(const SolverConfig& solver) {
  check_params(params_, solver);
  cfg_.solver = solver;
}

void LayoutStepper::restart(int iterations) {
  RunConfig next = cfg_;
  next.iterations = iterations;
  validate(next);
  cfg_ = next;
  iteration_ = 0;
  stopped_early_ = false;
  ++epoch_;
}

void LayoutStepper::jitter_coincident() {
  const std::size_t n = layout_.size();
  if (n < 2) return;
  std::vector<NodeId> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = static_cast<NodeId>(i);
  const auto& pos = layout_.positions;
  std::sort(order.begin(), order.end(), [&pos](NodeId a, NodeId b) {
    if (pos[a].x != pos[b].x) return pos[a].x < pos[b].x;
    if (pos[a].y != pos[b].y) return pos[a].y < pos[b].y;
    return a < b;
  });
  std::vector<NodeId> moved;
  for (std::size_t a = 0; a < n;) {
    std::size_t b = a + 1;
    while (b < n && pos[order[b]] == pos[order[a]]) ++b;
    if (b - a > 1) moved.insert(moved.end(), order.begin() + static_cast<std::ptrdiff_t>(a),
                                order.begin() + static_cast<std::ptrdiff_t>(b));
    a = b;
  }
  for (NodeId v : moved) {
    const auto bits = mix_keys({cfg_.seed, static_cast<std::uint64_t>(epoch_),
                                static_cast<std::uint64_t>(iteration_), v});
    const double angle = 2.0 * std::numbers::pi * unit_interval(bits);
    layout_[v] += Vec2{std::cos(angle), std::sin(angle)} * cfg_.jitter_eps;
  }
}

const TraceRecord& LayoutStepper::step() {
  if (done()) throw ArgumentError("run already finished");
  const auto start = std::chrono::steady_clock::now();
  const int t = iteration_;
  jitter_coincident();

  const int k = cfg_.solver.kind == SolverKind::Ibfft
                    ? interpolation_order(cfg_.solver.k_policy, t, cfg_.iterations)
                    : 0;
  const auto solver_seed = mix_keys({cfg_.seed, static_cast<std::uint64_t>(epoch_), static_cast<std::uint64_t>(t)});
  const RepulsionField field = compute_repulsion(layout_, params_, mask_, cfg_.solver, k, solver_seed);
  const std::vector<Vec2> forces = resultant_forces(layout_, *graph_, params_, mask_, field);

  // Jacobi update: every force above was evaluated on the same snapshot.
  const double eta = step_size(cfg_, t);
  const double limit = cfg_.max_move * eta / cfg_.step0;
  double force_sum = 0.0;
  for (std::size_t i = 0; i < forces.size(); ++i) {
    const double magnitude = norm(forces[i]);
    force_sum += magnitude;
    Vec2 move = forces[i] * eta;
    if (limit > 0.0 && magnitude * eta > limit) move = forces[i] * (limit / magnitude);
    layout_[i] += move;
    if (!is_finite(layout_[i])) throw DivergenceError(t, i);
  }
  ++layout_.generation;
  ++iteration_;

  TraceRecord record;
  record.iteration = t;
  record.mean_force = forces.empty() ? 0.0 : force_sum / static_cast<double>(forces.size());
  if (!std::isfinite(record.mean_force)) throw DivergenceError(t, 0);
  if (cfg_.metrics_every > 0 && (iteration_ % cfg_.metrics_every == 0 || done())) {
    const std::size_t n = graph_->node_count();
    if (n >= 2) {
      try {
        if (n > 2000) {
          const auto sources = sample_sources(*graph_, 2000, cfg_.seed);
          record.se = stress_error(*graph_, layout_, std::span<const NodeId>(sources)).se;
        } else {
          record.se = stress_error(*graph_, layout_).se;
        }
      } catch (const MetricError&) {
      }
      record.np1 = neighborhood_preservation(*graph_, layout_, 1);
    }
  }
  if (cfg_.early_stop_tol > 0.0 && record.mean_force < cfg_.early_stop_tol) stopped_early_ = true;
  record.ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  trace_.records.push_back(record);
  return trace_.records.back();
}

RunResult run(const Graph& g, const Layout& init, const ForceParams& params, const RefinementMask& mask,
              const RunConfig& cfg, const SnapshotCallback& on_snapshot) {
  LayoutStepper stepper(g, init, params, mask, cfg);
  while (!stepper.done()) {
    stepper.step();
    if (on_snapshot && cfg.snapshot_every > 0 &&
        (stepper.iteration() % cfg.snapshot_every == 0 || stepper.done())) {
      on_snapshot(stepper.layout(), stepper.iteration());
    }
  }
  RunResult result;
  result.iterations_done = stepper.iteration();
  result.stopped_early = stepper.stopped_early();
  result.trace = stepper.trace();
  result.layout = stepper.layout();
  return result;
}

RunResult global_refine(const Graph& g, const Layout& layout, const ForceParams& params,
                        const GlobalOverrides& overrides, const RunConfig& cfg) {
  ForceParams refined = params;
  if (overrides.gamma) {
    if (!(*overrides.gamma > 1.0)) throw ArgumentError("refinement gamma must exceed 1");
    refined.gamma = *overrides.gamma;
  }
  if (overrides.repulsion_scale) {
    if (!(*overrides.repulsion_scale > 0.0)) throw ArgumentError("refinement rho must be positive");
    refined.repulsion_scale = *overrides.repulsion_scale;
  }
  return run(g, layout, refined, RefinementMask{}, cfg);
}

RunResult local_refine(const Graph& g, const Layout& layout, const ForceParams& params,
                       std::span<const NodeId> focal, const RefinementBoosts& boosts,
                       const RunConfig& cfg) {
  if (focal.empty()) throw ArgumentError("local refinement needs at least one focal node");
  RefinementMask mask(g, std::vector<NodeId>(focal.begin(), focal.end()), boosts);
  return run(g, layout, params, mask, cfg);
}

}  // namespace tfdp

#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "tfdp/force_model.hpp"
#include "tfdp/graph.hpp"
#include "tfdp/layout.hpp"
#include "tfdp/repulsion.hpp"

namespace tfdp {

enum class Cooling { Linear, Constant };

struct RunConfig {
  int iterations = 300;
  double step0 = 0.1;
  Cooling cooling = Cooling::Linear;
  SolverConfig solver;
  std::uint64_t seed = 0;
  double jitter_eps = 1e-4;
  int snapshot_every = 0;       ///< 0 disables snapshot callbacks
  int metrics_every = 0;        ///< 0 disables SE/NP1 tracking
  double early_stop_tol = 0.0;  ///< stop when mean |F| drops below; 0 disables
  /// Caps each node's displacement per iteration at max_move * eta_t / step0,
  /// a cooling temperature that keeps unbounded force laws stable; 0 disables.
  double max_move = 0.0;
};

/// Throws ArgumentError for T < 1, step0 <= 0, jitter_eps <= 0 or negative strides.
void validate(const RunConfig& cfg);

/// Step size for iteration t of T.
double step_size(const RunConfig& cfg, int iteration);

struct TraceRecord {
  int iteration = 0;
  double mean_force = 0.0;
  std::optional<double> se;
  std::optional<double> np1;
  double ms = 0.0;
};

struct RunTrace {
  std::vector<TraceRecord> records;

  /// "iteration,mean_force,se,np1,ms"; untracked metrics are empty cells.
  void write_csv(std::ostream& out) const;
  std::string to_csv() const;
};

struct RunResult {
  Layout layout;
  RunTrace trace;
  int iterations_done = 0;
  bool stopped_early = false;
};

/// Receives the layout after `iteration` completed steps.
using SnapshotCallback = std::function<void(const Layout&, int iteration)>;

/// One layout run advanced an iteration at a time, so parameters and masks can
/// change between iterations.
class LayoutStepper {
 public:
  /// Throws ArgumentError when sizes or the configuration are invalid.
  LayoutStepper(const Graph& g, Layout init, ForceParams params, RefinementMask mask, RunConfig cfg);

  bool done() const noexcept { return iteration_ >= cfg_.iterations || stopped_early_; }
  int iteration() const noexcept { return iteration_; }
  bool stopped_early() const noexcept { return stopped_early_; }
  const Layout& layout() const noexcept { return layout_; }
  Layout& layout() noexcept { return layout_; }
  const ForceParams& params() const noexcept { return params_; }
  const RefinementMask& mask() const noexcept { return mask_; }
  const RunConfig& config() const noexcept { return cfg_; }
  const RunTrace& trace() const noexcept { return trace_; }

  /// Runs one iteration and returns its trace record. Throws DivergenceError.
  const TraceRecord& step();

  void set_params(const ForceParams& params);
  void set_mask(RefinementMask mask);
  void set_solver(const SolverConfig& solver);
  /// Starts a fresh cooling schedule of `iterations` from the current layout.
  void restart(int iterations);

 private:
  void jitter_coincident();

  const Graph* graph_;
  Layout layout_;
  ForceParams params_;
  RefinementMask mask_;
  RunConfig cfg_;
  RunTrace trace_;
  int iteration_ = 0;
  int epoch_ = 0;  // restarts so far; keeps jitter streams distinct
  bool stopped_early_ = false;
};

RunResult run(const Graph& g, const Layout& init, const ForceParams& params, const RefinementMask& mask,
              const RunConfig& cfg, const SnapshotCallback& on_snapshot = {});

struct GlobalOverrides {
  std::optional<double> gamma;
  std::optional<double> repulsion_scale;
};

/// Continues from `layout` with gamma and/or rho replaced.
/// Throws ArgumentError for an overridden gamma <= 1 or rho <= 0.
RunResult global_refine(const Graph& g, const Layout& layout, const ForceParams& params,
                        const GlobalOverrides& overrides, const RunConfig& cfg);

/// Continues from `layout` under a refinement mask around `focal`.
/// Throws ArgumentError for an empty focal set or out-of-range ids.
RunResult local_refine(const Graph& g, const Layout& layout, const ForceParams& params,
                       std::span<const NodeId> focal, const RefinementBoosts& boosts,
                       const RunConfig& cfg);

}  // namespace tfdp

#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "tfdp/force_model.hpp"
#include "tfdp/graph.hpp"
#include "tfdp/metrics.hpp"
#include "tfdp/runner.hpp"

namespace tfdp {

struct BenchDataset {
  std::string name;
  Graph graph;
};

/// Every *.txt, *.edges, *.el and *.mtx file in `dir`, sorted by name.
/// Throws InputError when the directory is missing or holds no graphs.
std::vector<BenchDataset> load_dataset_dir(const std::string& dir);

enum class InitKind { Random, PivotMds };

struct BenchCell {
  std::string label;  ///< defaults to the solver name when empty
  ForceParams params;
  SolverConfig solver;
  std::optional<double> step0;  ///< overrides BenchOptions::run.step0
};

struct BenchOptions {
  int repeat = 5;
  std::uint64_t seed = 0;
  RunConfig run;
  InitKind init = InitKind::PivotMds;
  bool metrics = true;
  MetricSelection selection;
};

struct BenchRecord {
  std::string dataset;
  std::size_t n = 0, m = 0;
  std::string cell;
  SolverConfig solver;
  ForceParams params;
  std::uint64_t seed = 0;
  int run = 0;       ///< repeat index; -1 for the mean record
  int successes = 0; ///< mean records: runs averaged
  double init_ms = 0.0;
  double layout_ms = 0.0;  ///< iteration loop only, excludes loading and initialization
  double metrics_ms = 0.0;
  MetricsReport metrics;
  std::optional<std::string> error;
  std::string host;

  bool is_mean() const noexcept { return run < 0; }
};

/// CPU model, logical core count, OpenMP threads, compiler and FFT backend.
std::string host_descriptor();

using RecordSink = std::function<void(const BenchRecord&)>;

/// Runs each dataset x cell `repeat` times with seeds seed+0..repeat-1, then a
/// mean record per cell. A failing run is recorded with its error and the
/// matrix continues. Records go to `sink` as they complete and are returned.
std::vector<BenchRecord> run_bench(const std::vector<BenchDataset>& datasets,
                                   const std::vector<BenchCell>& cells, const BenchOptions& options,
                                   const RecordSink& sink = {});

nlohmann::json to_json(const BenchRecord& record);
std::string bench_csv_header();
std::string to_csv_line(const BenchRecord& record);

}  // namespace tfdp

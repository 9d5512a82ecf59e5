#include "tfdp/bench_harness.hpp"

#include <omp.h>

#include <algorithm>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <thread>

#include "tfdp/errors.hpp"
#include "tfdp/graph_io.hpp"
#include "tfdp/init.hpp"
#include "tfdp/report.hpp"

namespace tfdp {

namespace fs = std::filesystem;

std::vector<BenchDataset> load_dataset_dir(const std::string& dir) {
  std::error_code ec;
  if (!fs::is_directory(dir, ec)) throw InputError("dataset directory not found: " + dir);
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (!entry.is_regular_file()) continue;
    const auto ext = entry.path().extension().string();
    if (ext == ".txt" || ext == ".edges" || ext == ".el" || ext == ".mtx") files.push_back(entry.path());
  }
  if (files.empty()) throw InputError("no graph files in " + dir);
  std::sort(files.begin(), files.end());
  std::vector<BenchDataset> out;
  for (const auto& path : files) out.push_back({path.stem().string(), load_graph(path.string())});
  return out;
}

std::string host_descriptor() {
  std::string cpu = "unknown cpu";
  std::ifstream info("/proc/cpuinfo");
  for (std::string line; std::getline(info, line);) {
    if (line.rfind("model name", 0) == 0) {
      const auto colon = line.find(':');
      if (colon != std::string::npos) cpu = line.substr(colon + 2);
      break;
    }
  }
  std::ostringstream out;
  out << cpu << "; cores=" << std::thread::hardware_concurrency() << "; omp_threads=" << omp_get_max_threads()
      << "; compiler=" << __VERSION__ << "; fft=fftw3 estimate-planned";
  return out.str();
}

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

void accumulate(std::optional<double>& sum, const std::optional<double>& v) {
  if (v) sum = sum.value_or(0.0) + *v;
}

void divide(std::optional<double>& v, int count) {
  if (v) *v /= count;
}

BenchRecord mean_of(const std::vector<BenchRecord>& runs) {
  BenchRecord mean = runs.front();
  mean.run = -1;
  mean.error.reset();
  mean.init_ms = mean.layout_ms = mean.metrics_ms = 0.0;
  mean.metrics = {};
  int ok = 0;
  for (const auto& r : runs) {
    if (r.error) continue;
    ++ok;
    mean.init_ms += r.init_ms;
    mean.layout_ms += r.layout_ms;
    mean.metrics_ms += r.metrics_ms;
    accumulate(mean.metrics.se, r.metrics.se);
    accumulate(mean.metrics.scale_factor, r.metrics.scale_factor);
    accumulate(mean.metrics.np1, r.metrics.np1);
    accumulate(mean.metrics.np2, r.metrics.np2);
    accumulate(mean.metrics.cl, r.metrics.cl);
    accumulate(mean.metrics.ma, r.metrics.ma);
    mean.metrics.sampled = r.metrics.sampled;
    mean.metrics.se_pairs = r.metrics.se_pairs;
    mean.metrics.ma_nodes = r.metrics.ma_nodes;
    mean.metrics.isolated_nodes = r.metrics.isolated_nodes;
  }
  mean.successes = ok;
  if (ok == 0) {
    mean.error = "all " + std::to_string(runs.size()) + " runs failed";
    return mean;
  }
  mean.init_ms /= ok;
  mean.layout_ms /= ok;
  mean.metrics_ms /= ok;
  divide(mean.metrics.se, ok);
  divide(mean.metrics.scale_factor, ok);
  divide(mean.metrics.np1, ok);
  divide(mean.metrics.np2, ok);
  divide(mean.metrics.cl, ok);
  divide(mean.metrics.ma, ok);
  if (ok < static_cast<int>(runs.size())) {
    mean.error = std::to_string(runs.size() - static_cast<std::size_t>(ok)) + " of " +
                 std::to_string(runs.size()) + " runs failed";
  }
  return mean;
}

}  // namespace

std::vector<BenchRecord> run_bench(const std::vector<BenchDataset>& datasets,
                                   const std::vector<BenchCell>& cells, const BenchOptions& options,
                                   const RecordSink& sink) {
  if (options.repeat < 1) throw ArgumentError("repeat must be at least 1");
  validate(options.run);
  const std::string host = host_descriptor();
  std::vector<BenchRecord> all;
  auto emit = [&](const BenchRecord& r) {
    all.push_back(r);
    if (sink) sink(r);
  };
  for (const auto& data : datasets) {
    for (const auto& cell : cells) {
      std::vector<BenchRecord> runs;
      for (int rep = 0; rep < options.repeat; ++rep) {
        BenchRecord rec;
        rec.dataset = data.name;
        rec.n = data.graph.node_count();
        rec.m = data.graph.edge_count();
        rec.cell = cell.label.empty() ? std::string(to_string(cell.solver.kind)) : cell.label;
        rec.solver = cell.solver;
        rec.params = cell.params;
        rec.seed = options.seed + static_cast<std::uint64_t>(rep);
        rec.run = rep;
        rec.host = host;
        try {
          auto t0 = Clock::now();
          const Layout init = options.init == InitKind::Random
                                  ? init_random(data.graph, rec.seed, 1.0)
                                  : init_pivot_mds(data.graph, kDefaultPivotCount, rec.seed);
          rec.init_ms = ms_since(t0);
          RunConfig cfg = options.run;
          cfg.solver = cell.solver;
          cfg.seed = rec.seed;
          if (cell.step0) cfg.step0 = *cell.step0;
          t0 = Clock::now();
          const RunResult result = run(data.graph, init, cell.params, RefinementMask{}, cfg);
          rec.layout_ms = ms_since(t0);
          if (options.metrics) {
            t0 = Clock::now();
            rec.metrics = compute_metrics(data.graph, result.layout, options.selection);
            rec.metrics_ms = ms_since(t0);
          }
        } catch (const std::exception& e) {
          rec.error = e.what();
        }
        emit(rec);
        runs.push_back(std::move(rec));
      }
      emit(mean_of(runs));
    }
  }
  return all;
}

nlohmann::json to_json(const BenchRecord& r) {
  nlohmann::json out = {{"record", r.is_mean() ? "mean" : "run"},
                        {"dataset", r.dataset},
                        {"n", r.n},
                        {"m", r.m},
                        {"cell", r.cell},
                        {"solver", to_json(r.solver)},
                        {"params", to_json(r.params)},
                        {"seed", r.seed},
                        {"init_ms", r.init_ms},
                        {"layout_ms", r.layout_ms},
                        {"metrics_ms", r.metrics_ms},
                        {"host", r.host},
                        {"init_pivots", kDefaultPivotCount}};
  if (r.is_mean()) {
    out["runs"] = r.successes;
  } else {
    out["run"] = r.run;
  }
  out["metrics"] = to_json(r.metrics);
  out["error"] = r.error ? nlohmann::json(*r.error) : nlohmann::json(nullptr);
  return out;
}

std::string bench_csv_header() {
  return "record,dataset,n,m,cell,seed,run,init_ms,layout_ms,metrics_ms,se,np1,np2,cl,ma,error";
}

std::string to_csv_line(const BenchRecord& r) {
  std::ostringstream out;
  out.precision(10);
  auto opt = [&out](const std::optional<double>& v) {
    out << ',';
    if (v) out << *v;
  };
  out << (r.is_mean() ? "mean" : "run") << ',' << r.dataset << ',' << r.n << ',' << r.m << ',' << r.cell << ','
      << r.seed << ',' << r.run << ',' << r.init_ms << ',' << r.layout_ms << ',' << r.metrics_ms;
  opt(r.metrics.se);
  opt(r.metrics.np1);
  opt(r.metrics.np2);
  opt(r.metrics.cl);
  opt(r.metrics.ma);
  out << ',';
  if (r.error) {
    std::string msg = *r.error;
    std::replace(msg.begin(), msg.end(), ',', ';');
    std::replace(msg.begin(), msg.end(), '\n', ' ');
    out << msg;
  }
  return out.str();
}

}  // namespace tfdp

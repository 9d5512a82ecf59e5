#include <doctest.h>

#include <filesystem>
#include <fstream>

#include "tfdp/bench_harness.hpp"
#include "tfdp/errors.hpp"
#include "tfdp/generators.hpp"
#include "tfdp/graph_io.hpp"

using namespace tfdp;
namespace fs = std::filesystem;

namespace {

fs::path fresh_dir(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("tfdp_bench_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

BenchOptions quick_options() {
  BenchOptions options;
  options.run.iterations = 10;
  options.seed = 3;
  return options;
}

BenchCell solver_cell(SolverKind kind) {
  BenchCell cell;
  cell.solver.kind = kind;
  return cell;
}

}  // namespace

TEST_SUITE("bench") {
  TEST_CASE("matrix emits per-run and mean records") {
    const std::vector<BenchDataset> data{{"grid", grid_graph(5, 5)}, {"tree", random_tree(30, 1)}};
    const std::vector<BenchCell> cells{solver_cell(SolverKind::Exact), solver_cell(SolverKind::Ibfft)};
    std::size_t streamed = 0;
    const auto records = run_bench(data, cells, quick_options(), [&](const BenchRecord&) { ++streamed; });
    CHECK(records.size() == 24);
    CHECK(streamed == 24);
    std::size_t means = 0;
    for (const auto& r : records) {
      CHECK_FALSE(r.error);
      CHECK(r.layout_ms >= 0.0);
      CHECK(r.init_ms >= 0.0);
      CHECK(r.metrics_ms >= 0.0);
      CHECK_FALSE(r.host.empty());
      if (r.is_mean()) {
        ++means;
        CHECK(r.successes == 5);
      } else {
        CHECK(r.seed == 3 + static_cast<std::uint64_t>(r.run));
        CHECK(r.metrics.np1);
      }
    }
    CHECK(means == 4);
  }

  TEST_CASE("a failing cell is recorded and the matrix continues") {
    const std::vector<BenchDataset> data{{"path", path_graph(6)}};
    BenchCell bad = solver_cell(SolverKind::Exact);
    bad.label = "unstable";
    bad.params.law = ForceLaw::Power;
    bad.params.power_p = 4;
    bad.step0 = 1e3;
    BenchOptions options = quick_options();
    options.repeat = 2;
    options.init = InitKind::Random;
    const auto records = run_bench(data, {bad, solver_cell(SolverKind::Exact)}, options);
    REQUIRE(records.size() == 6);
    std::size_t failed = 0;
    for (const auto& r : records) {
      if (r.cell == "unstable") {
        CHECK(r.error);
        ++failed;
      } else {
        CHECK_FALSE(r.error);
      }
    }
    CHECK(failed == 3);
  }

  TEST_CASE("serialized records") {
    const std::vector<BenchDataset> data{{"p", path_graph(4)}};
    BenchOptions options = quick_options();
    options.repeat = 1;
    const auto records = run_bench(data, {solver_cell(SolverKind::Exact)}, options);
    const auto json = to_json(records.front());
    CHECK(json["dataset"] == "p");
    CHECK(json["n"] == 4);
    CHECK(json.contains("host"));
    const std::string header = bench_csv_header();
    const std::string line = to_csv_line(records.front());
    CHECK(std::count(header.begin(), header.end(), ',') == std::count(line.begin(), line.end(), ','));
  }

  TEST_CASE("dataset directories") {
    const fs::path empty = fresh_dir("empty");
    CHECK_THROWS_AS(load_dataset_dir(empty.string()), InputError);
    CHECK_THROWS_AS(load_dataset_dir((empty / "missing").string()), InputError);
    const fs::path dir = fresh_dir("two");
    std::ofstream(dir / "b.txt") << write_edge_list(path_graph(5));
    std::ofstream(dir / "a.edges") << "0 1\n1 2\n";
    std::ofstream(dir / "notes.md") << "ignored\n";
    const auto sets = load_dataset_dir(dir.string());
    REQUIRE(sets.size() == 2);
    CHECK(sets[0].name == "a");
    CHECK(sets[1].graph.node_count() == 5);
  }
}

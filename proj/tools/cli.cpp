#include "cli.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "tfdp/bench_harness.hpp"
#include "tfdp/config.hpp"
#include "tfdp/errors.hpp"
#include "tfdp/generators.hpp"
#include "tfdp/graph_io.hpp"
#include "tfdp/init.hpp"
#include "tfdp/metrics.hpp"
#include "tfdp/report.hpp"
#include "tfdp/runner.hpp"
#include "tfdp/server.hpp"
#include "tfdp/svg.hpp"

namespace tfdp::cli {

namespace {

// Failure classes that map onto exit codes.
struct FlagError : Error {
  using Error::Error;
};
struct IoError : Error {
  using Error::Error;
};

const std::map<std::string, GraphFormat> kFormats = {
    {"edgelist", GraphFormat::EdgeList}, {"mtx", GraphFormat::MatrixMarket}, {"auto", GraphFormat::Auto}};
const std::vector<std::string> kSolvers = {"exact", "bh", "rvs", "ibfft"};
const std::vector<std::string> kPolicies = {"fixed1", "fixed2", "fixed3", "dynamic"};

void write_file(const std::string& path, const std::string& content) {
  std::ofstream file(path, std::ios::binary);
  if (!file) throw IoError("cannot open " + path + " for writing");
  file << content;
  if (!file.flush()) throw IoError("failed writing " + path);
}

std::string read_file(const std::string& path) {
  std::ifstream file(path, std::ios::binary);
  if (!file) throw IoError("cannot read " + path);
  std::ostringstream buf;
  buf << file.rdbuf();
  return buf.str();
}

Graph read_graph(const std::string& path, const std::string& format) {
  try {
    return load_graph(path, kFormats.at(format));
  } catch (const InputError& e) {
    throw IoError(e.what());
  }
}

struct ForceFlags {
  double alpha = ForceParams{}.alpha;
  double beta = ForceParams{}.beta;
  double gamma = ForceParams{}.gamma;
  double rho = ForceParams{}.repulsion_scale;
  std::string law = "tfdp";
  CLI::Option *alpha_opt = nullptr, *beta_opt = nullptr, *gamma_opt = nullptr, *rho_opt = nullptr,
              *law_opt = nullptr;

  void attach(CLI::App* app) {
    alpha_opt = app->add_option("--alpha", alpha, "weight of the attractive forces")->capture_default_str();
    beta_opt = app->add_option("--beta", beta, "weight of the short-range attraction")->capture_default_str();
    gamma_opt = app->add_option("--gamma", gamma, "repulsion exponent")->capture_default_str();
    rho_opt = app->add_option("--rho", rho, "repulsion scale")->capture_default_str();
    law_opt = app->add_option("--force-law", law, "tfdp or power:p,q")->capture_default_str();
  }

  // Flags given on the command line win over values from a config file.
  void apply(ForceParams& params) const {
    if (alpha_opt->count()) params.alpha = alpha;
    if (beta_opt->count()) params.beta = beta;
    if (gamma_opt->count()) params.gamma = gamma;
    if (rho_opt->count()) params.repulsion_scale = rho;
    if (law_opt->count()) {
      try {
        apply_force_law(law, params);
      } catch (const ArgumentError& e) {
        throw FlagError(e.what());
      }
    }
  }
};

struct SolverFlags {
  std::string solver = "ibfft";
  double theta = SolverConfig{}.theta;
  std::size_t sample_size = 0;
  std::string k_policy = "dynamic";
  CLI::Option *solver_opt = nullptr, *theta_opt = nullptr, *sample_opt = nullptr, *k_opt = nullptr;

  void attach(CLI::App* app) {
    solver_opt = app->add_option("--solver", solver, "repulsion solver")
                     ->check(CLI::IsMember(kSolvers))
                     ->capture_default_str();
    theta_opt = app->add_option("--theta", theta, "Barnes-Hut opening threshold")
                    ->check(CLI::NonNegativeNumber)
                    ->capture_default_str();
    sample_opt = app->add_option("--sample-size", sample_size, "RVS sample size (0 = default)");
    k_opt = app->add_option("--k-policy", k_policy, "ibFFT interpolation order policy")
                ->check(CLI::IsMember(kPolicies))
                ->capture_default_str();
  }

  void apply(SolverConfig& cfg) const {
    if (solver_opt->count()) cfg.kind = *parse_solver_kind(solver);
    if (theta_opt->count()) cfg.theta = theta;
    if (sample_opt->count()) cfg.sample_size = sample_size;
    if (k_opt->count()) cfg.k_policy = *parse_k_policy(k_policy);
  }
};

struct LayoutCommand {
  std::string input, format = "auto", init = "pmds", out_path, svg_path, trace_path, config_path;
  int iterations = RunConfig{}.iterations;
  std::uint64_t seed = 0;
  double step0 = RunConfig{}.step0;
  std::size_t pivots = kDefaultPivotCount;
  int metrics_every = 0;
  double max_move = 0.0;
  ForceFlags force;
  SolverFlags solver;
  CLI::Option *iter_opt = nullptr, *seed_opt = nullptr, *step_opt = nullptr;

  void attach(CLI::App* app) {
    app->add_option("--input", input, "graph file")->required();
    app->add_option("--format", format, "input format")->check(CLI::IsMember({"edgelist", "mtx", "auto"}))
        ->capture_default_str();
    app->add_option("--init", init, "initial layout")->check(CLI::IsMember({"random", "pmds"}))
        ->capture_default_str();
    iter_opt = app->add_option("--iterations", iterations, "iteration count")->check(CLI::PositiveNumber)
                   ->capture_default_str();
    seed_opt = app->add_option("--seed", seed, "random seed")->capture_default_str();
    step_opt = app->add_option("--step0", step0, "initial step size")->check(CLI::PositiveNumber)
                   ->capture_default_str();
    app->add_option("--pivots", pivots, "PivotMDS pivot count")->check(CLI::PositiveNumber)->capture_default_str();
    app->add_option("--metrics-every", metrics_every, "track SE and NP1 every N iterations in the trace")
        ->check(CLI::NonNegativeNumber);
    app->add_option("--max-move", max_move, "per-iteration displacement cap, cooled with the step (0 = off)")
        ->check(CLI::NonNegativeNumber);
    app->add_option("--config", config_path, "flat key = value parameter file");
    app->add_option("--out", out_path, "layout CSV output")->required();
    app->add_option("--svg", svg_path, "SVG drawing output");
    app->add_option("--trace", trace_path, "per-iteration trace CSV output");
    force.attach(app);
    solver.attach(app);
  }

  int execute(std::ostream& out, std::ostream& err) const {
    ForceParams params;
    RunConfig cfg;
    if (!config_path.empty()) {
      try {
        apply_config(read_file(config_path), params, cfg);
      } catch (const ParseError& e) {
        throw FlagError(config_path + ": " + e.what());
      }
    }
    force.apply(params);
    solver.apply(cfg.solver);
    if (iter_opt->count()) cfg.iterations = iterations;
    if (seed_opt->count()) cfg.seed = seed;
    if (step_opt->count()) cfg.step0 = step0;
    cfg.metrics_every = metrics_every;
    if (max_move > 0.0) cfg.max_move = max_move;
    if (params.law == ForceLaw::Power && cfg.solver.kind == SolverKind::Ibfft) {
      throw FlagError("--solver ibfft supports only --force-law tfdp");
    }
    if (params.law == ForceLaw::TFdp && !(params.gamma > 0.0)) throw FlagError("--gamma must be positive");
    for (const auto& w : validate(params)) err << "warning: " << w << '\n';

    const Graph g = read_graph(input, format);
    const Layout start = init == "random" ? init_random(g, cfg.seed, 1.0) : init_pivot_mds(g, pivots, cfg.seed);
    const RunResult result = run(g, start, params, RefinementMask{}, cfg);

    write_file(out_path, write_layout_csv(result.layout));
    if (!svg_path.empty()) write_file(svg_path, to_svg(g, result.layout));
    if (!trace_path.empty()) write_file(trace_path, result.trace.to_csv());
    out << "layout: n=" << g.node_count() << " m=" << g.edge_count() << " solver=" << to_string(cfg.solver.kind)
        << " iterations=" << result.iterations_done << " alpha=" << params.alpha << " beta=" << params.beta
        << " gamma=" << params.gamma << " rho=" << params.repulsion_scale << " -> " << out_path << '\n';
    return kOk;
  }
};

struct MetricsCommand {
  std::string graph_path, layout_path, format = "auto";
  bool se = false, np1 = false, np2 = false, cl = false, ma = false;

  void attach(CLI::App* app) {
    app->add_option("--graph,--input", graph_path, "graph file")->required();
    app->add_option("--layout", layout_path, "layout CSV")->required();
    app->add_option("--format", format, "graph format")->check(CLI::IsMember({"edgelist", "mtx", "auto"}));
    app->add_flag("--se", se, "stress error");
    app->add_flag("--np1", np1, "1-ring neighborhood preservation");
    app->add_flag("--np2", np2, "2-ring neighborhood preservation");
    app->add_flag("--cl", cl, "crosslessness");
    app->add_flag("--ma", ma, "minimum angle");
  }

  int execute(std::ostream& out, std::ostream&) const {
    const Graph g = read_graph(graph_path, format);
    Layout layout;
    try {
      layout = parse_layout_csv(read_file(layout_path));
    } catch (const ParseError& e) {
      throw IoError(layout_path + ": " + e.what());
    }
    if (layout.size() != g.node_count()) {
      throw IoError("layout has " + std::to_string(layout.size()) + " rows but the graph has " +
                    std::to_string(g.node_count()) + " nodes");
    }
    MetricSelection which;
    if (se || np1 || np2 || cl || ma) which = {se, np1, np2, cl, ma};
    out << to_json(compute_metrics(g, layout, which)).dump(2) << '\n';
    return kOk;
  }
};

struct BenchCommand {
  std::string datasets_dir, init = "pmds", out_path, output_format = "jsonl";
  std::vector<std::string> generated;
  std::vector<std::string> solvers = {"exact", "ibfft"};
  int repeat = 5;
  int iterations = RunConfig{}.iterations;
  std::uint64_t seed = 0;
  bool no_metrics = false;
  ForceFlags force;
  double theta = SolverConfig{}.theta;

  void attach(CLI::App* app) {
    app->add_option("--datasets", datasets_dir, "directory of graph files");
    app->add_option("--generate", generated, "generated graphs such as grid:20x20 (repeatable)");
    app->add_option("--solvers", solvers, "solvers to compare")->delimiter(',')->check(CLI::IsMember(kSolvers));
    app->add_option("--repeat", repeat, "runs per cell")->check(CLI::PositiveNumber)->capture_default_str();
    app->add_option("--iterations", iterations, "iterations per run")->check(CLI::PositiveNumber)
        ->capture_default_str();
    app->add_option("--seed", seed, "base seed; run r uses seed + r")->capture_default_str();
    app->add_option("--theta", theta, "Barnes-Hut opening threshold")->check(CLI::NonNegativeNumber);
    app->add_option("--init", init, "initial layout")->check(CLI::IsMember({"random", "pmds"}));
    app->add_option("--output-format", output_format, "record format")->check(CLI::IsMember({"jsonl", "csv"}));
    app->add_option("--out", out_path, "record file (default stdout)");
    app->add_flag("--no-metrics", no_metrics, "skip quality metrics");
    force.attach(app);
  }

  int execute(std::ostream& out, std::ostream& err) const {
    std::vector<BenchDataset> datasets;
    if (!datasets_dir.empty()) {
      try {
        datasets = load_dataset_dir(datasets_dir);
      } catch (const InputError& e) {
        throw IoError(e.what());
      }
    }
    for (const auto& desc : generated) {
      try {
        datasets.push_back({desc, generate_graph(desc, seed)});
      } catch (const ArgumentError& e) {
        throw FlagError(e.what());
      }
    }
    if (datasets.empty()) throw IoError("no datasets: give --datasets DIR or --generate");

    ForceParams params;
    force.apply(params);
    std::vector<BenchCell> cells;
    for (const auto& name : solvers) {
      BenchCell cell;
      cell.label = name;
      cell.params = params;
      cell.solver.kind = *parse_solver_kind(name);
      cell.solver.theta = theta;
      if (params.law == ForceLaw::Power && cell.solver.kind == SolverKind::Ibfft) {
        throw FlagError("ibfft supports only the tfdp force law");
      }
      cells.push_back(cell);
    }
    BenchOptions options;
    options.repeat = repeat;
    options.seed = seed;
    options.run.iterations = iterations;
    options.init = init == "random" ? InitKind::Random : InitKind::PivotMds;
    options.metrics = !no_metrics;

    std::ofstream file;
    if (!out_path.empty()) {
      file.open(out_path);
      if (!file) throw IoError("cannot open " + out_path + " for writing");
    }
    std::ostream& sink_stream = out_path.empty() ? out : file;
    const bool csv = output_format == "csv";
    if (csv) sink_stream << bench_csv_header() << '\n';
    std::size_t failures = 0;
    run_bench(datasets, cells, options, [&](const BenchRecord& r) {
      sink_stream << (csv ? to_csv_line(r) : to_json(r).dump()) << '\n';
      sink_stream.flush();
      if (r.error && !r.is_mean()) ++failures;
    });
    if (failures) err << "bench: " << failures << " run(s) failed; see the error field of their records\n";
    return kOk;
  }
};

struct ServeCommand {
  ServerOptions options;
  int port = 7878;

  void attach(CLI::App* app) {
    app->add_option("--port", port, "TCP port (0 picks a free one)")->check(CLI::Range(0, 65535))
        ->capture_default_str();
    app->add_option("--bind", options.bind_address, "bind address")->capture_default_str();
    app->add_option("--graph-dir", options.graph_dir, "directory served to load_graph by name");
    app->add_option("--snapshot-every", options.session.snapshot_every, "iterations between positions frames")
        ->check(CLI::PositiveNumber);
  }

  int execute(std::ostream& out, std::ostream&) {
    options.port = static_cast<std::uint16_t>(port);
    SessionServer server(options);
    out << "listening on " << options.bind_address << ':' << server.port() << std::endl;
    server.serve();
    return kOk;
  }
};

struct GenerateCommand {
  std::string description, out_path;
  std::uint64_t seed = 0;

  void attach(CLI::App* app) {
    app->add_option("description", description, "e.g. grid:20x20, clusters:2x200, tree:400, pa:1000,2")
        ->required();
    app->add_option("--seed", seed, "random seed")->capture_default_str();
    app->add_option("--out", out_path, "edge list output (default stdout)");
  }

  int execute(std::ostream& out, std::ostream&) const {
    Graph g = [&] {
      try {
        return generate_graph(description, seed);
      } catch (const ArgumentError& e) {
        throw FlagError(e.what());
      }
    }();
    const std::string text = write_edge_list(g);
    if (out_path.empty()) {
      out << text;
    } else {
      write_file(out_path, text);
    }
    return kOk;
  }
};

}  // namespace

int main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"t-FDP graph layout engine"};
  app.require_subcommand(1);
  LayoutCommand layout;
  MetricsCommand metrics;
  BenchCommand bench;
  ServeCommand serve;
  GenerateCommand generate;
  auto* layout_app = app.add_subcommand("layout", "compute a layout and write it as CSV");
  auto* metrics_app = app.add_subcommand("metrics", "print layout quality metrics as JSON");
  auto* bench_app = app.add_subcommand("bench", "run a datasets x solvers benchmark matrix");
  auto* serve_app = app.add_subcommand("serve", "run the interactive session service");
  auto* generate_app = app.add_subcommand("generate", "write a synthetic graph as an edge list");
  layout.attach(layout_app);
  metrics.attach(metrics_app);
  bench.attach(bench_app);
  serve.attach(serve_app);
  generate.attach(generate_app);

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    const CLI::App* failed = &app;
    for (auto* sub : app.get_subcommands()) failed = sub;
    err << failed->help();
    return kBadFlags;
  }

  try {
    if (layout_app->parsed()) return layout.execute(out, err);
    if (metrics_app->parsed()) return metrics.execute(out, err);
    if (bench_app->parsed()) return bench.execute(out, err);
    if (serve_app->parsed()) return serve.execute(out, err);
    if (generate_app->parsed()) return generate.execute(out, err);
  } catch (const FlagError& e) {
    err << "error: " << e.what() << '\n';
    return kBadFlags;
  } catch (const DivergenceError& e) {
    err << "error: layout diverged: " << e.what() << '\n';
    return kDiverged;
  } catch (const IoError& e) {
    err << "error: " << e.what() << '\n';
    return kInputFailure;
  } catch (const ParseError& e) {
    err << "error: parse failure: " << e.what() << '\n';
    return kInputFailure;
  } catch (const InputError& e) {
    err << "error: " << e.what() << '\n';
    return kInputFailure;
  } catch (const ArgumentError& e) {
    err << "error: " << e.what() << '\n';
    return kBadFlags;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kInputFailure;
  }
  return kBadFlags;
}

}  // namespace tfdp::cli

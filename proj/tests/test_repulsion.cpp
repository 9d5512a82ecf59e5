#include <doctest.h>

#include <cmath>
#include <array>
#include <numbers>

#include "oracles.hpp"
#include "tfdp/errors.hpp"
#include "tfdp/generators.hpp"
#include "tfdp/repulsion.hpp"

using namespace tfdp;
using doctest::Approx;

namespace {

Layout shifted(Layout l, Vec2 by) {
  for (auto& p : l.positions) p += by;
  return l;
}

std::vector<Vec2> mean_rvs(const Layout& l, const ForceParams& p, std::size_t s, int runs) {
  std::vector<Vec2> mean(l.size());
  for (int r = 0; r < runs; ++r) {
    const auto f = repulsion_rvs(l, p, {}, s, static_cast<std::uint64_t>(r)).forces;
    for (std::size_t i = 0; i < l.size(); ++i) mean[i] += f[i];
  }
  for (auto& v : mean) v = v / runs;
  return mean;
}

}  // namespace

TEST_SUITE("repulsion") {
  TEST_CASE("exact field of two points") {
    const Layout l(std::vector<Vec2>{{0, 0}, {1, 0}});
    const auto f = repulsion_exact(l, ForceParams{}).forces;
    CHECK(f[0].x == Approx(-0.25));
    CHECK(f[1].x == Approx(0.25));
    CHECK(f[0].y == 0.0);
  }

  TEST_CASE("exact field of a single point is zero") {
    const Layout l(std::vector<Vec2>{{3, 4}});
    CHECK(repulsion_exact(l, ForceParams{}).forces == std::vector<Vec2>{Vec2{}});
  }

  TEST_CASE("equilateral triangle pushes radially with equal magnitudes") {
    Layout l;
    for (int k = 0; k < 3; ++k) {
      const double a = 2 * std::numbers::pi * k / 3;
      l.positions.push_back({2 + std::cos(a), -1 + std::sin(a)});
    }
    const auto f = repulsion_exact(l, ForceParams{}).forces;
    for (int k = 0; k < 3; ++k) {
      CHECK(norm(f[k]) == Approx(norm(f[0])));
      const Vec2 radial = l[k] - Vec2{2, -1};
      CHECK(std::abs(cross(radial, f[k])) < 1e-12);
      CHECK(dot(radial, f[k]) > 0);
    }
  }

  TEST_CASE("exact solver matches the direct oracle and the serial reference") {
    const Layout l = oracle::uniform_square(300, 6.0, 1);
    for (double gamma : {1.0, 1.5, 2.0, 3.0}) {
      ForceParams p;
      p.gamma = gamma;
      p.repulsion_scale = 1.7;
      const auto f = repulsion_exact(l, p).forces;
      CHECK(oracle::relative_l2(f, oracle::direct_repulsion(l, gamma, 1.7)) < 1e-12);
      CHECK(oracle::relative_l2(reference::repulsion_exact_serial(l, p).forces, f) < 1e-12);
    }
  }

  TEST_CASE("Barnes-Hut with theta 0 reproduces exact") {
    for (std::size_t n : {2u, 17u, 200u}) {
      const Layout l = oracle::uniform_square(n, 4.0, n);
      const ForceParams p;
      const auto exact = repulsion_exact(l, p).forces;
      CHECK(oracle::relative_l2(repulsion_bh(l, p, {}, 0.0).forces, exact) < 1e-9);
    }
  }

  TEST_CASE("Barnes-Hut theta 0.5 stays within 2% in the unit square") {
    const Layout l = oracle::uniform_square(2000, 1.0, 7);
    const ForceParams p;
    const auto exact = repulsion_exact(l, p).forces;
    CHECK(oracle::relative_l2(repulsion_bh(l, p, {}, 0.5).forces, exact) < 0.02);
  }

  TEST_CASE("a distant cluster is summarized by one cell evaluation") {
    Layout l = oracle::uniform_square(100, 1.0, 3);
    l.positions.push_back({1000, 1000});
    BarnesHutStats stats;
    // Only the far node's traversal is inspected: every other node sees one
    // far point, the far node sees the whole cluster through one cell.
    Layout far_only(std::vector<Vec2>{{1000, 1000}});
    for (std::size_t i = 0; i < 100; ++i) far_only.positions.push_back(l[i]);
    const auto f = repulsion_bh(far_only, ForceParams{}, {}, 0.5, &stats);
    CHECK(stats.pair_evaluations + stats.cell_evaluations < 101 * 100);
    const auto exact = repulsion_exact(far_only, ForceParams{}).forces;
    CHECK(norm(f.forces[0] - exact[0]) < 1e-6 * norm(exact[0]) + 1e-15);
  }

  TEST_CASE("random sampling with the full sample equals exact") {
    const Layout l = oracle::uniform_square(120, 5.0, 4);
    const ForceParams p;
    const auto exact = repulsion_exact(l, p).forces;
    CHECK(oracle::relative_l2(repulsion_rvs(l, p, {}, 119, 9).forces, exact) < 1e-12);
    const Layout two(std::vector<Vec2>{{0, 0}, {0.5, 0.2}});
    CHECK(oracle::relative_l2(repulsion_rvs(two, p, {}, 1, 1).forces, repulsion_exact(two, p).forces) < 1e-12);
  }

  TEST_CASE("random sampling is unbiased") {
    const Layout l = oracle::uniform_square(50, 3.0, 5);
    const ForceParams p;
    const auto mean = mean_rvs(l, p, 10, 10000);
    CHECK(oracle::relative_l2(mean, repulsion_exact(l, p).forces) < 0.01);
  }

  TEST_CASE("random sampling is deterministic and validates its sample size") {
    const Layout l = oracle::uniform_square(40, 3.0, 6);
    const ForceParams p;
    CHECK(repulsion_rvs(l, p, {}, 8, 3).forces == repulsion_rvs(l, p, {}, 8, 3).forces);
    CHECK(repulsion_rvs(l, p, {}, 8, 3).forces != repulsion_rvs(l, p, {}, 8, 4).forces);
    CHECK_THROWS_AS(repulsion_rvs(l, p, {}, 0, 1), ArgumentError);
    CHECK_THROWS_AS(repulsion_rvs(l, p, {}, 40, 1), ArgumentError);
    CHECK(default_sample_size(1000000) == 20);
    CHECK(default_sample_size(100) == 16);
    CHECK(default_sample_size(10) == 9);
  }

  TEST_CASE("ibFFT on two points") {
    const Layout l(std::vector<Vec2>{{0, 0}, {1, 0}});
    const ForceParams p;
    const auto f = repulsion_ibfft(l, p, GridPolicy{3}).forces;
    CHECK(f[0].x == Approx(-0.25).epsilon(0.02));
    CHECK(f[1].x == Approx(0.25).epsilon(0.02));
    CHECK(std::abs(f[0].y) < 0.005);
  }

  TEST_CASE("ibFFT accuracy improves with interpolation order") {
    const Layout l = oracle::uniform_square(3000, 40.0, 2);
    const ForceParams p;
    const auto exact = repulsion_exact(l, p).forces;
    const double e1 = oracle::relative_l2(repulsion_ibfft(l, p, GridPolicy{1}).forces, exact);
    const double e2 = oracle::relative_l2(repulsion_ibfft(l, p, GridPolicy{2}).forces, exact);
    const double e3 = oracle::relative_l2(repulsion_ibfft(l, p, GridPolicy{3}).forces, exact);
    CHECK(e3 < 0.01);
    CHECK(e1 > e3);
    CHECK(e2 > e3);
  }

  TEST_CASE("ibFFT with one node per interval evaluates the kernel at interval centers") {
    const Layout l = oracle::uniform_square(600, 20.0, 12);
    const ForceParams p;
    const GridPolicy policy{1};
    const InterpGrid grid = make_interp_grid(l, policy);
    auto center = [&](double t) {
      const double cell = std::min(std::floor(t / grid.interval_width), static_cast<double>(grid.intervals - 1));
      return (cell + 0.5) * grid.interval_width;
    };
    std::vector<Vec2> snapped(l.size()), expected(l.size());
    for (std::size_t i = 0; i < l.size(); ++i)
      snapped[i] = {center(l[i].x - grid.origin.x), center(l[i].y - grid.origin.y)};
    for (std::size_t i = 0; i < l.size(); ++i)
      for (std::size_t j = 0; j < l.size(); ++j) {
        const Vec2 d = snapped[i] - snapped[j];
        expected[i] += (l[i] - l[j]) / std::pow(1.0 + dot(d, d), 2.0);
      }
    CHECK(oracle::relative_l2(repulsion_ibfft(l, p, policy).forces, expected) < 1e-10);
  }

  TEST_CASE("ibFFT handles other exponents and scales") {
    const Layout l = oracle::uniform_square(800, 15.0, 8);
    for (double gamma : {1.5, 3.0}) {
      ForceParams p;
      p.gamma = gamma;
      p.repulsion_scale = 2.5;
      const auto exact = repulsion_exact(l, p).forces;
      CHECK(oracle::relative_l2(repulsion_ibfft(l, p, GridPolicy{3}).forces, exact) < 0.02);
    }
  }

  TEST_CASE("ibFFT self terms cancel for coincident points") {
    const Layout l(std::vector<Vec2>(5, Vec2{2.5, -1}));
    for (const Vec2& f : repulsion_ibfft(l, ForceParams{}, GridPolicy{3}).forces) CHECK(norm(f) < 1e-12);
    const auto grid = make_interp_grid(l, GridPolicy{3});
    CHECK(grid.span == 1.0);
  }

  TEST_CASE("ibFFT grid geometry") {
    const Layout l(std::vector<Vec2>{{0, 0}, {100, 30}});
    const auto grid = make_interp_grid(l, GridPolicy{2, 1.0, 50});
    CHECK(grid.intervals == 100);
    CHECK(grid.nodes_per_axis() == 200);
    CHECK(grid.node_offset(0) == Approx(0.25));
    const auto small = make_interp_grid(Layout(std::vector<Vec2>{{0, 0}, {3, 1}}), GridPolicy{1, 1.0, 50});
    CHECK(small.intervals == 50);
    CHECK_THROWS_AS(make_interp_grid(l, GridPolicy{4}), ArgumentError);
  }

  TEST_CASE("ibFFT rejects the power law") {
    ForceParams p;
    p.law = ForceLaw::Power;
    CHECK_THROWS_AS(repulsion_ibfft(oracle::uniform_square(10, 1, 1), p, GridPolicy{}), ArgumentError);
  }

  TEST_CASE("solvers are translation invariant") {
    const Layout l = oracle::uniform_square(500, 10.0, 11);
    const Layout moved = shifted(l, {123.5, -77.25});
    const ForceParams p;
    CHECK(oracle::relative_l2(repulsion_exact(moved, p).forces, repulsion_exact(l, p).forces) < 1e-9);
    CHECK(oracle::relative_l2(repulsion_bh(moved, p, {}, 0.5).forces, repulsion_bh(l, p, {}, 0.5).forces) < 1e-6);
    CHECK(oracle::relative_l2(repulsion_ibfft(moved, p, GridPolicy{3}).forces,
                              repulsion_ibfft(l, p, GridPolicy{3}).forces) < 1e-6);
    CHECK(oracle::relative_l2(repulsion_rvs(moved, p, {}, 20, 1).forces, repulsion_rvs(l, p, {}, 20, 1).forces) <
          1e-6);
  }

  TEST_CASE("masked solvers agree with the masked exact field") {
    const Graph g = oracle::random_graph(400, 0.01, 3);
    const Layout l = oracle::uniform_square(400, 8.0, 12);
    const ForceParams p;
    const RefinementMask mask(g, {5, 17, 200}, RefinementBoosts{4, 2, 3});
    const auto exact = repulsion_exact(l, p, mask).forces;
    CHECK(oracle::relative_l2(repulsion_bh(l, p, mask, 0.0).forces, exact) < 1e-9);
    CHECK(oracle::relative_l2(repulsion_rvs(l, p, mask, 399, 1).forces, exact) < 1e-12);
    CHECK(oracle::relative_l2(repulsion_bh(l, p, mask, 0.5).forces, exact) < 0.05);
    CHECK(oracle::relative_l2(repulsion_ibfft(l, p, GridPolicy{3}, mask).forces, exact) < 0.01);

    // Masked exact against a pairwise oracle with explicit boosts.
    std::vector<Vec2> direct(400);
    for (NodeId i = 0; i < 400; ++i)
      for (NodeId j = 0; j < 400; ++j)
        if (i != j) direct[i] += repulsive_force(l[i], l[j], p) * mask.repulsion_boost(i, j);
    CHECK(oracle::relative_l2(exact, direct) < 1e-12);
  }

  TEST_CASE("dynamic interpolation schedule") {
    auto split = [](int total) {
      std::array<int, 3> counts{};
      for (int k : dynamic_k_schedule(total)) ++counts[k - 1];
      return counts;
    };
    CHECK(split(300) == std::array<int, 3>{270, 15, 15});
    CHECK(split(20) == std::array<int, 3>{18, 1, 1});
    CHECK(split(10) == std::array<int, 3>{0, 0, 10});
    CHECK(split(1) == std::array<int, 3>{0, 0, 1});
    CHECK_THROWS_AS(dynamic_k_schedule(0), ArgumentError);
    const auto s = dynamic_k_schedule(137);
    CHECK(std::is_sorted(s.begin(), s.end()));
    CHECK(interpolation_order(KPolicy::Dynamic, 0, 300) == 1);
    CHECK(interpolation_order(KPolicy::Dynamic, 299, 300) == 3);
    CHECK(interpolation_order(KPolicy::Fixed2, 0, 300) == 2);
  }

  TEST_CASE("solver and policy names round trip") {
    for (auto kind : {SolverKind::Exact, SolverKind::BarnesHut, SolverKind::RandomSampling, SolverKind::Ibfft})
      CHECK(parse_solver_kind(to_string(kind)) == kind);
    for (auto policy : {KPolicy::Fixed1, KPolicy::Fixed2, KPolicy::Fixed3, KPolicy::Dynamic})
      CHECK(parse_k_policy(to_string(policy)) == policy);
    CHECK_FALSE(parse_solver_kind("fmm"));
    CHECK_FALSE(parse_k_policy("fixed4"));
  }

  TEST_CASE("dispatch tags fields with their solver and generation") {
    Layout l = oracle::uniform_square(64, 3.0, 1);
    l.generation = 42;
    SolverConfig cfg;
    cfg.kind = SolverKind::Ibfft;
    const auto f = compute_repulsion(l, ForceParams{}, {}, cfg, 2, 0);
    CHECK(f.generation == 42);
    CHECK(f.solver == SolverKind::Ibfft);
    CHECK(f.k_used == 2);
    cfg.kind = SolverKind::RandomSampling;
    CHECK(compute_repulsion(l, ForceParams{}, {}, cfg, 0, 0).solver == SolverKind::RandomSampling);
  }
}

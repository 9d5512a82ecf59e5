#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "tfdp/errors.hpp"
#include "tfdp/generators.hpp"
#include "tfdp/init.hpp"

using namespace tfdp;

namespace {

double mean_edge_length(const Graph& g, const Layout& l) {
  double total = 0;
  for (const auto& e : g.edges()) total += norm(l[e.u] - l[e.v]);
  return total / static_cast<double>(g.edge_count());
}

Vec2 centroid(const Layout& l) {
  Vec2 c;
  for (const auto& p : l.positions) c += p;
  return c / static_cast<double>(l.size());
}

}  // namespace

TEST_SUITE("init") {
  TEST_CASE("random init is deterministic and stays in the disc") {
    const Graph g = path_graph(100);
    const Layout a = init_random(g, 5, 2.0);
    CHECK(a.positions == init_random(g, 5, 2.0).positions);
    for (const auto& p : a.positions) CHECK(norm(p) <= 2.0);
    CHECK(a.positions != init_random(g, 6, 2.0).positions);
  }

  TEST_CASE("random init single node and bad radius") {
    const Graph g = path_graph(1);
    const Layout a = init_random(g, 1, 0.5);
    REQUIRE(a.size() == 1);
    CHECK(norm(a[0]) <= 0.5);
    CHECK_THROWS_AS(init_random(g, 1, 0.0), ArgumentError);
    CHECK_THROWS_AS(init_random(g, 1, -1.0), ArgumentError);
  }

  TEST_CASE("seed 1 and seed 2 differ") {
    const Graph g = path_graph(100);
    CHECK(init_random(g, 1, 1.0).positions != init_random(g, 2, 1.0).positions);
  }

  TEST_CASE("PivotMDS of a path is collinear and matches classical MDS") {
    const Graph g = path_graph(10);
    const Layout l = init_pivot_mds(g, 10, 0);
    const auto fw = oracle::floyd_warshall(g);
    std::vector<std::vector<double>> d(10, std::vector<double>(10));
    for (int i = 0; i < 10; ++i)
      for (int j = 0; j < 10; ++j) d[i][j] = fw[i][j];
    const auto mds = oracle::classical_mds(d);
    CHECK(mds.eigenvalues[1] == doctest::Approx(0.0).epsilon(1e-9).scale(mds.eigenvalues[0]));

    // Oracle coordinates scaled to unit mean edge length; compare up to sign.
    Layout expected;
    expected.positions = mds.coordinates;
    const double scale = mean_edge_length(g, expected);
    const double sign = (l[9].x - l[0].x) * (expected[9].x - expected[0].x) > 0 ? 1.0 : -1.0;
    for (int i = 0; i < 10; ++i) {
      CHECK(l[i].x == doctest::Approx(sign * expected[i].x / scale).epsilon(1e-6));
      CHECK(std::abs(l[i].y) < 1e-6);
    }
  }

  TEST_CASE("PivotMDS of K4 extracts the top of a degenerate spectrum") {
    // Four equidistant points need three dimensions; the 2D projection keeps
    // two of the three equal leading eigenvalues of the centered matrix.
    const Graph g = complete_graph(4);
    std::vector<std::vector<double>> d(4, std::vector<double>(4, 1.0));
    for (int i = 0; i < 4; ++i) d[i][i] = 0.0;
    const auto mds = oracle::classical_mds(d);
    CHECK(mds.eigenvalues[0] == doctest::Approx(0.5));
    CHECK(mds.eigenvalues[1] == doctest::Approx(0.5));
    CHECK(mds.eigenvalues[2] == doctest::Approx(0.5));
    CHECK(std::abs(mds.eigenvalues[3]) < 1e-12);

    const auto pivots = detail::select_pivots(g, 4, 0);
    const auto c = detail::centered_pivot_matrix(g, pivots);
    std::vector<double> gram(16, 0.0);
    for (int a = 0; a < 4; ++a)
      for (int b = 0; b < 4; ++b)
        for (int v = 0; v < 4; ++v) gram[a * 4 + b] += c[v * 4 + a] * c[v * 4 + b];
    const auto eig = detail::top_eigenpairs(gram, 4, 2, 1);
    CHECK(eig.values[0] == doctest::Approx(0.25).epsilon(1e-6));
    CHECK(eig.values[1] == doctest::Approx(0.25).epsilon(1e-6));

    const Layout l = init_pivot_mds(g, 4, 0);
    CHECK(mean_edge_length(g, l) == doctest::Approx(1.0).epsilon(1e-9));
    for (int i = 0; i < 4; ++i)
      for (int j = i + 1; j < 4; ++j) CHECK(norm(l[i] - l[j]) > 0.1);
  }

  TEST_CASE("PivotMDS output is centered with unit mean edge length") {
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
      const Graph g = oracle::random_graph(80, 0.06, seed);
      const Layout l = init_pivot_mds(g, 20, seed);
      const Vec2 c = centroid(l);
      CHECK(std::abs(c.x) < 1e-9);
      CHECK(std::abs(c.y) < 1e-9);
      CHECK(mean_edge_length(g, l) == doctest::Approx(1.0).epsilon(1e-9));
      CHECK(all_finite(l));
    }
  }

  TEST_CASE("PivotMDS is deterministic") {
    const Graph g = grid_graph(8, 9);
    CHECK(init_pivot_mds(g, 30, 4).positions == init_pivot_mds(g, 30, 4).positions);
  }

  TEST_CASE("power iteration yields orthogonal fixed points of the operator") {
    const Graph g = grid_graph(10, 12);
    const auto pivots = detail::select_pivots(g, 25, 2);
    const auto c = detail::centered_pivot_matrix(g, pivots);
    const std::size_t n = g.node_count(), p = pivots.size();
    std::vector<double> gram(p * p, 0.0);
    for (std::size_t a = 0; a < p; ++a)
      for (std::size_t b = 0; b < p; ++b)
        for (std::size_t v = 0; v < n; ++v) gram[a * p + b] += c[v * p + a] * c[v * p + b];
    const auto eig = detail::top_eigenpairs(gram, p, 2, 3);
    double dot01 = 0;
    for (std::size_t i = 0; i < p; ++i) dot01 += eig.vectors[0][i] * eig.vectors[1][i];
    CHECK(std::abs(dot01) < 1e-6);
    for (int k = 0; k < 2; ++k) {
      double residual = 0, scale = 0;
      for (std::size_t r = 0; r < p; ++r) {
        double gv = 0;
        for (std::size_t s = 0; s < p; ++s) gv += gram[r * p + s] * eig.vectors[k][s];
        residual += (gv - eig.values[k] * eig.vectors[k][r]) * (gv - eig.values[k] * eig.vectors[k][r]);
        scale += gv * gv;
      }
      CHECK(std::sqrt(residual / scale) < 1e-4);
    }
    CHECK(eig.values[0] >= eig.values[1]);
  }

  TEST_CASE("pivots follow the max-min rule with lowest-id ties") {
    const Graph g = path_graph(9);
    const auto pivots = detail::select_pivots(g, 3, 0);
    REQUIRE(pivots.size() == 3);
    const NodeId first = pivots[0];
    const NodeId far_end = first <= 4 ? 8 : 0;
    if (first != 4) CHECK(pivots[1] == far_end);
    else CHECK(pivots[1] == 0);  // both ends at distance 4; lower id wins
    CHECK(detail::select_pivots(g, 50, 0).size() == 9);
  }

  TEST_CASE("PivotMDS handles disconnected graphs and argument errors") {
    const Graph g(6, std::vector<Edge>{{0, 1}, {1, 2}, {3, 4}});
    const Layout l = init_pivot_mds(g, 6, 0);
    CHECK(all_finite(l));
    CHECK(mean_edge_length(g, l) == doctest::Approx(1.0));
    CHECK_THROWS_AS(init_pivot_mds(g, 0, 0), ArgumentError);
    const Layout single = init_pivot_mds(path_graph(1), 5, 0);
    CHECK(single.size() == 1);
    CHECK(all_finite(single));
  }
}

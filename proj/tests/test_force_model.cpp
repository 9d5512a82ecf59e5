#include <doctest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "tfdp/errors.hpp"
#include "tfdp/force_model.hpp"
#include "tfdp/generators.hpp"
#include "tfdp/repulsion.hpp"

using namespace tfdp;
using doctest::Approx;

TEST_SUITE("force_model") {
  TEST_CASE("t-force closed-form values") {
    CHECK(t_force(0.0, 1.0) == 0.0);
    CHECK(t_force(0.0, 3.5) == 0.0);
    CHECK(t_force(1.0, 1.0) == Approx(0.5));
    CHECK(t_force(1.0, 2.0) == Approx(0.25));
  }

  TEST_CASE("t-force maximizer for phi = 1") {
    const double peak = oracle::bisect([](double d) { return (1 - d * d) / ((1 + d * d) * (1 + d * d)); }, 0.1, 5.0);
    CHECK(peak == Approx(1.0).epsilon(1e-9));
    CHECK(t_force(peak, 1.0) == Approx(0.5));
  }

  TEST_CASE("t-force is bounded by its peak value") {
    for (double phi : {1.0, 1.5, 2.0, 3.0}) {
      const double peak_d = 1.0 / std::sqrt(2 * phi - 1);
      const double bound = t_force(peak_d, phi);
      const int samples = 1000000;
      double worst = 0.0;
      for (int k = 0; k < samples; ++k) {
        const double d = std::pow(10.0, -8.0 + 12.0 * k / (samples - 1));  // (1e-8, 1e4]
        worst = std::max(worst, t_force(d, phi));
      }
      CHECK(worst <= bound * (1 + 1e-12));
    }
  }

  TEST_CASE("t-force is linear near zero and decays as a power law") {
    for (double phi : {1.0, 2.0, 3.0}) {
      CHECK(t_force(1e-6, phi) / 1e-6 == Approx(1.0).epsilon(1e-9));
      const double d = 1e4;
      CHECK(t_force(d, phi) * std::pow(d, 2 * phi - 1) == Approx(1.0).epsilon(1e-6));
      CHECK(t_force(2 * d, phi) < t_force(d, phi));
    }
  }

  TEST_CASE("repulsion examples") {
    const ForceParams p;
    const Vec2 f = repulsive_force({1, 0}, {0, 0}, p);
    CHECK(f.x == Approx(0.25));
    CHECK(f.y == 0.0);
    CHECK(repulsive_force({2, 3}, {2, 3}, p) == Vec2{});
  }

  TEST_CASE("repulsion is antisymmetric and scales with rho") {
    std::mt19937_64 rng(1);
    std::uniform_real_distribution<double> u(-5, 5);
    ForceParams p;
    for (int k = 0; k < 200; ++k) {
      const Vec2 a{u(rng), u(rng)}, b{u(rng), u(rng)};
      p.gamma = 1.0 + (k % 7) * 0.5;
      p.repulsion_scale = 1.0;
      const Vec2 ab = repulsive_force(a, b, p), ba = repulsive_force(b, a, p);
      CHECK(ab.x == -ba.x);
      CHECK(ab.y == -ba.y);
      CHECK(norm(ab) == Approx(t_force(norm(a - b), p.gamma)));
      p.repulsion_scale = 3.0;
      CHECK(norm(repulsive_force(a, b, p)) == Approx(3 * norm(ab)));
    }
  }

  TEST_CASE("non-finite input raises a numeric error") {
    const ForceParams p;
    CHECK_THROWS_AS(repulsive_force({NAN, 0}, {0, 0}, p), NumericError);
    CHECK_THROWS_AS(attractive_force({0, 0}, {INFINITY, 0}, p), NumericError);
  }

  TEST_CASE("attraction examples") {
    ForceParams p;
    const Vec2 f = attractive_force({0, 0}, {1, 0}, p);
    CHECK(f.x == Approx(5.0));
    CHECK(f.y == 0.0);
    CHECK(attractive_force({1, 1}, {1, 1}, p) == Vec2{});
    const Vec2 far = attractive_force({0, 0}, {1000, 0}, p);
    CHECK(far.x - 1000.0 < 1e-2);
    CHECK(far.x > 1000.0);
  }

  TEST_CASE("power-law forces") {
    const auto a = power_forces({0, 0}, {2, 0}, 2, 1, 1);
    CHECK(a.attractive.x == Approx(4.0));
    CHECK(a.repulsive.x == Approx(-0.5));
    const auto b = power_forces({0, 0}, {0, 1}, 3.5, 0.7, 1);
    CHECK(b.attractive.y == Approx(1.0));
    CHECK(b.repulsive.y == Approx(-1.0));
    const auto c = power_forces({0, 0}, {0.1, 0}, 2, 1, 1);
    CHECK(norm(c.repulsive) == Approx(10.0));
    const auto d = power_forces({1, 1}, {1, 1}, 2, 1, 1);
    CHECK(d.degenerate);
    CHECK(d.repulsive == Vec2{});
    ForceParams fr;
    fr.law = ForceLaw::Power;
    CHECK(norm(attractive_force({0, 0}, {2, 0}, fr)) == Approx(4.0));
    CHECK(norm(repulsive_force({0, 0}, {2, 0}, fr)) == Approx(0.5));
  }

  TEST_CASE("resultant force on two connected nodes") {
    const Graph g = path_graph(2);
    const Layout l(std::vector<Vec2>{{0, 0}, {1, 0}});
    const ForceParams p;
    const auto field = repulsion_exact(l, p);
    const Vec2 f0 = resultant_force(0, l, g, p, {}, field);
    CHECK(f0.x == Approx(0.25));  // 0.5 attraction toward node 1 minus 0.25 repulsion
    CHECK(f0.y == 0.0);
    const Vec2 f1 = resultant_force(1, l, g, p, {}, field);
    CHECK(f1.x == Approx(-0.25));
  }

  TEST_CASE("identity mask reproduces unmasked forces bitwise") {
    const Graph g = oracle::random_graph(60, 0.08, 2);
    const Layout l = oracle::uniform_square(60, 5.0, 3);
    const ForceParams p;
    const auto field = repulsion_exact(l, p);
    const RefinementMask identity(g, {1, 2}, RefinementBoosts{});
    CHECK(resultant_forces(l, g, p, {}, field) == resultant_forces(l, g, p, identity, field));
    CHECK(repulsion_exact(l, p, identity).forces == field.forces);
  }

  TEST_CASE("isolated node feels only repulsion") {
    const Graph g(3, std::vector<Edge>{{0, 1}});
    const Layout l(std::vector<Vec2>{{0, 0}, {1, 0}, {0, 2}});
    const ForceParams p;
    const auto field = repulsion_exact(l, p);
    CHECK(resultant_force(2, l, g, p, {}, field) == field.forces[2]);
  }

  TEST_CASE("stale repulsion fields are rejected") {
    const Graph g = path_graph(2);
    Layout l(std::vector<Vec2>{{0, 0}, {1, 0}});
    const ForceParams p;
    const auto field = repulsion_exact(l, p);
    ++l.generation;
    CHECK_THROWS_AS(resultant_force(0, l, g, p, {}, field), StaleFieldError);
    CHECK_THROWS_AS(resultant_forces(l, g, p, {}, field), StaleFieldError);
  }

  TEST_CASE("potentials differentiate to the force magnitudes") {
    ForceParams p;
    const double h = 1e-6;
    auto rep = [&](double d) { return pair_potential(d, p).repulsive; };
    auto att = [&](double d) { return pair_potential(d, p).attractive; };
    CHECK(-oracle::central_difference(rep, 1.0, h) == Approx(0.25).epsilon(1e-6));
    CHECK(oracle::central_difference(att, 1.0, h) == Approx(5.0).epsilon(1e-6));
    CHECK(pair_potential(0.0, p).attractive == 0.0);

    std::mt19937_64 rng(8);
    std::uniform_real_distribution<double> ud(0.05, 20), ub(0, 20), ug(1.05, 6);
    for (int k = 0; k < 200; ++k) {
      const double d = ud(rng);
      p.beta = ub(rng);
      p.gamma = ug(rng);
      const double hd = 1e-5 * std::max(1.0, d);
      CHECK(-oracle::central_difference(rep, d, hd) == Approx(t_force(d, p.gamma)).epsilon(1e-5));
      CHECK(oracle::central_difference(att, d, hd) == Approx(d + p.beta * t_force(d, 1.0)).epsilon(1e-5));
    }
  }

  TEST_CASE("potential argument errors") {
    ForceParams p;
    p.gamma = 1.0;
    CHECK_THROWS_AS(pair_potential(1.0, p), ArgumentError);
    p.gamma = 2.0;
    CHECK_THROWS_AS(pair_potential(-0.5, p), ArgumentError);
  }

  TEST_CASE("parameter validation warns outside the stable region") {
    ForceParams p;
    CHECK(validate(p).empty());
    CHECK(p.alpha * (1 + p.beta) == Approx(0.9));
    p.alpha = 0.5;
    CHECK(validate(p).size() == 1);
    p = ForceParams{};
    p.gamma = 1.0;
    CHECK(validate(p).size() == 1);
    p.alpha = 0.5;
    CHECK(validate(p).size() == 2);
  }

  TEST_CASE("two connected nodes balance at the closed-form crossover") {
    const ForceParams p;
    auto net = [&](double d) { return p.alpha * (d + p.beta * d / (1 + d * d)) - t_force(d, p.gamma); };
    const double root = oracle::bisect(net, 0.01, 3.0);
    // 0.1 u^2 + 0.8 u - 1 = 0 with u = 1 + d^2
    const double u = (-0.8 + std::sqrt(0.64 + 0.4)) / 0.2;
    CHECK(root == Approx(std::sqrt(u - 1)).epsilon(1e-10));
  }

  TEST_CASE("refinement mask regions and boosts") {
    const Graph g = path_graph(6);  // 0-1-2-3-4-5
    const RefinementMask m(g, {2}, RefinementBoosts{4, 2, 3});
    CHECK(std::vector<NodeId>(m.region().begin(), m.region().end()) == std::vector<NodeId>{1, 2, 3});
    CHECK(m.repulsion_boost(1, 3) == 2.0);
    CHECK(m.repulsion_boost(0, 5) == 3.0);
    CHECK(m.repulsion_boost(0, 2) == 1.0);
    CHECK(m.attraction_boost(1, 2) == 4.0);
    CHECK(m.attraction_boost(3, 4) == 1.0);
    CHECK_THROWS_AS(RefinementMask(g, {6}, RefinementBoosts{}), ArgumentError);
    CHECK_THROWS_AS(RefinementMask(g, {1}, RefinementBoosts{0, 1, 1}), ArgumentError);
  }

  TEST_CASE("masked resultant applies the attraction boost on region edges") {
    const Graph g = path_graph(3);
    const Layout l(std::vector<Vec2>{{0, 0}, {1, 0}, {2, 0}});
    const ForceParams p;
    const RefinementMask m(g, {0}, RefinementBoosts{4, 1, 1});
    const auto field = repulsion_exact(l, p, m);
    const Vec2 f1 = resultant_force(1, l, g, p, m, field);
    // edge 0-1 is in the region (boost 4), edge 1-2 is not
    const double expected = field.forces[1].x + p.alpha * (-4 * 5.0 + 5.0);
    CHECK(f1.x == Approx(expected));
  }
}

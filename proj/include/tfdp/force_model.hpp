#pragma once

#include <cmath>
#include <span>
#include <string>
#include <vector>

#include "tfdp/geometry.hpp"
#include "tfdp/graph.hpp"
#include "tfdp/layout.hpp"

namespace tfdp {

enum class ForceLaw {
  TFdp,   ///< t-force repulsion, spring + t-force attraction
  Power,  ///< spring-electric baseline: attraction d^p, repulsion d^-q
};

struct ForceParams {
  double alpha = 0.1;            ///< weight of the attractive sum
  double beta = 8.0;             ///< weight of the short-range attractive t-force
  double gamma = 2.0;            ///< repulsive t-force exponent
  double repulsion_scale = 1.0;  ///< multiplies every repulsive force
  ForceLaw law = ForceLaw::TFdp;
  double power_p = 2.0;  ///< Power law only
  double power_q = 1.0;  ///< Power law only

  friend bool operator==(const ForceParams&, const ForceParams&) = default;
};

/// Human-readable warnings for parameters outside the stable region
/// (alpha*(1+beta) < 1 and gamma > 1 for the t-FDP law). Empty when valid.
std::vector<std::string> validate(const ForceParams& params);

/// Bounded short-range force d / (1 + d^2)^phi.
inline double t_force(double d, double phi) { return d / std::pow(1.0 + d * d, phi); }

/// Scalar repulsion weight w(d^2) such that the pair force on i is w * (xi - xj).
/// Integer exponents avoid pow() on the hot path.
class RepulsionKernel {
 public:
  explicit RepulsionKernel(const ForceParams& params);

  double operator()(double d2) const noexcept {
    switch (mode_) {
      case Mode::Gamma1:
        return scale_ / (1.0 + d2);
      case Mode::Gamma2: {
        const double q = 1.0 / (1.0 + d2);
        return scale_ * q * q;
      }
      case Mode::GammaGeneral:
        return scale_ * std::pow(1.0 + d2, -exponent_);
      case Mode::PowerLaw:
        return d2 > 0.0 ? scale_ * std::pow(d2, -exponent_) : 0.0;
    }
    return 0.0;
  }

  bool bounded() const noexcept { return mode_ != Mode::PowerLaw; }

 private:
  enum class Mode { Gamma1, Gamma2, GammaGeneral, PowerLaw };
  Mode mode_;
  double scale_;
  double exponent_;
};

/// Pushes xi away from xj. Zero when the points coincide; the runner jitters
/// coincident nodes apart before the next evaluation. Throws NumericError on
/// non-finite input.
Vec2 repulsive_force(Vec2 xi, Vec2 xj, const ForceParams& params);

/// Pulls xi toward xj along an edge. Magnitude d + beta*d/(1+d^2) for t-FDP,
/// d^p for the power law; alpha is applied by resultant_force.
Vec2 attractive_force(Vec2 xi, Vec2 xj, const ForceParams& params);

struct PowerForces {
  Vec2 attractive;       ///< alpha * d^p toward xj
  Vec2 repulsive;        ///< d^-q away from xj; zero when degenerate
  bool degenerate = false;  ///< d == 0: repulsion undefined
};

PowerForces power_forces(Vec2 xi, Vec2 xj, double p, double q, double alpha);

/// Repulsive potential rho*(1+d^2)^(1-gamma) / (2(gamma-1)) and attractive
/// potential d^2/2 + (beta/2) ln(1+d^2); -dV/dd gives the force magnitudes.
struct PairPotential {
  double repulsive = 0.0;
  double attractive = 0.0;
};

/// Throws ArgumentError for gamma <= 1 or d < 0.
PairPotential pair_potential(double d, const ForceParams& params);

struct RefinementBoosts {
  double attract = 1.0;         ///< on edges inside the focal region
  double focal_repel = 1.0;     ///< on repulsion between two region nodes
  double surround_repel = 1.0;  ///< on repulsion between two nodes outside the region

  bool is_identity() const noexcept {
    return attract == 1.0 && focal_repel == 1.0 && surround_repel == 1.0;
  }
};

/// Local force boosts around focal nodes. The region is the focal set plus its
/// one-ring; pairs with one endpoint inside and one outside are never boosted.
class RefinementMask {
 public:
  RefinementMask() = default;
  /// Throws ArgumentError when a focal id is out of range or a boost is not positive.
  RefinementMask(const Graph& g, std::vector<NodeId> focal, RefinementBoosts boosts);

  bool is_identity() const noexcept { return boosts_.is_identity(); }
  const RefinementBoosts& boosts() const noexcept { return boosts_; }
  std::span<const NodeId> focal() const noexcept { return focal_; }
  /// Sorted ids of focal nodes and their neighbors.
  std::span<const NodeId> region() const noexcept { return region_nodes_; }
  bool in_region(NodeId v) const noexcept { return v < in_region_.size() && in_region_[v]; }

  double repulsion_boost(NodeId i, NodeId j) const noexcept {
    if (is_identity()) return 1.0;
    const bool a = in_region(i), b = in_region(j);
    if (a && b) return boosts_.focal_repel;
    if (!a && !b) return boosts_.surround_repel;
    return 1.0;
  }
  double attraction_boost(NodeId i, NodeId j) const noexcept {
    return in_region(i) && in_region(j) ? boosts_.attract : 1.0;
  }

 private:
  std::vector<NodeId> focal_;
  std::vector<NodeId> region_nodes_;
  std::vector<bool> in_region_;
  RefinementBoosts boosts_;
};

struct RepulsionField;

/// Repulsion(i) from a precomputed field plus alpha times the (boosted)
/// attractive forces over i's edges. Throws StaleFieldError when the field was
/// computed for another layout generation.
Vec2 resultant_force(NodeId i, const Layout& layout, const Graph& g, const ForceParams& params,
                     const RefinementMask& mask, const RepulsionField& repulsion);

/// resultant_force for every node, in parallel.
std::vector<Vec2> resultant_forces(const Layout& layout, const Graph& g, const ForceParams& params,
                                   const RefinementMask& mask, const RepulsionField& repulsion);

}  // namespace tfdp

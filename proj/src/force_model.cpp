#include "tfdp/force_model.hpp"

#include <algorithm>
#include <sstream>

#include "tfdp/errors.hpp"
#include "tfdp/repulsion_field.hpp"

namespace tfdp {

std::vector<std::string> validate(const ForceParams& params) {
  std::vector<std::string> warnings;
  if (params.law == ForceLaw::TFdp) {
    if (!(params.alpha * (1.0 + params.beta) < 1.0)) {
      std::ostringstream msg;
      msg << "alpha*(1+beta) = " << params.alpha * (1.0 + params.beta)
          << " >= 1: attraction dominates repulsion at short range";
      warnings.push_back(msg.str());
    }
    if (!(params.gamma > 1.0)) {
      std::ostringstream msg;
      msg << "gamma = " << params.gamma << " <= 1: repulsion may exceed the short-range attraction";
      warnings.push_back(msg.str());
    }
  }
  if (!(params.alpha > 0.0)) warnings.push_back("alpha must be positive");
  if (params.beta < 0.0) warnings.push_back("beta must be nonnegative");
  if (!(params.repulsion_scale > 0.0)) warnings.push_back("repulsion_scale must be positive");
  if (params.law == ForceLaw::Power && (params.power_p < 0.0 || !(params.power_q > 0.0))) {
    warnings.push_back("power law needs p >= 0 and q > 0");
  }
  return warnings;
}

RepulsionKernel::RepulsionKernel(const ForceParams& params) : scale_(params.repulsion_scale) {
  if (params.law == ForceLaw::Power) {
    mode_ = Mode::PowerLaw;
    exponent_ = 0.5 * (params.power_q + 1.0);  // |d|^-q * unit vector = (d^2)^-(q+1)/2 * diff
  } else {
    exponent_ = params.gamma;
    mode_ = params.gamma == 1.0 ? Mode::Gamma1 : params.gamma == 2.0 ? Mode::Gamma2 : Mode::GammaGeneral;
  }
}

namespace {

void require_finite(Vec2 a, Vec2 b) {
  if (!is_finite(a) || !is_finite(b)) throw NumericError("non-finite coordinate in force evaluation");
}

}  // namespace

Vec2 repulsive_force(Vec2 xi, Vec2 xj, const ForceParams& params) {
  require_finite(xi, xj);
  const Vec2 diff = xi - xj;
  const double d2 = norm2(diff);
  if (d2 == 0.0) return {};
  return diff * RepulsionKernel(params)(d2);
}

Vec2 attractive_force(Vec2 xi, Vec2 xj, const ForceParams& params) {
  require_finite(xi, xj);
  const Vec2 diff = xj - xi;
  const double d2 = norm2(diff);
  if (d2 == 0.0) return {};
  if (params.law == ForceLaw::Power) {
    // d^p along the unit vector = d^(p-1) * diff
    return diff * std::pow(d2, 0.5 * (params.power_p - 1.0));
  }
  // (d + beta d/(1+d^2)) along diff/d
  return diff * (1.0 + params.beta / (1.0 + d2));
}

PowerForces power_forces(Vec2 xi, Vec2 xj, double p, double q, double alpha) {
  require_finite(xi, xj);
  if (p < 0.0 || !(q > 0.0)) throw ArgumentError("power forces need p >= 0 and q > 0");
  PowerForces out;
  const Vec2 diff = xj - xi;
  const double d = norm(diff);
  if (d == 0.0) {
    out.degenerate = true;
    return out;
  }
  const Vec2 unit = diff / d;
  out.attractive = unit * (alpha * std::pow(d, p));
  out.repulsive = unit * -std::pow(d, -q);
  return out;
}

PairPotential pair_potential(double d, const ForceParams& params) {
  if (!(params.gamma > 1.0)) throw ArgumentError("repulsive potential diverges for gamma <= 1");
  if (d < 0.0) throw ArgumentError("distance must be nonnegative");
  const double s = 1.0 + d * d;
  return {params.repulsion_scale * std::pow(s, 1.0 - params.gamma) / (2.0 * (params.gamma - 1.0)),
          0.5 * d * d + 0.5 * params.beta * std::log(s)};
}

RefinementMask::RefinementMask(const Graph& g, std::vector<NodeId> focal, RefinementBoosts boosts)
    : focal_(std::move(focal)), in_region_(g.node_count(), false), boosts_(boosts) {
  if (!(boosts.attract > 0.0) || !(boosts.focal_repel > 0.0) || !(boosts.surround_repel > 0.0)) {
    throw ArgumentError("refinement boosts must be positive");
  }
  std::sort(focal_.begin(), focal_.end());
  focal_.erase(std::unique(focal_.begin(), focal_.end()), focal_.end());
  for (NodeId f : focal_) {
    if (f >= g.node_count()) throw ArgumentError("focal node " + std::to_string(f) + " out of range");
    in_region_[f] = true;
    for (NodeId w : g.neighbors(f)) in_region_[w] = true;
  }
  for (std::size_t v = 0; v < in_region_.size(); ++v)
    if (in_region_[v]) region_nodes_.push_back(static_cast<NodeId>(v));
}

namespace {

Vec2 attraction_sum(NodeId i, const Layout& layout, const Graph& g, const ForceParams& params,
                    const RefinementMask& mask) {
  Vec2 sum;
  const Vec2 xi = layout[i];
  const bool power = params.law == ForceLaw::Power;
  for (NodeId j : g.neighbors(i)) {
    const Vec2 diff = layout[j] - xi;
    const double d2 = norm2(diff);
    if (d2 == 0.0) continue;
    const double w = power ? std::pow(d2, 0.5 * (params.power_p - 1.0)) : 1.0 + params.beta / (1.0 + d2);
    sum += diff * (w * mask.attraction_boost(i, j));
  }
  return sum;
}

void check_field(const Layout& layout, const Graph& g, const RepulsionField& repulsion) {
  if (repulsion.generation != layout.generation) {
    throw StaleFieldError("repulsion field generation " + std::to_string(repulsion.generation) +
                          " does not match layout generation " + std::to_string(layout.generation));
  }
  if (repulsion.forces.size() != layout.size() || layout.size() != g.node_count()) {
    throw ArgumentError("layout, graph and repulsion field sizes differ");
  }
}

}  // namespace

Vec2 resultant_force(NodeId i, const Layout& layout, const Graph& g, const ForceParams& params,
                     const RefinementMask& mask, const RepulsionField& repulsion) {
  check_field(layout, g, repulsion);
  return repulsion.forces[i] + attraction_sum(i, layout, g, params, mask) * params.alpha;
}

std::vector<Vec2> resultant_forces(const Layout& layout, const Graph& g, const ForceParams& params,
                                   const RefinementMask& mask, const RepulsionField& repulsion) {
  check_field(layout, g, repulsion);
  std::vector<Vec2> out(layout.size());
  const auto n = static_cast<std::int64_t>(layout.size());
#pragma omp parallel for schedule(static)
  for (std::int64_t i = 0; i < n; ++i) {
    const auto v = static_cast<NodeId>(i);
    out[v] = repulsion.forces[v] + attraction_sum(v, layout, g, params, mask) * params.alpha;
  }
  return out;
}

}  // namespace tfdp

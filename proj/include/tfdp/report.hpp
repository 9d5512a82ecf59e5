#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include <json.hpp>

#include "tfdp/force_model.hpp"
#include "tfdp/metrics.hpp"
#include "tfdp/repulsion.hpp"

namespace tfdp {

/// How a layout was produced, attached to serialized reports.
struct Provenance {
  std::optional<SolverConfig> solver;
  std::optional<ForceParams> params;
  std::optional<std::uint64_t> seed;
  std::string init;  ///< "random", "pmds" or empty when unknown
};

nlohmann::json to_json(const ForceParams& params);
nlohmann::json to_json(const SolverConfig& solver);

/// Every computed metric plus sampling notes: SE normalization uses included
/// finite-distance pairs, empty-ring nodes score 1 in NP, MA averages nodes of
/// degree >= 2.
nlohmann::json to_json(const MetricsReport& report, const Provenance& provenance = {});

}  // namespace tfdp

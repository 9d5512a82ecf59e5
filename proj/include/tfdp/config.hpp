#pragma once

#include <string>
#include <string_view>

#include "tfdp/force_model.hpp"
#include "tfdp/runner.hpp"

namespace tfdp {

/// Force law by name: "tfdp" or "power:p,q". Throws ArgumentError.
void apply_force_law(std::string_view text, ForceParams& params);
std::string force_law_string(const ForceParams& params);

/// Flat "key = value" lines; '#' starts a comment. Keys: alpha, beta, gamma,
/// rho, law, solver, theta, sample_size, k_policy, iterations, step0, cooling,
/// seed, jitter_eps, max_move. Unknown keys and bad values throw ParseError.
void apply_config(std::string_view text, ForceParams& params, RunConfig& run);

/// Every key above, one per line, readable by apply_config.
std::string write_config(const ForceParams& params, const RunConfig& run);

}  // namespace tfdp

#include "tfdp/report.hpp"

#include "tfdp/config.hpp"

namespace tfdp {

nlohmann::json to_json(const ForceParams& params) {
  return {{"alpha", params.alpha}, {"beta", params.beta}, {"gamma", params.gamma},
          {"rho", params.repulsion_scale}, {"law", force_law_string(params)}};
}

nlohmann::json to_json(const SolverConfig& solver) {
  nlohmann::json out = {{"kind", to_string(solver.kind)}};
  switch (solver.kind) {
    case SolverKind::BarnesHut:
      out["theta"] = solver.theta;
      break;
    case SolverKind::RandomSampling:
      out["sample_size"] = solver.sample_size;
      break;
    case SolverKind::Ibfft:
      out["k_policy"] = to_string(solver.k_policy);
      out["intervals_per_unit"] = solver.intervals_per_unit;
      break;
    case SolverKind::Exact:
      break;
  }
  return out;
}

nlohmann::json to_json(const MetricsReport& report, const Provenance& provenance) {
  nlohmann::json out = nlohmann::json::object();
  auto put = [&out](const char* key, const std::optional<double>& v) {
    if (v) out[key] = *v;
  };
  put("se", report.se);
  put("scale_factor", report.scale_factor);
  put("np1", report.np1);
  put("np2", report.np2);
  put("cl", report.cl);
  put("ma", report.ma);
  nlohmann::json sampling = {{"se_sampled", report.sampled},
                             {"se_pairs", report.se_pairs},
                             {"se_normalization", "included finite-distance pairs"},
                             {"np_empty_ring", "scores 1"},
                             {"ma_nodes", report.ma_nodes},
                             {"isolated_nodes", report.isolated_nodes}};
  nlohmann::json prov = nlohmann::json::object();
  if (provenance.solver) prov["solver"] = to_json(*provenance.solver);
  if (provenance.params) prov["params"] = to_json(*provenance.params);
  if (provenance.seed) prov["seed"] = *provenance.seed;
  if (!provenance.init.empty()) prov["init"] = provenance.init;
  out["sampling"] = std::move(sampling);
  out["provenance"] = std::move(prov);
  if (!report.notes.empty()) out["notes"] = report.notes;
  return out;
}

}  // namespace tfdp

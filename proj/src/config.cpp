#include "tfdp/config.hpp"

#include <charconv>
#include <sstream>

#include "tfdp/errors.hpp"

namespace tfdp {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

template <class T>
bool parse_number(std::string_view text, T& out) {
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), out);
  return !text.empty() && ec == std::errc{} && ptr == text.data() + text.size();
}

}  // namespace

void apply_force_law(std::string_view text, ForceParams& params) {
  if (text == "tfdp") {
    params.law = ForceLaw::TFdp;
    return;
  }
  constexpr std::string_view prefix = "power:";
  if (text.starts_with(prefix)) {
    const auto args = text.substr(prefix.size());
    const auto comma = args.find(',');
    double p = 0.0, q = 0.0;
    if (comma != std::string_view::npos && parse_number(args.substr(0, comma), p) &&
        parse_number(args.substr(comma + 1), q) && p >= 0.0 && q > 0.0) {
      params.law = ForceLaw::Power;
      params.power_p = p;
      params.power_q = q;
      return;
    }
  }
  throw ArgumentError("force law must be 'tfdp' or 'power:p,q' with p >= 0, q > 0, got '" + std::string(text) + "'");
}

std::string force_law_string(const ForceParams& params) {
  if (params.law == ForceLaw::TFdp) return "tfdp";
  std::ostringstream out;
  out.precision(17);
  out << "power:" << params.power_p << ',' << params.power_q;
  return out.str();
}

void apply_config(std::string_view text, ForceParams& params, RunConfig& run) {
  std::size_t line_no = 0;
  while (!text.empty()) {
    const auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) throw ParseError(line_no, "expected key = value");
    const std::string_view key = trim(line.substr(0, eq));
    const std::string_view value = trim(line.substr(eq + 1));
    auto bad = [&]() { return ParseError(line_no, "bad value '" + std::string(value) + "' for " + std::string(key)); };
    auto real = [&](double& field) {
      if (!parse_number(value, field)) throw bad();
    };
    auto whole = [&](auto& field) {
      if (!parse_number(value, field)) throw bad();
    };
    if (key == "alpha") real(params.alpha);
    else if (key == "beta") real(params.beta);
    else if (key == "gamma") real(params.gamma);
    else if (key == "rho") real(params.repulsion_scale);
    else if (key == "theta") real(run.solver.theta);
    else if (key == "step0") real(run.step0);
    else if (key == "jitter_eps") real(run.jitter_eps);
    else if (key == "max_move") real(run.max_move);
    else if (key == "sample_size") whole(run.solver.sample_size);
    else if (key == "iterations") whole(run.iterations);
    else if (key == "seed") whole(run.seed);
    else if (key == "law") {
      try {
        apply_force_law(value, params);
      } catch (const ArgumentError&) {
        throw bad();
      }
    } else if (key == "solver") {
      const auto kind = parse_solver_kind(value);
      if (!kind) throw bad();
      run.solver.kind = *kind;
    } else if (key == "k_policy") {
      const auto policy = parse_k_policy(value);
      if (!policy) throw bad();
      run.solver.k_policy = *policy;
    } else if (key == "cooling") {
      if (value == "linear") run.cooling = Cooling::Linear;
      else if (value == "constant") run.cooling = Cooling::Constant;
      else throw bad();
    } else {
      throw ParseError(line_no, "unknown key '" + std::string(key) + "'");
    }
  }
}

std::string write_config(const ForceParams& params, const RunConfig& run) {
  std::ostringstream out;
  out.precision(17);
  out << "alpha = " << params.alpha << '\n'
      << "beta = " << params.beta << '\n'
      << "gamma = " << params.gamma << '\n'
      << "rho = " << params.repulsion_scale << '\n'
      << "law = " << force_law_string(params) << '\n'
      << "solver = " << to_string(run.solver.kind) << '\n'
      << "theta = " << run.solver.theta << '\n'
      << "sample_size = " << run.solver.sample_size << '\n'
      << "k_policy = " << to_string(run.solver.k_policy) << '\n'
      << "iterations = " << run.iterations << '\n'
      << "step0 = " << run.step0 << '\n'
      << "cooling = " << (run.cooling == Cooling::Linear ? "linear" : "constant") << '\n'
      << "seed = " << run.seed << '\n'
      << "jitter_eps = " << run.jitter_eps << '\n'
      << "max_move = " << run.max_move << '\n';
  return out.str();
}

}  // namespace tfdp

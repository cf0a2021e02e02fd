#include "vaa/reports.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "json.hpp"
#include "vaa/errors.hpp"

namespace vaa {

namespace {

using nlohmann::json;

json number_or_null(double x) { return std::isfinite(x) ? json(x) : json(nullptr); }

json pe_json(const std::optional<PEReport>& report, double window, const char* signal) {
  if (!report) return nullptr;
  json windows = json::array();
  for (const auto& [t, l2] : report->per_window) windows.push_back(json::array({t, l2}));
  return {{"signal", signal},
          {"window", window},
          {"min_lambda2", report->min_lambda2},
          {"per_window", std::move(windows)}};
}

json verdict_json(const ConvergenceVerdict& v) {
  return {{"basin", std::string(to_string(v.basin))},
          {"terminal_attitude_error", number_or_null(v.terminal_attitude_error)},
          {"terminal_velocity_error", number_or_null(v.terminal_velocity_error)}};
}

SampledSignal column_signal(const TrajectoryRecord& record) {
  SampledSignal s{record.rows.front().t, record.dt, {}};
  s.values.reserve(record.rows.size());
  for (const auto& row : record.rows) s.values.push_back(row.v - row.z);
  return s;
}

}  // namespace

TrajectoryAnalysis analyze_trajectory(const TrajectoryRecord& record,
                                      const AnalyzeOptions& options) {
  if (record.rows.empty()) throw ConfigError("trajectory has no rows");
  TrajectoryAnalysis out;
  out.scenario = record.scenario;
  out.rows = record.rows.size();
  out.initial_attitude_error = record.rows.front().att_err;
  out.verdict = classify_convergence(record, options.thresholds);
  out.pe_window = options.pe_window;

  out.lyapunov_initial = record.rows.front().lyap;
  out.lyapunov_final = record.rows.back().lyap;
  out.lyapunov_max_increase = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 1; i < record.rows.size(); ++i) {
    out.lyapunov_max_increase =
        std::max(out.lyapunov_max_increase, record.rows[i].lyap - record.rows[i - 1].lyap);
  }
  if (record.rows.size() < 2) out.lyapunov_max_increase = 0.0;

  if (record.dt > 0.0 && record.rows.size() >= 2 &&
      options.pe_window <= static_cast<double>(record.rows.size() - 1) * record.dt) {
    out.pe_relative_velocity = gram_lambda2(column_signal(record), options.pe_window);
    if (record.rows.size() >= 3) {
      SampledSignal force{record.rows.front().t, record.dt, {}};
      for (std::size_t i = 0; i + 1 < record.rows.size(); ++i) {
        force.values.push_back((record.rows[i + 1].v - record.rows[i].v) / record.dt -
                               record.gravity);
      }
      if (options.pe_window <= force.horizon()) {
        out.pe_specific_force = gram_lambda2(force, options.pe_window);
      }
    }
  }

  if (options.synchrony_scenario) {
    const Scenario& sc = *options.synchrony_scenario;
    out.synchrony_residual = synchrony_residual(
        sc.inputs, sc.x0, GroupElement{sc.obs0.Rhat, sc.obs0.vhat},
        GroupElement{Rotation::identity(), sc.obs0.z}, options.synchrony_horizon,
        options.synchrony_step);
  }
  return out;
}

std::string analysis_to_json(const TrajectoryAnalysis& a) {
  const json doc = {
      {"schema", kAnalysisSchema},
      {"scenario", a.scenario},
      {"rows", a.rows},
      {"initial_attitude_error", a.initial_attitude_error},
      {"verdict", verdict_json(a.verdict)},
      {"pe",
       {{"relative_velocity", pe_json(a.pe_relative_velocity, a.pe_window, "v-z")},
        {"specific_force", pe_json(a.pe_specific_force, a.pe_window, "Ra")}}},
      {"lyapunov",
       {{"initial", a.lyapunov_initial},
        {"final", a.lyapunov_final},
        {"max_increase", a.lyapunov_max_increase}}},
      {"synchrony_residual",
       a.synchrony_residual ? json(*a.synchrony_residual) : json(nullptr)},
  };
  return doc.dump(2);
}

std::string monte_carlo_to_json(const Scenario& base, const MonteCarloOptions& options,
                                const std::vector<MonteCarloRun>& runs) {
  json list = json::array();
  std::size_t stable = 0;
  std::size_t unstable = 0;
  std::size_t diverged = 0;
  for (const auto& r : runs) {
    switch (r.verdict.basin) {
      case Basin::stable_identity:
        ++stable;
        break;
      case Basin::near_unstable_set:
        ++unstable;
        break;
      case Basin::diverged:
        ++diverged;
        break;
    }
    json entry = verdict_json(r.verdict);
    entry["index"] = r.index;
    entry["initial_attitude_error"] = r.initial_attitude_error;
    entry["axis_index"] = r.axis_index;
    entry["vhat0"] = json::array({r.vhat0[0], r.vhat0[1], r.vhat0[2]});
    list.push_back(std::move(entry));
  }
  const json doc = {
      {"schema", kMonteCarloSchema},
      {"base", base.name},
      {"n", options.n},
      {"seed", options.seed},
      {"horizon", base.horizon},
      {"dt", base.dt},
      {"integrator", std::string(to_string(base.integrator))},
      {"summary",
       {{"stable_identity", stable}, {"near_unstable_set", unstable}, {"diverged", diverged}}},
      {"runs", std::move(list)},
  };
  return doc.dump(2);
}

}  // namespace vaa

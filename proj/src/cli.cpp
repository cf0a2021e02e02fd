#include "vaa/cli.hpp"

#include <fstream>
#include <optional>
#include <ostream>
#include <string>

#include "CLI11.hpp"
#include "vaa/errors.hpp"
#include "vaa/monte_carlo.hpp"
#include "vaa/reports.hpp"
#include "vaa/scenario_io.hpp"
#include "vaa/simulator.hpp"
#include "vaa/trajectory.hpp"

namespace vaa {

namespace {

void write_text(const std::string& path, const std::string& text) {
  std::ofstream file(path, std::ios::binary);
  if (!file) throw ConfigError("cannot open '" + path + "' for writing");
  file << text << '\n';
  if (!file) throw ConfigError("failed writing '" + path + "'");
}

struct Overrides {
  std::optional<double> dt;
  std::optional<double> horizon;
  std::optional<std::string> integrator;

  void add_to(CLI::App& cmd) {
    cmd.add_option("--dt", dt, "Override the integration step (s)");
    cmd.add_option("--horizon", horizon, "Override the simulated horizon (s)");
    cmd.add_option("--integrator", integrator, "Override the scheme: euler, rk4, geometric_euler");
  }

  void apply(Scenario& sc) const {
    if (dt) sc.dt = *dt;
    if (horizon) sc.horizon = *horizon;
    if (integrator) sc.integrator = parse_integrator(*integrator);
    sc.validate();
  }
};

bool is_builtin(const std::string& name) {
  for (const auto& b : builtin_scenarios()) {
    if (b.name == name) return true;
  }
  return false;
}

}  // namespace

int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Velocity-aided attitude observer simulator", "vaa_sim"};
  app.require_subcommand(1);

  std::string scenario_name;
  std::string out_path;
  Overrides run_overrides;
  auto* run_cmd = app.add_subcommand("run", "Simulate a scenario and write the trajectory CSV");
  run_cmd->add_option("--scenario", scenario_name, "Built-in name or scenario JSON file")
      ->required();
  run_cmd->add_option("--out", out_path, "Output CSV path")->required();
  run_overrides.add_to(*run_cmd);

  std::size_t mc_n = 0;
  std::uint64_t mc_seed = 0;
  std::string mc_scenario = "paper2022";
  std::string mc_out;
  Overrides mc_overrides;
  auto* mc_cmd = app.add_subcommand("montecarlo", "Randomized initial observer states");
  mc_cmd->add_option("--n", mc_n, "Number of runs")->required()->check(CLI::PositiveNumber);
  mc_cmd->add_option("--seed", mc_seed, "64-bit seed")->required();
  mc_cmd->add_option("--out", mc_out, "Output JSON path")->required();
  mc_cmd->add_option("--scenario", mc_scenario, "Base scenario (default paper2022)");
  mc_overrides.add_to(*mc_cmd);

  std::string traj_path;
  std::string analyze_out;
  std::string analyze_scenario;
  double pe_window = 2.0;
  auto* an_cmd = app.add_subcommand("analyze", "PE reports, verdict and synchrony for a CSV");
  an_cmd->add_option("--traj", traj_path, "Trajectory CSV")->required();
  an_cmd->add_option("--out", analyze_out, "Output JSON path")->required();
  an_cmd->add_option("--window", pe_window, "PE window (s)")->check(CLI::PositiveNumber);
  an_cmd->add_option("--scenario", analyze_scenario,
                     "Scenario for the synchrony residual (default: the CSV's scenario if "
                     "built in)");

  auto* list_cmd = app.add_subcommand("scenarios", "List built-in scenarios");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitBadConfig;
  }

  try {
    if (*run_cmd) {
      Scenario sc = load_scenario(scenario_name);
      run_overrides.apply(sc);
      const TrajectoryRecord record = run(sc);
      write_trajectory_csv(out_path, record);
      out << "wrote " << record.rows.size() << " rows to " << out_path << '\n';
    } else if (*mc_cmd) {
      Scenario base = load_scenario(mc_scenario);
      mc_overrides.apply(base);
      MonteCarloOptions options;
      options.n = mc_n;
      options.seed = mc_seed;
      const auto runs = monte_carlo(base, options);
      write_text(mc_out, monte_carlo_to_json(base, options, runs));
      std::size_t stable = 0;
      for (const auto& r : runs) stable += r.verdict.basin == Basin::stable_identity ? 1 : 0;
      out << stable << "/" << runs.size() << " runs converged to the identity\n";
    } else if (*an_cmd) {
      const TrajectoryRecord record = read_trajectory_csv(traj_path);
      AnalyzeOptions options;
      options.pe_window = pe_window;
      if (!analyze_scenario.empty()) {
        options.synchrony_scenario = load_scenario(analyze_scenario);
      } else if (is_builtin(record.scenario)) {
        options.synchrony_scenario = builtin_scenario(record.scenario);
      }
      const TrajectoryAnalysis analysis = analyze_trajectory(record, options);
      write_text(analyze_out, analysis_to_json(analysis));
      out << "verdict: " << to_string(analysis.verdict.basin) << '\n';
    } else if (*list_cmd) {
      for (const auto& b : builtin_scenarios()) {
        out << b.name << "  " << b.description << '\n';
      }
    }
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << '\n';
    return kExitBadConfig;
  } catch (const NumericalError& e) {
    err << "numerical abort: " << e.what() << '\n';
    return kExitNumerical;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kExitBadConfig;
  }
  return kExitOk;
}

}  // namespace vaa

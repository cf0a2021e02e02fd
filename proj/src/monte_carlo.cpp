#include "vaa/monte_carlo.hpp"

#include <algorithm>
#include <atomic>
#include <limits>
#include <stdexcept>
#include <thread>

#include "vaa/errors.hpp"
#include "vaa/random.hpp"

namespace vaa {

Scenario monte_carlo_scenario(const Scenario& base, const MonteCarloOptions& options,
                              std::size_t index, MonteCarloRun* sampled) {
  Scenario sc = base;
  sc.name = base.name + "#" + std::to_string(index);
  MonteCarloRun info;
  info.index = index;
  if (!options.zero_perturbation) {
    CounterRng rng = CounterRng::for_stream(options.seed, index);
    const auto& grid = sphere_grid_162();
    info.axis_index = static_cast<std::size_t>(rng.below(grid.size()));
    // 1 - u lies in (0, 1], so the angle lies in (0, max_initial_angle].
    const double angle = options.max_initial_angle * (1.0 - rng.uniform());
    info.vhat0 = {rng.uniform(-options.vhat_range, options.vhat_range),
                  rng.uniform(-options.vhat_range, options.vhat_range),
                  rng.uniform(-options.vhat_range, options.vhat_range)};
    sc.obs0.Rhat = exp_so3(angle * grid[info.axis_index]) * base.x0.R;
    sc.obs0.vhat = info.vhat0;
  } else {
    info.vhat0 = base.obs0.vhat;
  }
  info.initial_attitude_error = attitude_angle(error_state(sc.x0, sc.obs0).R_E);
  if (sampled != nullptr) *sampled = info;
  return sc;
}

std::vector<MonteCarloRun> monte_carlo(const Scenario& base, const MonteCarloOptions& options) {
  if (options.n < 1) {
    throw std::invalid_argument("monte_carlo: n must be at least 1");
  }
  base.validate();
  std::vector<MonteCarloRun> runs(options.n);
  std::atomic<std::size_t> next{0};
  const auto worker = [&] {
    for (std::size_t i = next++; i < options.n; i = next++) {
      MonteCarloRun& out = runs[i];
      const Scenario sc = monte_carlo_scenario(base, options, i, &out);
      try {
        out.verdict = classify_convergence(run(sc), options.thresholds);
      } catch (const NumericalError&) {
        out.verdict.basin = Basin::diverged;
        out.verdict.terminal_attitude_error = std::numeric_limits<double>::quiet_NaN();
        out.verdict.terminal_velocity_error = std::numeric_limits<double>::quiet_NaN();
      }
    }
  };
  unsigned workers = options.workers != 0 ? options.workers : std::thread::hardware_concurrency();
  workers = std::clamp<unsigned>(workers, 1, static_cast<unsigned>(options.n));
  std::vector<std::jthread> pool;
  pool.reserve(workers - 1);
  for (unsigned w = 1; w < workers; ++w) pool.emplace_back(worker);
  worker();
  pool.clear();  // join before the results are moved out
  return runs;
}

}  // namespace vaa

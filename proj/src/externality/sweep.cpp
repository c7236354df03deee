#include "netshare/externality/sweep.hpp"

#include <algorithm>
#include <stdexcept>

#include "netshare/netsim/statistics.hpp"
#include "netshare/rng.hpp"

namespace netshare::externality {

namespace {
enum StreamTag : std::uint64_t { kSimulate = 21, kBootstrap = 22 };
}

SweepResult sweep_network_size(const netsim::ScenarioConfig& config, const std::vector<double>& n_grid, int drops,
                               int slots, std::uint64_t seed, const SweepOptions& options) {
  if (n_grid.empty()) throw std::invalid_argument("sweep_network_size: empty n grid");
  for (std::size_t i = 0; i < n_grid.size(); ++i) {
    if (!(n_grid[i] > 0.0 && n_grid[i] <= 1.0)) {
      throw std::invalid_argument("sweep_network_size: n values must lie in (0, 1]");
    }
    if (i > 0 && !(n_grid[i] > n_grid[i - 1])) {
      throw std::invalid_argument("sweep_network_size: n grid must be strictly ascending");
    }
  }

  SweepResult result;
  for (std::size_t i = 0; i < n_grid.size(); ++i) {
    const std::uint64_t point_seed = derive_seed(seed, {static_cast<std::uint64_t>(i)});
    const auto sim = netsim::simulate(config, n_grid[i], drops, slots, derive_seed(point_seed, {kSimulate}),
                                      {options.workers});
    const auto rates = netsim::throughputs(sim);
    if (rates.empty()) throw std::runtime_error("sweep_network_size: no UE in any drop");
    SweepPoint p;
    p.n = n_grid[i];
    p.rate5 = netsim::fifth_percentile(rates);
    const auto ci = netsim::bootstrap_ci(rates, derive_seed(point_seed, {kBootstrap}), options.ci_level,
                                         options.bootstrap_resamples);
    p.ci_lo = std::min(ci.lo, p.rate5);
    p.ci_hi = std::max(ci.hi, p.rate5);
    result.points.push_back(p);
    result.resampled_drops += sim.resampled_drops;
  }
  return result;
}

std::vector<Observation> to_observations(const std::vector<SweepPoint>& points) {
  std::vector<Observation> obs;
  obs.reserve(points.size());
  for (const auto& p : points) obs.push_back({p.n, p.rate5});
  return obs;
}

}  // namespace netshare::externality

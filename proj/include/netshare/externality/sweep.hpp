#pragma once

#include <cstdint>
#include <vector>

#include "netshare/externality/regression.hpp"
#include "netshare/netsim/scenario.hpp"
#include "netshare/netsim/simulator.hpp"

namespace netshare::externality {

struct SweepPoint {
  double n = 0.0;
  double rate5 = 0.0;  // bit/s
  double ci_lo = 0.0;
  double ci_hi = 0.0;
};

struct SweepOptions {
  int workers = 1;
  int bootstrap_resamples = 1000;
  double ci_level = 0.95;
};

struct SweepResult {
  std::vector<SweepPoint> points;
  int resampled_drops = 0;
};

/// Fifth-percentile throughput and its bootstrap interval at each network
/// size. Each n gets its own seed derived from `seed` and its grid index.
SweepResult sweep_network_size(const netsim::ScenarioConfig& config, const std::vector<double>& n_grid, int drops,
                               int slots, std::uint64_t seed, const SweepOptions& options = {});

std::vector<Observation> to_observations(const std::vector<SweepPoint>& points);

}  // namespace netshare::externality

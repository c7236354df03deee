#pragma once

#include <cstdint>
#include <vector>

#include "netshare/netsim/deployment.hpp"
#include "netshare/netsim/scenario.hpp"

namespace netshare::netsim {

/// Per-cell bandwidth n * W_max / reuse_factor, in Hz.
double effective_bandwidth_hz(const ScenarioConfig& config, double n);

/// Receiver noise N_f * N_0 * W_eff, in mW.
double noise_power_mw(const ScenarioConfig& config, double n);

/// R = (1 - alpha) W_eff log2(1 + beta S / (N_f N_0 W_eff + I)), in bit/s.
/// Powers in mW.
double shannon_rate_bps(const ScenarioConfig& config, double n, double signal_mw, double interference_mw);

/// One scheduled transmission in a slot.
struct SlotLink {
  std::size_t bs = 0;
  std::size_t ue = 0;
  double fading = 1.0;
  double signal_mw = 0.0;
  double interference_mw = 0.0;
  double rate_bps = 0.0;
};

/// Runs scheduling slots on a fixed deployment. Precomputes the per-link mean
/// gains and bearings once; each slot then draws fresh fading.
class SlotEngine {
 public:
  SlotEngine(const Deployment& deployment, const ScenarioConfig& config, double n);

  /// Simulates one slot. Fading for every associated UE is drawn first (cells
  /// in BS order, UEs in index order), then one draw per interfering link.
  std::vector<SlotLink> run_slot(std::uint64_t slot_seed) const;

  /// Time-averaged per-UE throughput over `slots` slots; unscheduled slots and
  /// unassociated UEs contribute zero.
  std::vector<double> mean_throughput(int slots, std::uint64_t seed) const;

  const std::vector<std::vector<std::size_t>>& cells() const { return cells_; }

 private:
  const Deployment& d_;
  const ScenarioConfig& config_;
  double n_;
  double tx_mw_;
  double serving_gain_;  // M_B * M_U, linear
  std::vector<double> mean_gain_;      // 10^(-(PL+X)/10), UE-major
  std::vector<double> bearing_bs_ue_;  // degrees, from BS to UE, UE-major
  std::vector<std::vector<std::size_t>> cells_;
};

struct RateSample {
  int drop = 0;
  int ue_id = 0;
  double throughput_bps = 0.0;
};

struct SimulationResult {
  std::vector<RateSample> samples;  // sorted by (drop, ue_id)
  int resampled_drops = 0;          // drops that had to be redrawn for lack of a BS
};

struct SimulationOptions {
  int workers = 1;  // 0 = hardware concurrency
};

/// Monte Carlo over `drops` independent deployments at network size n.
/// Output depends only on (config, n, drops, slots, seed), never on workers.
SimulationResult simulate(const ScenarioConfig& config, double n, int drops, int slots, std::uint64_t seed,
                          const SimulationOptions& options = {});

std::vector<double> throughputs(const SimulationResult& result);

}  // namespace netshare::netsim

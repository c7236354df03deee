#include "netshare/netsim/simulator.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <stdexcept>
#include <thread>

#include "netshare/netsim/antenna.hpp"
#include "netshare/netsim/scheduler.hpp"
#include "netshare/rng.hpp"

namespace netshare::netsim {

namespace {

enum StreamTag : std::uint64_t { kDeploy = 11, kSlots = 12 };

double from_db(double db) { return std::pow(10.0, db / 10.0); }

double draw_fading(SplitMix64& rng, bool enabled) {
  const double u = rng.uniform();
  return enabled ? -std::log1p(-u) : 1.0;
}

}  // namespace

double effective_bandwidth_hz(const ScenarioConfig& config, double n) {
  return n * config.max_bandwidth / static_cast<double>(config.reuse_factor);
}

double noise_power_mw(const ScenarioConfig& config, double n) {
  return from_db(config.noise_psd + config.noise_figure) * effective_bandwidth_hz(config, n);
}

double shannon_rate_bps(const ScenarioConfig& config, double n, double signal_mw, double interference_mw) {
  const double w = effective_bandwidth_hz(config, n);
  const double denom = noise_power_mw(config, n) + interference_mw;
  return (1.0 - config.overhead) * w * std::log2(1.0 + config.loss * signal_mw / denom);
}

SlotEngine::SlotEngine(const Deployment& deployment, const ScenarioConfig& config, double n)
    : d_(deployment),
      config_(config),
      n_(n),
      tx_mw_(from_db(config.tx_power)),
      serving_gain_(from_db(config.bs_pattern.main_lobe_gain_db) * from_db(config.ue_pattern.main_lobe_gain_db)) {
  const std::size_t nb = d_.num_bs();
  const std::size_t nu = d_.num_ue();
  mean_gain_.resize(nb * nu);
  bearing_bs_ue_.resize(nb * nu);
  for (std::size_t u = 0; u < nu; ++u) {
    for (std::size_t b = 0; b < nb; ++b) {
      const std::size_t k = d_.link(u, b);
      const double dist = std::max(config_.min_distance, distance(d_.ue_positions[u], d_.bs_positions[b]));
      mean_gain_[k] = channel_power_gain(d_.link_state[k], dist, d_.shadowing_db[k], 1.0, config_.carrier_freq,
                                         config_.channel);
      bearing_bs_ue_[k] = bearing_deg(d_.bs_positions[b], d_.ue_positions[u]);
    }
  }
  cells_.assign(nb, {});
  for (std::size_t u = 0; u < nu; ++u) {
    const int b = d_.association.empty() ? kUnassociated : d_.association[u];
    if (b != kUnassociated) cells_[static_cast<std::size_t>(b)].push_back(u);
  }
}

std::vector<SlotLink> SlotEngine::run_slot(std::uint64_t slot_seed) const {
  SplitMix64 rng(slot_seed);
  std::vector<SlotLink> active;
  std::vector<double> fading;
  for (std::size_t b = 0; b < cells_.size(); ++b) {
    const auto& cell = cells_[b];
    if (cell.empty()) continue;
    fading.resize(cell.size());
    for (auto& f : fading) f = draw_fading(rng, config_.fading);
    const auto pick = schedule_slot(fading, rng);
    SlotLink link;
    link.bs = b;
    link.ue = cell[*pick];
    link.fading = fading[*pick];
    active.push_back(link);
  }

  const std::size_t nb = d_.num_bs();
  for (auto& victim : active) {
    const std::size_t u = victim.ue;
    victim.signal_mw = tx_mw_ * serving_gain_ * mean_gain_[d_.link(u, victim.bs)] * victim.fading;
    // UE beam points at its serving BS.
    const double ue_boresight = normalize_angle_deg(bearing_bs_ue_[d_.link(u, victim.bs)] + 180.0);
    double interference = 0.0;
    for (const auto& other : active) {
      if (other.bs == victim.bs) continue;
      if (d_.band_of_bs[other.bs] != d_.band_of_bs[victim.bs]) continue;
      const double f = draw_fading(rng, config_.fading);
      const double g = mean_gain_[d_.link(u, other.bs)];
      if (g == 0.0) continue;
      // Interferer beam points at its own scheduled UE.
      const double phi = bearing_bs_ue_[d_.link(u, other.bs)] - bearing_bs_ue_[other.ue * nb + other.bs];
      const double psi = normalize_angle_deg(bearing_bs_ue_[d_.link(u, other.bs)] + 180.0) - ue_boresight;
      interference += tx_mw_ * gain(config_.bs_pattern, phi) * gain(config_.ue_pattern, psi) * g * f;
    }
    victim.interference_mw = interference;
    victim.rate_bps = shannon_rate_bps(config_, n_, victim.signal_mw, interference);
  }
  return active;
}

std::vector<double> SlotEngine::mean_throughput(int slots, std::uint64_t seed) const {
  if (slots < 1) throw std::invalid_argument("mean_throughput: slots must be >= 1");
  std::vector<double> sum(d_.num_ue(), 0.0);
  for (int s = 0; s < slots; ++s) {
    for (const auto& link : run_slot(derive_seed(seed, {static_cast<std::uint64_t>(s)}))) {
      sum[link.ue] += link.rate_bps;
    }
  }
  for (auto& v : sum) v /= static_cast<double>(slots);
  return sum;
}

SimulationResult simulate(const ScenarioConfig& config, double n, int drops, int slots, std::uint64_t seed,
                          const SimulationOptions& options) {
  if (drops < 1) throw std::invalid_argument("simulate: drops must be >= 1");
  if (slots < 1) throw std::invalid_argument("simulate: slots must be >= 1");
  if (!(n > 0.0 && n <= 1.0)) throw std::invalid_argument("simulate: n must lie in (0, 1]");
  config.validate();

  struct DropOutput {
    std::vector<double> throughput;
    int resampled = 0;
  };
  std::vector<DropOutput> outputs(static_cast<std::size_t>(drops));

  auto run_drop = [&](int drop) {
    const std::uint64_t drop_seed = derive_seed(seed, {static_cast<std::uint64_t>(drop)});
    const Deployment d = sample_deployment(config, n, derive_seed(drop_seed, {kDeploy}));
    const SlotEngine engine(d, config, n);
    auto& out = outputs[static_cast<std::size_t>(drop)];
    out.throughput = engine.mean_throughput(slots, derive_seed(drop_seed, {kSlots}));
    out.resampled = d.resampled;
  };

  int workers = options.workers;
  if (workers <= 0) workers = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  workers = std::min(workers, drops);

  if (workers == 1) {
    for (int i = 0; i < drops; ++i) run_drop(i);
  } else {
    std::atomic<int> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    std::vector<std::jthread> pool;
    for (int w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (int i = next++; i < drops; i = next++) {
          try {
            run_drop(i);
          } catch (...) {
            std::lock_guard lock(failure_mutex);
            if (!failure) failure = std::current_exception();
          }
        }
      });
    }
    pool.clear();
    if (failure) std::rethrow_exception(failure);
  }

  SimulationResult result;
  for (int drop = 0; drop < drops; ++drop) {
    const auto& out = outputs[static_cast<std::size_t>(drop)];
    if (out.resampled > 0) ++result.resampled_drops;
    for (std::size_t u = 0; u < out.throughput.size(); ++u) {
      result.samples.push_back({drop, static_cast<int>(u), out.throughput[u]});
    }
  }
  return result;
}

std::vector<double> throughputs(const SimulationResult& result) {
  std::vector<double> v;
  v.reserve(result.samples.size());
  for (const auto& s : result.samples) v.push_back(s.throughput_bps);
  return v;
}

}  // namespace netshare::netsim

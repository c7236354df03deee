#include "netshare/netsim/deployment.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

#include "netshare/netsim/antenna.hpp"
#include "netshare/rng.hpp"

namespace netshare::netsim {

namespace {

enum StreamTag : std::uint64_t { kCounts = 1, kPlacement = 2, kLink = 3 };

constexpr int kMaxResample = 1000;

double dbm_to_mw(double dbm) { return std::pow(10.0, dbm / 10.0); }

void place_and_draw_links(Deployment& d, const ScenarioConfig& config, std::size_t bs_count,
                          std::size_t ue_count, std::uint64_t seed) {
  const double side = config.side_length_m();
  SplitMix64 place(derive_seed(seed, {kPlacement}));
  d.bs_positions.resize(bs_count);
  for (auto& p : d.bs_positions) {
    p.x = side * place.uniform();
    p.y = side * place.uniform();
  }
  d.ue_positions.resize(ue_count);
  for (auto& p : d.ue_positions) {
    p.x = side * place.uniform();
    p.y = side * place.uniform();
  }
  d.band_of_bs.assign(bs_count, 0);
  if (config.reuse_factor > 1) {
    std::uniform_int_distribution<int> band(0, config.reuse_factor - 1);
    for (auto& b : d.band_of_bs) b = band(place);
  }

  d.link_state.resize(bs_count * ue_count);
  d.shadowing_db.resize(bs_count * ue_count);
  for (std::size_t u = 0; u < ue_count; ++u) {
    for (std::size_t b = 0; b < bs_count; ++b) {
      SplitMix64 rng(derive_seed(seed, {kLink, u, b}));
      const double dist = std::max(config.min_distance, distance(d.ue_positions[u], d.bs_positions[b]));
      const LinkState state = draw_link_state(link_state_probs(dist, config.channel), rng.uniform());
      std::normal_distribution<double> shadow(0.0, 1.0);
      const double z = shadow(rng);
      const std::size_t k = d.link(u, b);
      d.link_state[k] = state;
      d.shadowing_db[k] = state == LinkState::kOutage ? 0.0 : z * shadow_sigma_db(state, config.channel);
    }
  }
  d.association = associate(d, config);
}

}  // namespace

double distance(const Point& a, const Point& b) { return std::hypot(a.x - b.x, a.y - b.y); }

double bearing_deg(const Point& from, const Point& to) {
  return normalize_angle_deg(std::atan2(to.y - from.y, to.x - from.x) * 180.0 / std::numbers::pi);
}

Deployment sample_deployment_with_counts(const ScenarioConfig& config, std::size_t bs_count,
                                         std::size_t ue_count, std::uint64_t seed) {
  config.validate();
  Deployment d;
  place_and_draw_links(d, config, bs_count, ue_count, seed);
  return d;
}

Deployment sample_deployment(const ScenarioConfig& config, double n, std::uint64_t seed) {
  if (!(n > 0.0 && n <= 1.0)) throw std::invalid_argument("sample_deployment: n must lie in (0, 1]");
  config.validate();
  const double mean_bs = n * config.max_bs_density * config.area;
  const double mean_ue = n * config.max_ue_density * config.area;
  for (int attempt = 0; attempt < kMaxResample; ++attempt) {
    const std::uint64_t drop_seed = derive_seed(seed, {static_cast<std::uint64_t>(attempt)});
    SplitMix64 counts(derive_seed(drop_seed, {kCounts}));
    std::poisson_distribution<std::size_t> bs_dist(mean_bs);
    std::poisson_distribution<std::size_t> ue_dist(mean_ue);
    const std::size_t bs_count = bs_dist(counts);
    const std::size_t ue_count = ue_dist(counts);
    if (bs_count == 0) continue;
    Deployment d;
    place_and_draw_links(d, config, bs_count, ue_count, drop_seed);
    d.resampled = attempt;
    return d;
  }
  throw std::runtime_error("sample_deployment: no base station after repeated redraws; network too sparse");
}

double long_run_rx_power_mw(const Deployment& d, std::size_t ue, std::size_t bs, const ScenarioConfig& config) {
  const std::size_t k = d.link(ue, bs);
  const double dist = std::max(config.min_distance, distance(d.ue_positions[ue], d.bs_positions[bs]));
  const double h = channel_power_gain(d.link_state[k], dist, d.shadowing_db[k], 1.0, config.carrier_freq,
                                      config.channel);
  return dbm_to_mw(config.tx_power) * dbm_to_mw(config.bs_pattern.main_lobe_gain_db) *
         dbm_to_mw(config.ue_pattern.main_lobe_gain_db) * h;
}

std::vector<int> associate(const Deployment& d, const ScenarioConfig& config) {
  std::vector<int> serving(d.num_ue(), kUnassociated);
  for (std::size_t u = 0; u < d.num_ue(); ++u) {
    double best = 0.0;
    for (std::size_t b = 0; b < d.num_bs(); ++b) {
      if (d.link_state[d.link(u, b)] == LinkState::kOutage) continue;
      const double rx = long_run_rx_power_mw(d, u, b, config);
      if (serving[u] == kUnassociated || rx > best) {
        best = rx;
        serving[u] = static_cast<int>(b);
      }
    }
  }
  return serving;
}

}  // namespace netshare::netsim

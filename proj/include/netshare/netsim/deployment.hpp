#pragma once

#include <cstdint>
#include <vector>

#include "netshare/netsim/channel.hpp"
#include "netshare/netsim/scenario.hpp"

namespace netshare::netsim {

struct Point {
  double x = 0.0;  // m
  double y = 0.0;  // m
};

double distance(const Point& a, const Point& b);
/// Direction from `from` to `to`, degrees in (-180, 180].
double bearing_deg(const Point& from, const Point& to);

inline constexpr int kUnassociated = -1;

/// One Monte Carlo drop. Per-link tables are UE-major: index = ue * num_bs() + bs.
struct Deployment {
  std::vector<Point> bs_positions;
  std::vector<Point> ue_positions;
  std::vector<int> band_of_bs;
  std::vector<LinkState> link_state;
  std::vector<double> shadowing_db;
  std::vector<int> association;  // UE -> BS, or kUnassociated
  int resampled = 0;             // drops redrawn because no BS landed in the area

  std::size_t num_bs() const { return bs_positions.size(); }
  std::size_t num_ue() const { return ue_positions.size(); }
  std::size_t link(std::size_t ue, std::size_t bs) const { return ue * num_bs() + bs; }
};

/// Draws one drop at network size n in (0, 1]: Poisson BS/UE counts, uniform
/// positions, per-link state and shadowing, random band per BS, and the
/// association. A drop without any BS is redrawn; `resampled` counts redraws.
Deployment sample_deployment(const ScenarioConfig& config, double n, std::uint64_t seed);

/// Same as sample_deployment with the BS and UE counts fixed by the caller.
/// Zero counts are allowed and yield an empty deployment.
Deployment sample_deployment_with_counts(const ScenarioConfig& config, std::size_t bs_count,
                                         std::size_t ue_count, std::uint64_t seed);

/// Long-run received power P * M_B * M_U * 10^(-(PL + X)/10) in mW on the given
/// link; zero for an outage link.
double long_run_rx_power_mw(const Deployment& d, std::size_t ue, std::size_t bs,
                            const ScenarioConfig& config);

/// Attaches each UE to the BS with the strongest long-run received power over
/// its non-outage links. UEs with every link in outage stay unassociated.
std::vector<int> associate(const Deployment& d, const ScenarioConfig& config);

}  // namespace netshare::netsim

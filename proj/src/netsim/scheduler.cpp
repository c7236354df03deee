#include "netshare/netsim/scheduler.hpp"

#include <cmath>

namespace netshare::netsim {

double fading_quantile(double fading) { return -std::expm1(-fading); }

std::optional<std::size_t> schedule_slot(std::span<const double> fading, SplitMix64& rng) {
  if (fading.empty()) return std::nullopt;
  std::size_t best = 0;
  double best_q = fading_quantile(fading[0]);
  std::size_t ties = 1;
  for (std::size_t i = 1; i < fading.size(); ++i) {
    const double q = fading_quantile(fading[i]);
    if (q > best_q) {
      best = i;
      best_q = q;
      ties = 1;
    } else if (q == best_q) {
      // Reservoir choice keeps each tied UE equally likely.
      ++ties;
      if (rng.uniform() * static_cast<double>(ties) < 1.0) best = i;
    }
  }
  return best;
}

}  // namespace netshare::netsim

#include "netshare/netsim/statistics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "netshare/rng.hpp"

namespace netshare::netsim {

namespace {

// Interpolated quantile of `v`, reordering it in place. Two partial selections
// instead of a full sort.
double select_quantile(std::vector<double>& v, double q) {
  const double pos = static_cast<double>(v.size() - 1) * q;
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const double frac = pos - static_cast<double>(lo);
  std::nth_element(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(lo), v.end());
  const double a = v[lo];
  if (frac == 0.0 || lo + 1 >= v.size()) return a;
  const double b = *std::min_element(v.begin() + static_cast<std::ptrdiff_t>(lo) + 1, v.end());
  return a + frac * (b - a);
}

}  // namespace

double percentile(std::span<const double> samples, double q) {
  if (samples.empty()) throw std::invalid_argument("percentile: empty sample");
  if (!(q >= 0.0 && q <= 1.0)) throw std::invalid_argument("percentile: q must lie in [0, 1]");
  std::vector<double> v(samples.begin(), samples.end());
  return select_quantile(v, q);
}

double fifth_percentile(std::span<const double> samples) { return percentile(samples, 0.05); }

ConfidenceInterval bootstrap_ci(std::span<const double> samples, std::uint64_t seed, double level,
                                int resamples) {
  if (samples.empty()) throw std::invalid_argument("bootstrap_ci: empty sample");
  if (!(level > 0.0 && level < 1.0)) throw std::invalid_argument("bootstrap_ci: level must lie in (0, 1)");
  if (resamples < 1) throw std::invalid_argument("bootstrap_ci: resamples must be >= 1");
  SplitMix64 rng(seed);
  const std::size_t n = samples.size();
  std::vector<double> stats(static_cast<std::size_t>(resamples));
  std::vector<double> draw(n);
  for (auto& s : stats) {
    for (auto& x : draw) {
      const auto idx = static_cast<std::size_t>(rng.uniform() * static_cast<double>(n));
      x = samples[std::min(idx, n - 1)];
    }
    s = select_quantile(draw, 0.05);
  }
  const double tail = (1.0 - level) / 2.0;
  ConfidenceInterval ci;
  ci.lo = select_quantile(stats, tail);
  ci.hi = select_quantile(stats, 1.0 - tail);
  return ci;
}

}  // namespace netshare::netsim

#pragma once

#include <cstdint>
#include <span>

namespace netshare::netsim {

/// Empirical quantile with linear interpolation at position (N - 1) * q of the
/// sorted sample. Throws std::invalid_argument for an empty sample or q outside [0, 1].
double percentile(std::span<const double> samples, double q);

/// percentile(samples, 0.05).
double fifth_percentile(std::span<const double> samples);

struct ConfidenceInterval {
  double lo = 0.0;
  double hi = 0.0;
};

/// Percentile-bootstrap interval of the fifth-percentile statistic: B
/// resamples with replacement, then the (1-level)/2 and (1+level)/2 quantiles
/// of the resampled statistics.
ConfidenceInterval bootstrap_ci(std::span<const double> samples, std::uint64_t seed, double level = 0.95,
                                int resamples = 1000);

}  // namespace netshare::netsim

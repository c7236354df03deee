#pragma once

#include <optional>
#include <span>

#include "netshare/rng.hpp"

namespace netshare::netsim {

/// First-stage nomination of the temporally fair opportunistic scheduler:
/// the UE whose fading draw sits at the highest quantile of its own fading
/// distribution. All UEs share the unit-mean exponential law, so this is the
/// argmax of the raw draws. Ties go uniformly at random. Returns the index
/// into `fading`, or nothing for an empty cell.
std::optional<std::size_t> schedule_slot(std::span<const double> fading, SplitMix64& rng);

/// Quantile of a unit-mean exponential draw, 1 - exp(-f).
double fading_quantile(double fading);

}  // namespace netshare::netsim

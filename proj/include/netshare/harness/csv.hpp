#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "netshare/externality/sweep.hpp"
#include "netshare/game/sweep.hpp"
#include "netshare/netsim/simulator.hpp"

namespace netshare::harness {

/// 17 significant digits; parses back to the identical double.
std::string format_number(double v);
double parse_number(const std::string& s);

inline constexpr const char* kSamplesHeader = "drop,ue_id,throughput_bps";
inline constexpr const char* kSweepHeader = "n,rate5_bps,ci_lo_bps,ci_hi_bps";
inline constexpr const char* kMarketHeader =
    "omega_hat,q_hat,mu,regime,convention,q1,q2,p1,p2,n1,n2,omega_over,omega_under,profit1,profit2,cs,eq8_ok,"
    "eq9_ok,prefers_sharing_1,prefers_sharing_2";

std::string samples_csv(const std::vector<netsim::RateSample>& samples);
std::vector<netsim::RateSample> parse_samples_csv(const std::string& text);

std::string sweep_csv(const std::vector<externality::SweepPoint>& points);
std::vector<externality::SweepPoint> parse_sweep_csv(const std::string& text);

std::string market_csv(const std::vector<game::MarketRow>& rows);
/// Rows read back carry the outcome fields written to the file; error rows
/// (all-NaN numeric fields) come back with a non-empty `error`.
std::vector<game::MarketRow> parse_market_csv(const std::string& text);

std::string read_file(const std::filesystem::path& path);
/// Writes via a temporary file and rename.
void write_file(const std::filesystem::path& path, const std::string& contents);

}  // namespace netshare::harness

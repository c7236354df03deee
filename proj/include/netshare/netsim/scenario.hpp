#pragma once

#include <filesystem>
#include <string>

#include <json.hpp>

#include "netshare/netsim/antenna.hpp"
#include "netshare/netsim/channel.hpp"

namespace netshare::netsim {

/// Radio and deployment parameters for one band. Densities, bandwidth and
/// area are the values at full network size n = 1.
struct ScenarioConfig {
  double carrier_freq = 73.0;       // GHz
  double max_bandwidth = 1e9;       // Hz
  int reuse_factor = 1;
  double max_bs_density = 100.0;    // BS / km^2
  double max_ue_density = 500.0;    // UE / km^2
  double tx_power = 30.0;           // dBm
  AntennaPattern bs_pattern{20.0, -10.0, 5.0};
  AntennaPattern ue_pattern{10.0, -10.0, 30.0};
  double area = 1.0;                // km^2, square
  double overhead = 0.2;            // alpha
  double loss = 0.5;                // beta
  double noise_figure = 7.0;        // dB
  double noise_psd = -174.0;        // dBm/Hz
  ChannelModel channel = ChannelModel::mmwave_default();
  double min_distance = 1.0;        // m, floor applied to BS-UE distances
  bool fading = true;               // false pins every fading draw to 1

  /// Throws std::invalid_argument on any out-of-range field.
  void validate() const;

  double side_length_m() const;

  static ScenarioConfig mmwave_default();
  static ScenarioConfig microwave_default();
};

void to_json(nlohmann::json& j, const AntennaPattern& p);
void from_json(const nlohmann::json& j, AntennaPattern& p);
void to_json(nlohmann::json& j, const ChannelModel& m);
void from_json(const nlohmann::json& j, ChannelModel& m);
void to_json(nlohmann::json& j, const ScenarioConfig& c);
/// Missing keys keep the value already in `c`; unknown keys are rejected.
void from_json(const nlohmann::json& j, ScenarioConfig& c);

/// Loads a scenario file. A "preset" key ("mmwave" or "microwave") selects the
/// base defaults before the remaining keys are applied.
ScenarioConfig load_scenario(const std::filesystem::path& path);
ScenarioConfig scenario_from_json(const nlohmann::json& j);

}  // namespace netshare::netsim

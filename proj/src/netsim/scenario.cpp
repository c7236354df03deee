#include "netshare/netsim/scenario.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <stdexcept>

namespace netshare::netsim {

namespace {

void reject_unknown(const nlohmann::json& j, const std::set<std::string>& known, const char* where) {
  for (auto it = j.begin(); it != j.end(); ++it) {
    if (!known.count(it.key())) {
      throw std::invalid_argument(std::string(where) + ": unknown key '" + it.key() + "'");
    }
  }
}

template <typename T>
void read_opt(const nlohmann::json& j, const char* key, T& out) {
  if (auto it = j.find(key); it != j.end()) out = it->get<T>();
}

nlohmann::json path_loss_to_json(const PathLossLaw& pl) {
  return {{"intercept_db", pl.intercept_db},
          {"slope_db_per_decade", pl.slope_db_per_decade},
          {"freq_coeff_db_per_decade", pl.freq_coeff_db_per_decade},
          {"shadow_sigma_db", pl.shadow_sigma_db}};
}

void path_loss_from_json(const nlohmann::json& j, PathLossLaw& pl) {
  reject_unknown(j, {"intercept_db", "slope_db_per_decade", "freq_coeff_db_per_decade", "shadow_sigma_db"},
                 "path loss");
  read_opt(j, "intercept_db", pl.intercept_db);
  read_opt(j, "slope_db_per_decade", pl.slope_db_per_decade);
  read_opt(j, "freq_coeff_db_per_decade", pl.freq_coeff_db_per_decade);
  read_opt(j, "shadow_sigma_db", pl.shadow_sigma_db);
}

}  // namespace

void ScenarioConfig::validate() const {
  auto positive = [](double v, const char* name) {
    if (!(v > 0.0) || !std::isfinite(v)) throw std::invalid_argument(std::string("scenario: ") + name + " must be > 0");
  };
  positive(carrier_freq, "carrier_freq");
  positive(max_bandwidth, "max_bandwidth");
  positive(max_bs_density, "max_bs_density");
  positive(max_ue_density, "max_ue_density");
  positive(area, "area");
  positive(min_distance, "min_distance");
  if (reuse_factor < 1) throw std::invalid_argument("scenario: reuse_factor must be >= 1");
  if (!(overhead >= 0.0 && overhead < 1.0)) throw std::invalid_argument("scenario: overhead must lie in [0, 1)");
  if (!(loss > 0.0 && loss <= 1.0)) throw std::invalid_argument("scenario: loss must lie in (0, 1]");
  bs_pattern.validate();
  ue_pattern.validate();
  if (channel.los_pl.shadow_sigma_db < 0.0 || channel.nlos_pl.shadow_sigma_db < 0.0) {
    throw std::invalid_argument("scenario: shadowing sigma must be >= 0");
  }
}

double ScenarioConfig::side_length_m() const { return std::sqrt(area) * 1000.0; }

ScenarioConfig ScenarioConfig::mmwave_default() { return ScenarioConfig{}; }

ScenarioConfig ScenarioConfig::microwave_default() {
  ScenarioConfig c;
  c.carrier_freq = 2.5;
  c.max_bandwidth = 300e6;
  c.reuse_factor = 3;
  c.bs_pattern = {0.0, -20.0, 70.0};
  c.ue_pattern = {0.0, 0.0, 360.0};
  c.channel = ChannelModel::microwave_default();
  return c;
}

void to_json(nlohmann::json& j, const AntennaPattern& p) {
  j = {{"main_lobe_gain_db", p.main_lobe_gain_db},
       {"back_lobe_gain_db", p.back_lobe_gain_db},
       {"beamwidth_deg", p.beamwidth_deg}};
}

void from_json(const nlohmann::json& j, AntennaPattern& p) {
  reject_unknown(j, {"main_lobe_gain_db", "back_lobe_gain_db", "beamwidth_deg"}, "antenna pattern");
  read_opt(j, "main_lobe_gain_db", p.main_lobe_gain_db);
  read_opt(j, "back_lobe_gain_db", p.back_lobe_gain_db);
  read_opt(j, "beamwidth_deg", p.beamwidth_deg);
}

void to_json(nlohmann::json& j, const ChannelModel& m) {
  j = {{"band", to_string(m.band)},
       {"los_pl", path_loss_to_json(m.los_pl)},
       {"nlos_pl", path_loss_to_json(m.nlos_pl)}};
  if (m.outage) {
    j["outage"] = {{"a_out_per_m", m.outage->a_out_per_m}, {"b_out", m.outage->b_out}};
  } else {
    j["outage"] = nullptr;
  }
  if (m.los.kind == LosModelKind::kExponential) {
    j["los_model"] = {{"kind", "exponential"}, {"a_los_per_m", m.los.a_los_per_m}};
  } else {
    j["los_model"] = {{"kind", "umi"}, {"d1_m", m.los.d1_m}, {"d2_m", m.los.d2_m}};
  }
}

void from_json(const nlohmann::json& j, ChannelModel& m) {
  reject_unknown(j, {"band", "los_pl", "nlos_pl", "outage", "los_model"}, "channel");
  if (auto it = j.find("band"); it != j.end()) m.band = band_from_string(it->get<std::string>());
  if (auto it = j.find("los_pl"); it != j.end()) path_loss_from_json(*it, m.los_pl);
  if (auto it = j.find("nlos_pl"); it != j.end()) path_loss_from_json(*it, m.nlos_pl);
  if (auto it = j.find("outage"); it != j.end()) {
    if (it->is_null()) {
      m.outage.reset();
    } else {
      reject_unknown(*it, {"a_out_per_m", "b_out"}, "outage");
      OutageModel o = m.outage.value_or(OutageModel{});
      read_opt(*it, "a_out_per_m", o.a_out_per_m);
      read_opt(*it, "b_out", o.b_out);
      m.outage = o;
    }
  }
  if (auto it = j.find("los_model"); it != j.end()) {
    reject_unknown(*it, {"kind", "a_los_per_m", "d1_m", "d2_m"}, "los_model");
    if (auto k = it->find("kind"); k != it->end()) {
      const auto kind = k->get<std::string>();
      if (kind == "exponential") {
        m.los.kind = LosModelKind::kExponential;
      } else if (kind == "umi") {
        m.los.kind = LosModelKind::kUmi;
      } else {
        throw std::invalid_argument("los_model: unknown kind '" + kind + "'");
      }
    }
    read_opt(*it, "a_los_per_m", m.los.a_los_per_m);
    read_opt(*it, "d1_m", m.los.d1_m);
    read_opt(*it, "d2_m", m.los.d2_m);
  }
}

void to_json(nlohmann::json& j, const ScenarioConfig& c) {
  j = {{"carrier_freq", c.carrier_freq},
       {"max_bandwidth", c.max_bandwidth},
       {"reuse_factor", c.reuse_factor},
       {"max_bs_density", c.max_bs_density},
       {"max_ue_density", c.max_ue_density},
       {"tx_power", c.tx_power},
       {"bs_pattern", c.bs_pattern},
       {"ue_pattern", c.ue_pattern},
       {"area", c.area},
       {"overhead", c.overhead},
       {"loss", c.loss},
       {"noise_figure", c.noise_figure},
       {"noise_psd", c.noise_psd},
       {"channel", c.channel},
       {"min_distance", c.min_distance},
       {"fading", c.fading}};
}

void from_json(const nlohmann::json& j, ScenarioConfig& c) {
  reject_unknown(j,
                 {"preset", "carrier_freq", "max_bandwidth", "reuse_factor", "max_bs_density", "max_ue_density",
                  "tx_power", "bs_pattern", "ue_pattern", "area", "overhead", "loss", "noise_figure",
                  "noise_psd", "channel", "min_distance", "fading"},
                 "scenario");
  read_opt(j, "carrier_freq", c.carrier_freq);
  read_opt(j, "max_bandwidth", c.max_bandwidth);
  read_opt(j, "reuse_factor", c.reuse_factor);
  read_opt(j, "max_bs_density", c.max_bs_density);
  read_opt(j, "max_ue_density", c.max_ue_density);
  read_opt(j, "tx_power", c.tx_power);
  if (auto it = j.find("bs_pattern"); it != j.end()) from_json(*it, c.bs_pattern);
  if (auto it = j.find("ue_pattern"); it != j.end()) from_json(*it, c.ue_pattern);
  read_opt(j, "area", c.area);
  read_opt(j, "overhead", c.overhead);
  read_opt(j, "loss", c.loss);
  read_opt(j, "noise_figure", c.noise_figure);
  read_opt(j, "noise_psd", c.noise_psd);
  if (auto it = j.find("channel"); it != j.end()) from_json(*it, c.channel);
  read_opt(j, "min_distance", c.min_distance);
  read_opt(j, "fading", c.fading);
}

ScenarioConfig scenario_from_json(const nlohmann::json& j) {
  ScenarioConfig c;
  if (auto it = j.find("preset"); it != j.end()) {
    const auto preset = it->get<std::string>();
    if (preset == "mmwave") {
      c = ScenarioConfig::mmwave_default();
    } else if (preset == "microwave") {
      c = ScenarioConfig::microwave_default();
    } else {
      throw std::invalid_argument("scenario: unknown preset '" + preset + "'");
    }
  }
  from_json(j, c);
  c.validate();
  return c;
}

ScenarioConfig load_scenario(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open scenario file " + path.string());
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw std::runtime_error("scenario file " + path.string() + ": " + e.what());
  }
  return scenario_from_json(j);
}

}  // namespace netshare::netsim

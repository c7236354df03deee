#include "netshare/netsim/channel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace netshare::netsim {

std::string to_string(Band band) { return band == Band::kMmWave ? "mmwave" : "microwave"; }

Band band_from_string(const std::string& s) {
  if (s == "mmwave") return Band::kMmWave;
  if (s == "microwave") return Band::kMicrowave;
  throw std::invalid_argument("unknown band '" + s + "'");
}

double PathLossLaw::path_loss_db(double distance_m, double carrier_freq_ghz) const {
  return intercept_db + slope_db_per_decade * std::log10(distance_m) +
         freq_coeff_db_per_decade * std::log10(carrier_freq_ghz);
}

ChannelModel ChannelModel::mmwave_default() {
  ChannelModel m;
  m.band = Band::kMmWave;
  m.los_pl = {69.8, 20.0, 0.0, 5.8};
  m.nlos_pl = {82.7, 26.9, 0.0, 7.7};
  m.outage = OutageModel{1.0 / 30.0, 5.2};
  m.los = {LosModelKind::kExponential, 1.0 / 67.1, 18.0, 36.0};
  return m;
}

ChannelModel ChannelModel::microwave_default() {
  ChannelModel m;
  m.band = Band::kMicrowave;
  m.los_pl = {28.0, 22.0, 20.0, 3.0};
  m.nlos_pl = {22.7, 36.7, 26.0, 4.0};
  m.outage = std::nullopt;
  m.los = {LosModelKind::kUmi, 1.0 / 67.1, 18.0, 36.0};
  return m;
}

LinkStateProbs link_state_probs(double distance_m, const ChannelModel& model) {
  if (!(distance_m >= 0.0)) throw std::invalid_argument("link_state_probs: distance must be >= 0");
  LinkStateProbs p;
  if (model.outage) {
    p.p_out = std::max(0.0, 1.0 - std::exp(-model.outage->a_out_per_m * distance_m + model.outage->b_out));
  }
  const double reachable = 1.0 - p.p_out;
  double los_fraction = 0.0;
  switch (model.los.kind) {
    case LosModelKind::kExponential:
      los_fraction = std::exp(-model.los.a_los_per_m * distance_m);
      break;
    case LosModelKind::kUmi: {
      const double e = std::exp(-distance_m / model.los.d2_m);
      const double near = distance_m <= model.los.d1_m ? 1.0 : model.los.d1_m / distance_m;
      los_fraction = std::min(1.0, near * (1.0 - e) + e);
      break;
    }
  }
  p.p_los = reachable * los_fraction;
  p.p_nlos = reachable - p.p_los;
  return p;
}

LinkState draw_link_state(const LinkStateProbs& probs, double u) {
  if (u < probs.p_out) return LinkState::kOutage;
  if (u < probs.p_out + probs.p_los) return LinkState::kLos;
  return LinkState::kNlos;
}

double path_loss_db(LinkState state, double distance_m, double carrier_freq_ghz,
                    const ChannelModel& model) {
  switch (state) {
    case LinkState::kLos:
      return model.los_pl.path_loss_db(distance_m, carrier_freq_ghz);
    case LinkState::kNlos:
      return model.nlos_pl.path_loss_db(distance_m, carrier_freq_ghz);
    case LinkState::kOutage:
      break;
  }
  return std::numeric_limits<double>::infinity();
}

double shadow_sigma_db(LinkState state, const ChannelModel& model) {
  switch (state) {
    case LinkState::kLos:
      return model.los_pl.shadow_sigma_db;
    case LinkState::kNlos:
      return model.nlos_pl.shadow_sigma_db;
    case LinkState::kOutage:
      break;
  }
  return 0.0;
}

double channel_power_gain(LinkState state, double distance_m, double shadowing_db, double fading,
                          double carrier_freq_ghz, const ChannelModel& model) {
  if (state == LinkState::kOutage) return 0.0;
  const double loss_db = path_loss_db(state, distance_m, carrier_freq_ghz, model) + shadowing_db;
  return std::pow(10.0, -loss_db / 10.0) * fading;
}

}  // namespace netshare::netsim

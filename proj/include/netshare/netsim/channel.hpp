#pragma once

#include <optional>
#include <string>

namespace netshare::netsim {

enum class Band { kMmWave, kMicrowave };
enum class LinkState { kLos, kNlos, kOutage };

std::string to_string(Band band);
Band band_from_string(const std::string& s);

/// PL(d) = intercept + slope * log10(d / 1 m) + freq_coeff * log10(f / 1 GHz), in dB,
/// with log-normal shadowing of standard deviation shadow_sigma_db.
struct PathLossLaw {
  double intercept_db = 0.0;
  double slope_db_per_decade = 20.0;
  double freq_coeff_db_per_decade = 0.0;
  double shadow_sigma_db = 0.0;

  double path_loss_db(double distance_m, double carrier_freq_ghz) const;
};

/// p_out(d) = max(0, 1 - exp(-a_out * d + b_out)).
struct OutageModel {
  double a_out_per_m = 1.0 / 30.0;
  double b_out = 5.2;
};

enum class LosModelKind {
  kExponential,  ///< p_los = (1 - p_out) * exp(-a_los * d)
  kUmi,          ///< p_los = min(d1/d, 1) * (1 - exp(-d/d2)) + exp(-d/d2)
};

struct LosModel {
  LosModelKind kind = LosModelKind::kExponential;
  double a_los_per_m = 1.0 / 67.1;
  double d1_m = 18.0;
  double d2_m = 36.0;
};

struct ChannelModel {
  Band band = Band::kMmWave;
  PathLossLaw los_pl;
  PathLossLaw nlos_pl;
  std::optional<OutageModel> outage;
  LosModel los;

  static ChannelModel mmwave_default();
  static ChannelModel microwave_default();
};

struct LinkStateProbs {
  double p_los = 0.0;
  double p_nlos = 0.0;
  double p_out = 0.0;
};

/// LOS/NLOS/outage probabilities at distance d >= 0. The three values sum to one.
LinkStateProbs link_state_probs(double distance_m, const ChannelModel& model);

/// Maps a uniform draw u in [0, 1) onto a link state using the given probabilities.
LinkState draw_link_state(const LinkStateProbs& probs, double u);

/// Path loss (without shadowing) for a LOS or NLOS link.
double path_loss_db(LinkState state, double distance_m, double carrier_freq_ghz,
                    const ChannelModel& model);

double shadow_sigma_db(LinkState state, const ChannelModel& model);

/// Linear channel power gain H = 10^(-(PL + X)/10) * F; zero for an outage link.
double channel_power_gain(LinkState state, double distance_m, double shadowing_db, double fading,
                          double carrier_freq_ghz, const ChannelModel& model);

}  // namespace netshare::netsim

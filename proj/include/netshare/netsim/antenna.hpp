#pragma once

namespace netshare::netsim {

/// Two-level sectored antenna: main-lobe gain inside the beamwidth, back-lobe
/// gain everywhere else.
struct AntennaPattern {
  double main_lobe_gain_db = 0.0;
  double back_lobe_gain_db = 0.0;
  double beamwidth_deg = 360.0;

  /// Throws std::invalid_argument when M < m or the beamwidth is outside (0, 360].
  void validate() const;
};

/// Maps any angle in degrees onto (-180, 180].
double normalize_angle_deg(double angle_deg);

/// Linear power gain at `angle_deg` off boresight. The main-lobe edge
/// |angle| == beamwidth/2 counts as main lobe.
double gain(const AntennaPattern& pattern, double angle_deg);

}  // namespace netshare::netsim

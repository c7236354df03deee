#include "netshare/netsim/antenna.hpp"

#include <cmath>
#include <stdexcept>

namespace netshare::netsim {

void AntennaPattern::validate() const {
  if (!(main_lobe_gain_db >= back_lobe_gain_db)) {
    throw std::invalid_argument("antenna: main lobe gain must be >= back lobe gain");
  }
  if (!(beamwidth_deg > 0.0 && beamwidth_deg <= 360.0)) {
    throw std::invalid_argument("antenna: beamwidth must lie in (0, 360] degrees");
  }
}

double normalize_angle_deg(double angle_deg) {
  double a = std::fmod(angle_deg, 360.0);
  if (a <= -180.0) a += 360.0;
  if (a > 180.0) a -= 360.0;
  return a;
}

double gain(const AntennaPattern& pattern, double angle_deg) {
  const double a = std::abs(normalize_angle_deg(angle_deg));
  const double db = (a <= pattern.beamwidth_deg / 2.0) ? pattern.main_lobe_gain_db
                                                        : pattern.back_lobe_gain_db;
  return std::pow(10.0, db / 10.0);
}

}  // namespace netshare::netsim

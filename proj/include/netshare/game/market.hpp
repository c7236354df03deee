#pragma once

#include <string>

namespace netshare::game {

enum class Regime { kNoSharing, kSharing, kMonopoly };

/// Taste support: uniform on [0, omega_hat] with density 1/omega_hat, or on
/// [omega_hat - 1, omega_hat] with unit density.
enum class SupportConvention { kZeroToOmegaHat, kUnitInterval };

std::string to_string(Regime r);          // "ns", "s", "m"
std::string to_string(SupportConvention c);  // "paper", "unit"
Regime regime_from_string(const std::string& s);
SupportConvention convention_from_string(const std::string& s);

struct MarketParams {
  double omega_hat = 2.0;
  double q_hat = 1.0;
  double mu = 0.0;
  SupportConvention convention = SupportConvention::kZeroToOmegaHat;

  double support_lo() const;
  double support_hi() const { return omega_hat; }
  /// Length of the support; shares are (type mass) / this.
  double support_length() const;
  /// 0 <= mu < min(1, omega_hat / 2).
  bool mu_admissible() const;
};

/// Marginal types and market shares. `valid` means strictly interior:
/// lo < omega_under < omega_over < omega_hat. For monopoly, omega_under equals
/// omega_over and n2 is zero.
struct SharesSolution {
  double n1 = 0.0;
  double n2 = 0.0;
  double omega_over = 0.0;
  double omega_under = 0.0;
  bool valid = false;
};

/// Externality arguments seen by subscribers of each NSP.
struct NetworkSizes {
  double n1 = 0.0;
  double n2 = 0.0;
};
NetworkSizes network_sizes(const SharesSolution& s, Regime regime);

/// Surplus omega q + mu q n_tilde - p.
inline double utility(double omega, double q, double n_tilde, double p, double mu) {
  return omega * q + mu * q * n_tilde - p;
}

/// Solves the marginal-consumer indifference conditions together with the
/// share definitions (a linear system). Throws std::domain_error when the
/// system is singular, std::invalid_argument unless q1 > q2 > 0 (duopoly).
/// A non-interior solution comes back with valid = false and the marginal
/// types replaced by the self-consistent corner allocation from demand().
SharesSolution market_shares(double q1, double q2, double p1, double p2, const MarketParams& params,
                             Regime regime);

/// Fulfilled-expectations allocation for arbitrary prices, including corners
/// where one or both NSPs sell nothing or the market is fully covered.
/// Candidate allocations are checked in the order: interior, covered,
/// NSP 1 only, NSP 1 covering, NSP 2 only, NSP 2 covering, nobody; the first
/// self-consistent one is returned.
SharesSolution demand(double q1, double q2, double p1, double p2, const MarketParams& params, Regime regime);

/// Residuals of the four defining equations at a candidate solution:
/// indifference 1 vs 2, indifference 2 vs none, and the two share identities.
struct ShareResiduals {
  double over = 0.0;
  double under = 0.0;
  double share1 = 0.0;
  double share2 = 0.0;
  double max_abs() const;
};
ShareResiduals share_residuals(const SharesSolution& s, double q1, double q2, double p1, double p2,
                               const MarketParams& params, Regime regime);

}  // namespace netshare::game

#pragma once

#include "netshare/game/market.hpp"

namespace netshare::game {

/// Whether consumer surplus integrals carry the type density.
enum class SurplusMode {
  kLiteral,     ///< integral of u over types, no density factor
  kNormalized,  ///< same integral divided by the support length
};

struct ConditionFlags {
  bool eq8_ok = false;  ///< admissible mu and quality ratio above the threshold
  bool eq9_ok = false;  ///< strictly interior marginal types
  bool ok() const { return eq8_ok && eq9_ok; }
};

struct EquilibriumOutcome {
  Regime regime = Regime::kNoSharing;
  double q1 = 0.0;
  double q2 = 0.0;
  double p1 = 0.0;
  double p2 = 0.0;
  SharesSolution shares;
  double profit1 = 0.0;
  double profit2 = 0.0;
  double consumer_surplus = 0.0;
  ConditionFlags conditions;

  bool conditions_ok() const { return conditions.ok(); }
};

struct PricePair {
  double p1 = 0.0;
  double p2 = 0.0;
};

/// pi = n (p - q).
inline double profit(double share, double price, double quality) { return share * (price - quality); }

/// Low-end quality without sharing; q_hat times a function of (omega_hat, mu).
double quality_low_no_sharing(const MarketParams& params);
/// Low-end quality with sharing: q_hat (4 w - 3 mu) / (7 w - 6 mu).
double quality_low_sharing(const MarketParams& params);

PricePair prices_no_sharing(const MarketParams& params, double q1, double q2);
PricePair prices_sharing(const MarketParams& params, double q1, double q2);
/// q1 (omega_hat - 1) / 2, independent of mu.
double price_monopoly(const MarketParams& params, double q1);

/// omega_hat^2 / ((omega_hat - mu)(omega_hat - 2 mu)).
double quality_ratio_threshold(const MarketParams& params);

/// eq8_ok: admissible mu and q1/q2 above the threshold. eq9_ok: interior shares.
ConditionFlags check_conditions(const MarketParams& params, double q1, double q2, const SharesSolution& shares);

/// Shares, profits, surplus and condition flags for given qualities and prices.
EquilibriumOutcome evaluate_outcome(const MarketParams& params, Regime regime, double q1, double q2, double p1,
                                    double p2, SurplusMode mode = SurplusMode::kLiteral);

EquilibriumOutcome equilibrium_no_sharing(const MarketParams& params, SurplusMode mode = SurplusMode::kLiteral);
EquilibriumOutcome equilibrium_sharing(const MarketParams& params, SurplusMode mode = SurplusMode::kLiteral);
/// Requires omega_hat > 1; throws std::invalid_argument otherwise.
EquilibriumOutcome equilibrium_monopoly(const MarketParams& params, SurplusMode mode = SurplusMode::kLiteral);
EquilibriumOutcome equilibrium(const MarketParams& params, Regime regime, SurplusMode mode = SurplusMode::kLiteral);

/// Closed-form integral of consumer utility over the subscribing types.
double consumer_surplus(const EquilibriumOutcome& outcome, const MarketParams& params, Regime regime,
                        SurplusMode mode = SurplusMode::kLiteral);

}  // namespace netshare::game

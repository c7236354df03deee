#include "netshare/game/equilibrium.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace netshare::game {

namespace {

// Integral of (omega q + c) over [a, b].
double integrate_affine(double q, double c, double a, double b) {
  if (!(b > a)) return 0.0;
  return q * (b * b - a * a) / 2.0 + c * (b - a);
}

}  // namespace

double quality_low_no_sharing(const MarketParams& params) {
  const double w = params.omega_hat;
  const double mu = params.mu;
  const double root = std::sqrt(3.0 * (3.0 * w * w + 28.0 * w * mu - 20.0 * mu * mu));
  return params.q_hat * (w - mu) * (w - mu) * (11.0 * w - 10.0 * mu - root) / (2.0 * w * w * (7.0 * w - 5.0 * mu));
}

double quality_low_sharing(const MarketParams& params) {
  const double w = params.omega_hat;
  const double mu = params.mu;
  return params.q_hat * (4.0 * w - 3.0 * mu) / (7.0 * w - 6.0 * mu);
}

PricePair prices_no_sharing(const MarketParams& params, double q1, double q2) {
  const double w = params.omega_hat;
  const double mu = params.mu;
  const double denom = 4.0 * q1 * (w - mu) * (w - mu) - q2 * w * w;
  PricePair p;
  p.p1 = q1 * (1.0 + (w - 1.0) * (2.0 * q1 * (w - mu) * (w - mu) - q2 * w * (2.0 * w - mu)) / denom);
  p.p2 = q2 * (1.0 + (w - 1.0) * (q1 * (w - mu) * (w - 2.0 * mu) - q2 * w * w) / denom);
  return p;
}

PricePair prices_sharing(const MarketParams& params, double q1, double q2) {
  const double w = params.omega_hat;
  const double mu = params.mu;
  const double denom = (4.0 * w - 3.0 * mu) * q1 - w * q2;
  PricePair p;
  p.p1 = q1 * (1.0 + 2.0 * w * (w - 1.0) * (q1 - q2) / denom);
  p.p2 = q2 * (1.0 + w * (w - 1.0) * (q1 - q2) / denom);
  return p;
}

double price_monopoly(const MarketParams& params, double q1) { return q1 * (params.omega_hat - 1.0) / 2.0; }

double quality_ratio_threshold(const MarketParams& params) {
  const double w = params.omega_hat;
  const double mu = params.mu;
  return w * w / ((w - mu) * (w - 2.0 * mu));
}

ConditionFlags check_conditions(const MarketParams& params, double q1, double q2, const SharesSolution& shares) {
  ConditionFlags f;
  f.eq8_ok = params.mu_admissible() && q2 > 0.0 && q1 / q2 > quality_ratio_threshold(params);
  f.eq9_ok = shares.valid;
  return f;
}

double consumer_surplus(const EquilibriumOutcome& o, const MarketParams& params, Regime regime, SurplusMode mode) {
  const SharesSolution& s = o.shares;
  const NetworkSizes t = network_sizes(s, regime);
  const double mu = params.mu;
  const double hi = params.support_hi();
  double cs = integrate_affine(o.q1, mu * o.q1 * t.n1 - o.p1, s.omega_over, hi);
  if (regime != Regime::kMonopoly) {
    cs += integrate_affine(o.q2, mu * o.q2 * t.n2 - o.p2, s.omega_under, s.omega_over);
  }
  if (mode == SurplusMode::kNormalized) cs /= params.support_length();
  return cs;
}

EquilibriumOutcome evaluate_outcome(const MarketParams& params, Regime regime, double q1, double q2, double p1,
                                    double p2, SurplusMode mode) {
  EquilibriumOutcome o;
  o.regime = regime;
  o.q1 = q1;
  o.q2 = q2;
  o.p1 = p1;
  o.p2 = p2;
  o.shares = market_shares(q1, q2, p1, p2, params, regime);
  o.profit1 = profit(o.shares.n1, p1, q1);
  o.profit2 = regime == Regime::kMonopoly ? 0.0 : profit(o.shares.n2, p2, q2);
  o.consumer_surplus = consumer_surplus(o, params, regime, mode);
  if (regime == Regime::kMonopoly) {
    // Monopoly analogue: admissible mu, price above marginal cost, interior share.
    o.conditions.eq8_ok = params.mu_admissible() && p1 > q1;
    o.conditions.eq9_ok = o.shares.valid;
  } else {
    o.conditions = check_conditions(params, q1, q2, o.shares);
  }
  return o;
}

EquilibriumOutcome equilibrium_no_sharing(const MarketParams& params, SurplusMode mode) {
  const double q1 = params.q_hat;
  const double q2 = quality_low_no_sharing(params);
  const PricePair p = prices_no_sharing(params, q1, q2);
  return evaluate_outcome(params, Regime::kNoSharing, q1, q2, p.p1, p.p2, mode);
}

EquilibriumOutcome equilibrium_sharing(const MarketParams& params, SurplusMode mode) {
  const double q1 = params.q_hat;
  const double q2 = quality_low_sharing(params);
  const PricePair p = prices_sharing(params, q1, q2);
  return evaluate_outcome(params, Regime::kSharing, q1, q2, p.p1, p.p2, mode);
}

EquilibriumOutcome equilibrium_monopoly(const MarketParams& params, SurplusMode mode) {
  if (!(params.omega_hat > 1.0)) throw std::invalid_argument("equilibrium_monopoly: omega_hat must exceed 1");
  const double q1 = params.q_hat;
  return evaluate_outcome(params, Regime::kMonopoly, q1, 0.0, price_monopoly(params, q1), 0.0, mode);
}

EquilibriumOutcome equilibrium(const MarketParams& params, Regime regime, SurplusMode mode) {
  switch (regime) {
    case Regime::kNoSharing:
      return equilibrium_no_sharing(params, mode);
    case Regime::kSharing:
      return equilibrium_sharing(params, mode);
    case Regime::kMonopoly:
      return equilibrium_monopoly(params, mode);
  }
  throw std::invalid_argument("equilibrium: unknown regime");
}

}  // namespace netshare::game

#pragma once

#include <optional>
#include <stdexcept>
#include <vector>

#include "netshare/game/equilibrium.hpp"
#include "netshare/game/market.hpp"

namespace netshare::game {

/// Profit of NSP `firm` (1 or 2) under the fulfilled-expectations allocation.
double duopoly_profit(int firm, double q1, double q2, double p1, double p2, const MarketParams& params,
                      Regime regime);

/// Smallest own price at which NSP `firm` sells nothing, given the rival's
/// price. Found by bisection on the allocation; equals q_firm when the NSP
/// cannot sell even at marginal cost.
double choke_price(int firm, double q1, double q2, double rival_price, const MarketParams& params, Regime regime);

struct BestResponseOptions {
  int scan_points = 200;  ///< coarse scan locating the bracket
  int golden_iterations = 200;
};

/// Profit-maximizing own price on [q_firm, choke]: coarse scan, golden-section
/// on the bracket around the best scan point, then a parabolic polish.
double best_response(int firm, double q1, double q2, double rival_price, const MarketParams& params, Regime regime,
                     const BestResponseOptions& options = {});

struct PriceSearchOptions {
  double tolerance = 1e-9;
  int max_rounds = 500;
  std::optional<PricePair> start;
  BestResponseOptions best_response;
};

struct PriceEquilibrium {
  double p1 = 0.0;
  double p2 = 0.0;
  int rounds = 0;
  std::vector<PricePair> trace;
};

class NonConvergenceError : public std::runtime_error {
 public:
  NonConvergenceError(const std::string& what, std::vector<PricePair> trace)
      : std::runtime_error(what), trace_(std::move(trace)) {}
  const std::vector<PricePair>& trace() const { return trace_; }

 private:
  std::vector<PricePair> trace_;
};

/// Stage-two Nash prices by alternating best responses. Duopoly regimes only;
/// requires q1 > q2 > 0. Throws NonConvergenceError after max_rounds.
PriceEquilibrium numerical_price_equilibrium(double q1, double q2, const MarketParams& params, Regime regime,
                                             const PriceSearchOptions& options = {});

struct DeviationGain {
  double gain1 = 0.0;  ///< best grid profit minus current profit, NSP 1
  double gain2 = 0.0;
  double max() const { return gain1 > gain2 ? gain1 : gain2; }
};

/// Largest unilateral profit improvement over a uniform price grid on
/// [q_i, choke_i] for each NSP.
DeviationGain deviation_gain(double q1, double q2, double p1, double p2, const MarketParams& params, Regime regime,
                             int grid_points = 1000);

struct QualityPoint {
  double q2 = 0.0;
  double p1 = 0.0;
  double p2 = 0.0;
  double profit1 = 0.0;
  double profit2 = 0.0;
  bool eq8_ok = false;
  bool converged = true;  ///< false: price iteration failed, prices/profits NaN
};

struct QualityStage {
  double q2_best = 0.0;
  std::vector<QualityPoint> curve;
};

/// Grid search of the low-end quality with q1 = q_hat: q2 = q_hat k / (grid + 1),
/// k = 1..grid, each priced at the numerical Nash equilibrium.
QualityStage numerical_quality_stage(const MarketParams& params, Regime regime, int grid_points = 200,
                                     const PriceSearchOptions& options = {});

}  // namespace netshare::game

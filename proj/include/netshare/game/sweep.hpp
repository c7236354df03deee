#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "netshare/game/equilibrium.hpp"

namespace netshare::game {

struct MarketGrid {
  std::vector<double> omega_hat;
  std::vector<double> q_hat;
  std::vector<double> mu;
  std::vector<Regime> regimes{Regime::kNoSharing, Regime::kSharing, Regime::kMonopoly};
  std::vector<SupportConvention> conventions{SupportConvention::kZeroToOmegaHat};
  SurplusMode surplus = SurplusMode::kLiteral;

  /// omega_hat in [1.5, 6] step 0.05, q_hat in {1, 1.5}, mu in {0.64, 0.05},
  /// all regimes, both conventions.
  static MarketGrid fig6_default();
};

/// Accepts either explicit lists or {"start", "stop", "step"} ranges for the
/// numeric axes; regimes as "ns"/"s"/"m", conventions as "paper"/"unit".
MarketGrid market_grid_from_json(const nlohmann::json& j);
nlohmann::json to_json(const MarketGrid& grid);

/// Inclusive arithmetic range, robust to accumulated round-off at the end.
std::vector<double> arithmetic_range(double start, double stop, double step);

struct MarketRow {
  MarketParams params;
  Regime regime = Regime::kNoSharing;
  EquilibriumOutcome outcome;
  bool prefers_sharing_1 = false;  ///< pi_1 with sharing > pi_1 without
  bool prefers_sharing_2 = false;
  std::string error;               ///< non-empty when the row could not be evaluated
};

/// One row per (convention, q_hat, mu, omega_hat, regime), in that loop order.
/// Sharing preference is filled in on every row of the (omega_hat, q_hat, mu,
/// convention) cell; monopoly rows carry the duopoly comparison as well.
std::vector<MarketRow> sweep_market(const MarketGrid& grid);

}  // namespace netshare::game

#include "netshare/game/sweep.hpp"

#include <cmath>
#include <stdexcept>

namespace netshare::game {

std::vector<double> arithmetic_range(double start, double stop, double step) {
  if (!(step > 0.0)) throw std::invalid_argument("range: step must be positive");
  if (stop < start) throw std::invalid_argument("range: stop below start");
  const auto count = static_cast<long>(std::floor((stop - start) / step + 1e-9)) + 1;
  std::vector<double> v;
  v.reserve(static_cast<std::size_t>(count));
  for (long i = 0; i < count; ++i) v.push_back(start + step * static_cast<double>(i));
  return v;
}

MarketGrid MarketGrid::fig6_default() {
  MarketGrid g;
  g.omega_hat = arithmetic_range(1.5, 6.0, 0.05);
  g.q_hat = {1.0, 1.5};
  g.mu = {0.64, 0.05};
  g.conventions = {SupportConvention::kZeroToOmegaHat, SupportConvention::kUnitInterval};
  return g;
}

namespace {

std::vector<double> axis_from_json(const nlohmann::json& j, const char* name) {
  if (j.is_array()) return j.get<std::vector<double>>();
  if (j.is_number()) return {j.get<double>()};
  if (j.is_object()) return arithmetic_range(j.at("start").get<double>(), j.at("stop").get<double>(), j.at("step").get<double>());
  throw std::invalid_argument(std::string("market grid: bad axis '") + name + "'");
}

}  // namespace

MarketGrid market_grid_from_json(const nlohmann::json& j) {
  MarketGrid g = MarketGrid::fig6_default();
  if (auto it = j.find("omega_hat"); it != j.end()) g.omega_hat = axis_from_json(*it, "omega_hat");
  if (auto it = j.find("q_hat"); it != j.end()) g.q_hat = axis_from_json(*it, "q_hat");
  if (auto it = j.find("mu"); it != j.end()) g.mu = axis_from_json(*it, "mu");
  if (auto it = j.find("regimes"); it != j.end()) {
    g.regimes.clear();
    for (const auto& r : *it) g.regimes.push_back(regime_from_string(r.get<std::string>()));
  }
  if (auto it = j.find("conventions"); it != j.end()) {
    g.conventions.clear();
    for (const auto& c : *it) g.conventions.push_back(convention_from_string(c.get<std::string>()));
  }
  if (auto it = j.find("cs_normalized"); it != j.end()) {
    g.surplus = it->get<bool>() ? SurplusMode::kNormalized : SurplusMode::kLiteral;
  }
  if (g.omega_hat.empty() || g.q_hat.empty() || g.mu.empty() || g.regimes.empty() || g.conventions.empty()) {
    throw std::invalid_argument("market grid: every axis must be non-empty");
  }
  return g;
}

nlohmann::json to_json(const MarketGrid& grid) {
  nlohmann::json j;
  j["omega_hat"] = grid.omega_hat;
  j["q_hat"] = grid.q_hat;
  j["mu"] = grid.mu;
  j["regimes"] = nlohmann::json::array();
  for (auto r : grid.regimes) j["regimes"].push_back(to_string(r));
  j["conventions"] = nlohmann::json::array();
  for (auto c : grid.conventions) j["conventions"].push_back(to_string(c));
  j["cs_normalized"] = grid.surplus == SurplusMode::kNormalized;
  return j;
}

std::vector<MarketRow> sweep_market(const MarketGrid& grid) {
  if (grid.omega_hat.empty() || grid.q_hat.empty() || grid.mu.empty() || grid.regimes.empty() ||
      grid.conventions.empty()) {
    throw std::invalid_argument("sweep_market: grids must be non-empty");
  }
  std::vector<MarketRow> rows;
  for (auto convention : grid.conventions) {
    for (double q_hat : grid.q_hat) {
      for (double mu : grid.mu) {
        for (double omega_hat : grid.omega_hat) {
          const MarketParams params{omega_hat, q_hat, mu, convention};
          bool pref1 = false;
          bool pref2 = false;
          try {
            const auto ns = equilibrium_no_sharing(params, grid.surplus);
            const auto s = equilibrium_sharing(params, grid.surplus);
            pref1 = s.profit1 > ns.profit1;
            pref2 = s.profit2 > ns.profit2;
          } catch (const std::exception&) {
            // Reported on the affected rows below.
          }
          for (auto regime : grid.regimes) {
            MarketRow row;
            row.params = params;
            row.regime = regime;
            row.prefers_sharing_1 = pref1;
            row.prefers_sharing_2 = pref2;
            try {
              row.outcome = equilibrium(params, regime, grid.surplus);
            } catch (const std::exception& e) {
              row.error = e.what();
              row.outcome.regime = regime;
            }
            rows.push_back(std::move(row));
          }
        }
      }
    }
  }
  return rows;
}

}  // namespace netshare::game

#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "netshare/game/equilibrium.hpp"
#include "netshare/game/numerical.hpp"
#include "oracles.hpp"

using namespace netshare::game;

namespace {

MarketParams make(double omega_hat, double q_hat, double mu,
                  SupportConvention c = SupportConvention::kZeroToOmegaHat) {
  MarketParams p;
  p.omega_hat = omega_hat;
  p.q_hat = q_hat;
  p.mu = mu;
  p.convention = c;
  return p;
}

}  // namespace

TEST_SUITE("numerical") {

TEST_CASE("price equilibrium at mu = 0 is Nash and equals the closed form") {
  const auto p = make(2.0, 1.0, 0.0);
  for (auto r : {Regime::kNoSharing, Regime::kSharing}) {
    const auto eq = numerical_price_equilibrium(1.0, 4.0 / 7.0, p, r);
    CHECK(eq.p1 == doctest::Approx(1.25).epsilon(1e-8));
    CHECK(eq.p2 == doctest::Approx(9.0 / 14.0).epsilon(1e-8));
    const auto gain = deviation_gain(1.0, 4.0 / 7.0, eq.p1, eq.p2, p, r);
    CHECK(gain.max() <= 1e-6);
  }
}

TEST_CASE("degenerate and monopoly inputs rejected") {
  const auto p = make(2.0, 1.0, 0.0);
  CHECK_THROWS_AS(numerical_price_equilibrium(1.0, 1.0, p, Regime::kNoSharing), std::invalid_argument);
  CHECK_THROWS_AS(numerical_price_equilibrium(1.0, 0.5, p, Regime::kMonopoly), std::invalid_argument);
  CHECK_THROWS_AS(deviation_gain(1.0, 0.5, 1.0, 0.6, p, Regime::kNoSharing, 1), std::invalid_argument);
}

TEST_CASE("choke price zeroes own demand") {
  const auto p = make(3.0, 1.0, 0.3);
  for (int firm : {1, 2}) {
    const double rival = firm == 1 ? 0.8 : 1.6;
    const double c = choke_price(firm, 1.0, 0.5, rival, p, Regime::kNoSharing);
    const auto s_at = demand(1.0, 0.5, firm == 1 ? c : rival, firm == 1 ? rival : c, p, Regime::kNoSharing);
    CHECK((firm == 1 ? s_at.n1 : s_at.n2) <= 1e-9);
    const double below = c - 1e-3;
    const auto s_below = demand(1.0, 0.5, firm == 1 ? below : rival, firm == 1 ? rival : below, p, Regime::kNoSharing);
    CHECK((firm == 1 ? s_below.n1 : s_below.n2) > 0.0);
  }
}

TEST_CASE("best response is not beaten by a fine grid (property)") {
  oracle::Gen g(41);
  for (int t = 0; t < 30; ++t) {
    auto p = make(g.uniform(1.5, 6.0), 1.0, 0.0);
    p.mu = g.uniform(0.0, 0.9) * std::min(1.0, p.omega_hat / 2.0);
    const double q2 = quality_low_sharing(p);
    const int firm = 1 + t % 2;
    const double rival = firm == 1 ? g.uniform(q2, 2.0 * q2 + 0.5) : g.uniform(1.0, 2.5);
    const double br = best_response(firm, 1.0, q2, rival, p, Regime::kSharing);
    const double at = firm == 1 ? duopoly_profit(1, 1.0, q2, br, rival, p, Regime::kSharing)
                                : duopoly_profit(2, 1.0, q2, rival, br, p, Regime::kSharing);
    const double c = choke_price(firm, 1.0, q2, rival, p, Regime::kSharing);
    const double lo = firm == 1 ? 1.0 : q2;
    for (int i = 0; i <= 2000; ++i) {
      const double x = lo + (c - lo) * i / 2000.0;
      const double v = firm == 1 ? duopoly_profit(1, 1.0, q2, x, rival, p, Regime::kSharing)
                                 : duopoly_profit(2, 1.0, q2, rival, x, p, Regime::kSharing);
      CHECK(v <= at + 1e-9);
    }
  }
}

TEST_CASE("price equilibrium independent of starting point") {
  const auto p = make(3.0, 1.0, 0.4);
  const double q2 = quality_low_no_sharing(p);
  oracle::Gen g(42);
  double min1 = 1e9, max1 = -1e9, min2 = 1e9, max2 = -1e9;
  for (int t = 0; t < 10; ++t) {
    PriceSearchOptions o;
    o.start = PricePair{g.uniform(1.0, 4.0), g.uniform(q2, 2.0)};
    const auto eq = numerical_price_equilibrium(1.0, q2, p, Regime::kNoSharing, o);
    min1 = std::min(min1, eq.p1);
    max1 = std::max(max1, eq.p1);
    min2 = std::min(min2, eq.p2);
    max2 = std::max(max2, eq.p2);
  }
  CHECK(max1 - min1 <= 1e-7);
  CHECK(max2 - min2 <= 1e-7);
}

TEST_CASE("non-convergence reports the iterate trace") {
  PriceSearchOptions o;
  o.max_rounds = 1;
  o.tolerance = 0.0;
  try {
    numerical_price_equilibrium(1.0, 0.5, make(3.0, 1.0, 0.2), Regime::kSharing, o);
    FAIL("expected NonConvergenceError");
  } catch (const NonConvergenceError& e) {
    CHECK(e.trace().size() == 2);
  }
}

TEST_CASE("printed prices are Nash under the paper convention") {
  for (double mu : {0.05, 0.3, 0.64}) {
    const auto p = make(4.0, 1.0, mu);
    for (auto r : {Regime::kNoSharing, Regime::kSharing}) {
      const auto o = equilibrium(p, r);
      CHECK(deviation_gain(o.q1, o.q2, o.p1, o.p2, p, r).max() <= 1e-6);
    }
  }
}

TEST_CASE("quality stage at mu = 0 lands on 4/7 of q_hat") {
  const auto p = make(2.5, 1.0, 0.0);
  const auto stage = numerical_quality_stage(p, Regime::kSharing, 100);
  CHECK(stage.curve.size() == 100);
  CHECK(std::abs(stage.q2_best - 4.0 / 7.0) <= 1.0 / 101.0);
  // Price competition: pi_2 at the top of the grid is below the peak.
  const auto peak = std::max_element(stage.curve.begin(), stage.curve.end(),
                                     [](const QualityPoint& a, const QualityPoint& b) { return a.profit2 < b.profit2; });
  CHECK(stage.curve.back().profit2 < peak->profit2);
  // Single-peaked where the quality-ratio condition holds.
  int turns = 0;
  for (std::size_t i = 2; i < stage.curve.size(); ++i) {
    const double d1 = stage.curve[i - 1].profit2 - stage.curve[i - 2].profit2;
    const double d2 = stage.curve[i].profit2 - stage.curve[i - 1].profit2;
    if (d1 > 0 && d2 < 0) ++turns;
    CHECK_FALSE((d1 < 0 && d2 > 1e-12));
  }
  CHECK(turns == 1);
}

TEST_CASE("quality stage restricted to the quality-ratio region") {
  const auto p = make(3.0, 1.0, 0.3);
  const auto stage = numerical_quality_stage(p, Regime::kNoSharing, 50);
  const double limit = 1.0 / quality_ratio_threshold(p);
  CHECK(stage.q2_best < limit);
  CHECK(std::abs(stage.q2_best - quality_low_no_sharing(p)) <= 1.0 / 51.0);
}

}  // TEST_SUITE

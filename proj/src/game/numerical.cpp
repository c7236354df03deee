#include "netshare/game/numerical.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace netshare::game {

namespace {

void require_duopoly(double q1, double q2, Regime regime) {
  if (regime == Regime::kMonopoly) throw std::invalid_argument("numerical price search: duopoly regimes only");
  if (!(q2 > 0.0 && q1 > q2)) throw std::invalid_argument("numerical price search: require q1 > q2 > 0");
}

double own_share(int firm, const SharesSolution& s) { return firm == 1 ? s.n1 : s.n2; }

struct ProfitFn {
  int firm;
  double q1, q2, rival;
  const MarketParams& params;
  Regime regime;

  double quality() const { return firm == 1 ? q1 : q2; }
  double share(double p) const {
    const auto s = firm == 1 ? demand(q1, q2, p, rival, params, regime) : demand(q1, q2, rival, p, params, regime);
    return own_share(firm, s);
  }
  double operator()(double p) const { return share(p) * (p - quality()); }
};

double upper_price_bound(int firm, double q1, double q2, const MarketParams& params) {
  const double q = firm == 1 ? q1 : q2;
  // Network sizes never exceed one, so this price leaves every type with negative utility.
  return q * (params.support_hi() + params.mu) + q + 1.0;
}

}  // namespace

double duopoly_profit(int firm, double q1, double q2, double p1, double p2, const MarketParams& params,
                      Regime regime) {
  require_duopoly(q1, q2, regime);
  const auto s = demand(q1, q2, p1, p2, params, regime);
  return firm == 1 ? profit(s.n1, p1, q1) : profit(s.n2, p2, q2);
}

double choke_price(int firm, double q1, double q2, double rival_price, const MarketParams& params, Regime regime) {
  require_duopoly(q1, q2, regime);
  const ProfitFn f{firm, q1, q2, rival_price, params, regime};
  double lo = f.quality();
  if (f.share(lo) <= 0.0) return lo;
  double hi = upper_price_bound(firm, q1, q2, params);
  for (int i = 0; i < 200 && hi - lo > 1e-14 * hi; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (f.share(mid) > 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return hi;
}

double best_response(int firm, double q1, double q2, double rival_price, const MarketParams& params, Regime regime,
                     const BestResponseOptions& options) {
  const ProfitFn f{firm, q1, q2, rival_price, params, regime};
  const double a = f.quality();
  const double b = choke_price(firm, q1, q2, rival_price, params, regime);
  if (!(b > a)) return a;

  const int k = std::max(options.scan_points, 3);
  const double step = (b - a) / (k - 1);
  int best = 0;
  double best_val = f(a);
  for (int i = 1; i < k; ++i) {
    const double v = f(a + step * i);
    if (v > best_val) {
      best_val = v;
      best = i;
    }
  }
  double lo = a + step * std::max(best - 1, 0);
  double hi = a + step * std::min(best + 1, k - 1);

  constexpr double kInvPhi = 0.6180339887498949;
  double x1 = hi - kInvPhi * (hi - lo);
  double x2 = lo + kInvPhi * (hi - lo);
  double f1 = f(x1);
  double f2 = f(x2);
  for (int it = 0; it < options.golden_iterations && hi - lo > 1e-15 * std::max(1.0, hi); ++it) {
    if (f1 < f2) {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + kInvPhi * (hi - lo);
      f2 = f(x2);
    } else {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - kInvPhi * (hi - lo);
      f1 = f(x1);
    }
  }
  double x = f1 > f2 ? x1 : x2;
  double fx = std::max(f1, f2);
  if (best_val > fx) {
    x = a + step * best;
    fx = best_val;
  }

  // Golden-section stalls at ~sqrt(eps) because the profit is flat at the top;
  // a parabola through wider-spaced points recovers the vertex of the locally
  // quadratic profit.
  const double h = std::min(1e-4 * (b - a), std::min(x - a, b - x));
  if (h > 0.0) {
    const double fm = f(x - h);
    const double fp = f(x + h);
    const double curvature = fp - 2.0 * fx + fm;
    if (curvature < 0.0) {
      const double v = x - 0.5 * h * (fp - fm) / curvature;
      if (std::abs(v - x) <= h) {
        const double fv = f(v);
        if (fv >= fx - 1e-15 * std::max(1.0, std::abs(fx))) x = v;
      }
    }
  }
  return x;
}

PriceEquilibrium numerical_price_equilibrium(double q1, double q2, const MarketParams& params, Regime regime,
                                             const PriceSearchOptions& options) {
  require_duopoly(q1, q2, regime);
  PriceEquilibrium eq;
  if (options.start) {
    eq.p1 = options.start->p1;
    eq.p2 = options.start->p2;
  } else {
    eq.p1 = 0.5 * (q1 + upper_price_bound(1, q1, q2, params));
    eq.p2 = 0.5 * (q2 + upper_price_bound(2, q1, q2, params));
  }
  eq.trace.push_back({eq.p1, eq.p2});
  for (int round = 1; round <= options.max_rounds; ++round) {
    const double p1 = best_response(1, q1, q2, eq.p2, params, regime, options.best_response);
    const double p2 = best_response(2, q1, q2, p1, params, regime, options.best_response);
    const double change = std::max(std::abs(p1 - eq.p1), std::abs(p2 - eq.p2));
    eq.p1 = p1;
    eq.p2 = p2;
    eq.rounds = round;
    eq.trace.push_back({p1, p2});
    if (change < options.tolerance) return eq;
  }
  std::ostringstream msg;
  msg.precision(17);
  msg << "numerical_price_equilibrium: no convergence after " << options.max_rounds << " rounds (q1=" << q1
      << ", q2=" << q2 << ", omega_hat=" << params.omega_hat << ", mu=" << params.mu << "); last iterates:";
  const std::size_t from = eq.trace.size() > 5 ? eq.trace.size() - 5 : 0;
  for (std::size_t i = from; i < eq.trace.size(); ++i) msg << " (" << eq.trace[i].p1 << ", " << eq.trace[i].p2 << ")";
  throw NonConvergenceError(msg.str(), std::move(eq.trace));
}

DeviationGain deviation_gain(double q1, double q2, double p1, double p2, const MarketParams& params, Regime regime,
                             int grid_points) {
  require_duopoly(q1, q2, regime);
  if (grid_points < 2) throw std::invalid_argument("deviation_gain: need at least two grid points");
  auto gain_for = [&](int firm) {
    const double rival = firm == 1 ? p2 : p1;
    const ProfitFn f{firm, q1, q2, rival, params, regime};
    const double current = f(firm == 1 ? p1 : p2);
    const double a = f.quality();
    const double b = std::max(a, choke_price(firm, q1, q2, rival, params, regime));
    double best = -std::numeric_limits<double>::infinity();
    for (int i = 0; i < grid_points; ++i) {
      best = std::max(best, f(a + (b - a) * i / (grid_points - 1)));
    }
    return best - current;
  };
  return {gain_for(1), gain_for(2)};
}

QualityStage numerical_quality_stage(const MarketParams& params, Regime regime, int grid_points,
                                     const PriceSearchOptions& options) {
  if (grid_points < 1) throw std::invalid_argument("numerical_quality_stage: need at least one grid point");
  const double q1 = params.q_hat;
  QualityStage stage;
  const double nan = std::numeric_limits<double>::quiet_NaN();
  for (int k = 1; k <= grid_points; ++k) {
    QualityPoint pt;
    pt.q2 = params.q_hat * k / (grid_points + 1.0);
    pt.eq8_ok = params.mu_admissible() && q1 / pt.q2 > quality_ratio_threshold(params);
    try {
      const auto eq = numerical_price_equilibrium(q1, pt.q2, params, regime, options);
      const auto s = demand(q1, pt.q2, eq.p1, eq.p2, params, regime);
      pt.p1 = eq.p1;
      pt.p2 = eq.p2;
      pt.profit1 = profit(s.n1, eq.p1, q1);
      pt.profit2 = profit(s.n2, eq.p2, pt.q2);
    } catch (const NonConvergenceError&) {
      // Outside the quality-ratio condition a pure price equilibrium need not exist.
      if (pt.eq8_ok) throw;
      pt.converged = false;
      pt.p1 = pt.p2 = pt.profit1 = pt.profit2 = nan;
    }
    stage.curve.push_back(pt);
  }
  // argmax over the region where the price stage is well posed; the whole
  // converged curve only when that region is empty
  const bool any_eq8 = std::any_of(stage.curve.begin(), stage.curve.end(),
                                   [](const QualityPoint& p) { return p.eq8_ok && p.converged; });
  double best = -std::numeric_limits<double>::infinity();
  for (const auto& pt : stage.curve) {
    if (!pt.converged || (any_eq8 && !pt.eq8_ok)) continue;
    if (pt.profit2 > best) {
      best = pt.profit2;
      stage.q2_best = pt.q2;
    }
  }
  if (!std::isfinite(best)) throw std::runtime_error("numerical_quality_stage: no converged grid point");
  return stage;
}

}  // namespace netshare::game

#include "netshare/game/market.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <optional>
#include <stdexcept>

namespace netshare::game {

std::string to_string(Regime r) {
  switch (r) {
    case Regime::kNoSharing:
      return "ns";
    case Regime::kSharing:
      return "s";
    case Regime::kMonopoly:
      return "m";
  }
  return "?";
}

std::string to_string(SupportConvention c) {
  return c == SupportConvention::kZeroToOmegaHat ? "paper" : "unit";
}

Regime regime_from_string(const std::string& s) {
  if (s == "ns") return Regime::kNoSharing;
  if (s == "s") return Regime::kSharing;
  if (s == "m") return Regime::kMonopoly;
  throw std::invalid_argument("unknown regime '" + s + "' (expected ns, s or m)");
}

SupportConvention convention_from_string(const std::string& s) {
  if (s == "paper") return SupportConvention::kZeroToOmegaHat;
  if (s == "unit") return SupportConvention::kUnitInterval;
  throw std::invalid_argument("unknown convention '" + s + "' (expected paper or unit)");
}

double MarketParams::support_lo() const {
  return convention == SupportConvention::kZeroToOmegaHat ? 0.0 : omega_hat - 1.0;
}

double MarketParams::support_length() const {
  return convention == SupportConvention::kZeroToOmegaHat ? omega_hat : 1.0;
}

bool MarketParams::mu_admissible() const { return mu >= 0.0 && mu < std::min(1.0, omega_hat / 2.0); }

NetworkSizes network_sizes(const SharesSolution& s, Regime regime) {
  if (regime == Regime::kSharing) return {s.n1 + s.n2, s.n1 + s.n2};
  return {s.n1, s.n2};
}

double ShareResiduals::max_abs() const {
  return std::max({std::abs(over), std::abs(under), std::abs(share1), std::abs(share2)});
}

namespace {

// Affine form c + a * omega_over + b * omega_under.
struct Affine {
  double c = 0.0;
  double a = 0.0;
  double b = 0.0;

  Affine operator+(const Affine& o) const { return {c + o.c, a + o.a, b + o.b}; }
  Affine operator-(const Affine& o) const { return {c - o.c, a - o.a, b - o.b}; }
  Affine operator*(double k) const { return {c * k, a * k, b * k}; }
  double at(double over, double under) const { return c + a * over + b * under; }
};

struct Model {
  double q1, q2, p1, p2;
  MarketParams params;
  Regime regime;

  double lo() const { return params.support_lo(); }
  double hi() const { return params.support_hi(); }

  Affine share1() const { return Affine{hi(), -1.0, 0.0} * (1.0 / params.support_length()); }
  Affine share2() const { return Affine{0.0, 1.0, -1.0} * (1.0 / params.support_length()); }
  Affine tilde1() const { return regime == Regime::kSharing ? share1() + share2() : share1(); }
  Affine tilde2() const { return regime == Regime::kSharing ? share1() + share2() : share2(); }

  // Utility of NSP i's offer evaluated at the threshold `at`.
  Affine u1(const Affine& at) const { return at * q1 + tilde1() * (params.mu * q1) - Affine{p1, 0, 0}; }
  Affine u2(const Affine& at) const { return at * q2 + tilde2() * (params.mu * q2) - Affine{p2, 0, 0}; }
};

const Affine kOver{0.0, 1.0, 0.0};
const Affine kUnder{0.0, 0.0, 1.0};

// Row of a 2x2 system: row.at(over, under) == 0.
std::optional<std::array<double, 2>> solve2(const Affine& r1, const Affine& r2) {
  const double det = r1.a * r2.b - r1.b * r2.a;
  const double scale = std::max({std::abs(r1.a), std::abs(r1.b), std::abs(r2.a), std::abs(r2.b), 1e-300});
  if (std::abs(det) <= 1e-13 * scale * scale) return std::nullopt;
  const double over = (-r1.c * r2.b + r1.b * r2.c) / det;
  const double under = (-r1.a * r2.c + r1.c * r2.a) / det;
  return std::array<double, 2>{over, under};
}

SharesSolution make_solution(const Model& m, double over, double under) {
  SharesSolution s;
  s.omega_over = over;
  s.omega_under = under;
  s.n1 = m.share1().at(over, under);
  s.n2 = m.share2().at(over, under);
  const double lo = m.lo();
  const double hi = m.hi();
  s.valid = lo < under && under < over && over < hi;
  return s;
}

// Consumer choice given expected network sizes: thresholds (under, over) of the
// induced partition, clamped to the support.
std::array<double, 2> induced_thresholds(const Model& m, const NetworkSizes& expected) {
  const double mu = m.params.mu;
  const double t12 = (m.p1 - m.p2 - mu * (m.q1 * expected.n1 - m.q2 * expected.n2)) / (m.q1 - m.q2);
  const double t02 = (m.p2 - mu * m.q2 * expected.n2) / m.q2;
  const double t01 = (m.p1 - mu * m.q1 * expected.n1) / m.q1;
  auto clamp = [&](double t) { return std::clamp(t, m.lo(), m.hi()); };
  if (t02 < t12) return {clamp(t02), clamp(t12)};
  return {clamp(t01), clamp(t01)};
}

void check_duopoly_inputs(double q1, double q2) {
  if (!(q2 > 0.0 && q1 > q2)) throw std::invalid_argument("market shares: require q1 > q2 > 0");
}

SharesSolution monopoly_allocation(double q1, double p1, const MarketParams& params, bool clamp) {
  if (!(q1 > 0.0)) throw std::invalid_argument("market shares: require q1 > 0");
  const double lo = params.support_lo();
  const double hi = params.support_hi();
  const double len = params.support_length();
  // over q1 + mu q1 (hi - over)/len - p1 = 0
  const double coeff = q1 * (1.0 - params.mu / len);
  if (std::abs(coeff) <= 1e-14 * q1) throw std::domain_error("market shares: singular monopoly system");
  double over = (p1 - params.mu * q1 * hi / len) / coeff;
  const bool interior = lo < over && over < hi;
  if (clamp) over = std::clamp(over, lo, hi);
  SharesSolution s;
  s.omega_over = over;
  s.omega_under = over;
  s.n1 = (hi - over) / len;
  s.n2 = 0.0;
  s.valid = interior;
  return s;
}

}  // namespace

SharesSolution demand(double q1, double q2, double p1, double p2, const MarketParams& params, Regime regime) {
  if (regime == Regime::kMonopoly) return monopoly_allocation(q1, p1, params, true);
  check_duopoly_inputs(q1, q2);
  const Model m{q1, q2, p1, p2, params, regime};
  const Affine pin_under_lo = kUnder - Affine{m.lo(), 0, 0};
  const Affine pin_over_lo = kOver - Affine{m.lo(), 0, 0};
  const Affine pin_over_hi = kOver - Affine{m.hi(), 0, 0};
  const Affine tie = kOver - kUnder;
  const Affine indiff_12 = m.u1(kOver) - m.u2(kOver);
  const Affine indiff_02 = m.u2(kUnder);
  const Affine indiff_01 = m.u1(kOver);

  const std::array<std::array<Affine, 2>, 7> candidates{{
      {indiff_12, indiff_02},     // both sell, market uncovered
      {indiff_12, pin_under_lo},  // both sell, market covered
      {indiff_01, tie},           // only NSP 1
      {pin_over_lo, tie},         // NSP 1 covers the market
      {pin_over_hi, indiff_02},   // only NSP 2
      {pin_over_hi, pin_under_lo},  // NSP 2 covers the market
      {pin_over_hi, tie},         // nobody buys
  }};

  const double tol = 1e-9 * std::max(1.0, std::abs(m.hi()));
  for (const auto& rows : candidates) {
    const auto sol = solve2(rows[0], rows[1]);
    if (!sol) continue;
    const double over = (*sol)[0];
    const double under = (*sol)[1];
    if (under < m.lo() - tol || over > m.hi() + tol || under > over + tol) continue;
    const SharesSolution s = make_solution(m, over, under);
    const auto induced = induced_thresholds(m, network_sizes(s, regime));
    if (std::abs(induced[0] - under) <= tol && std::abs(induced[1] - over) <= tol) {
      return make_solution(m, std::clamp(over, m.lo(), m.hi()), std::clamp(under, m.lo(), m.hi()));
    }
  }
  throw std::runtime_error("demand: no self-consistent allocation found");
}

SharesSolution market_shares(double q1, double q2, double p1, double p2, const MarketParams& params,
                             Regime regime) {
  if (regime == Regime::kMonopoly) {
    auto s = monopoly_allocation(q1, p1, params, false);
    if (s.valid) return s;
    auto clamped = monopoly_allocation(q1, p1, params, true);
    clamped.valid = false;
    return clamped;
  }
  check_duopoly_inputs(q1, q2);
  const Model m{q1, q2, p1, p2, params, regime};
  const auto sol = solve2(m.u1(kOver) - m.u2(kOver), m.u2(kUnder));
  if (!sol) throw std::domain_error("market shares: singular linear system");
  SharesSolution s = make_solution(m, (*sol)[0], (*sol)[1]);
  if (s.valid) return s;
  SharesSolution clamped = demand(q1, q2, p1, p2, params, regime);
  clamped.valid = false;
  return clamped;
}

ShareResiduals share_residuals(const SharesSolution& s, double q1, double q2, double p1, double p2,
                               const MarketParams& params, Regime regime) {
  const double mu = params.mu;
  const double len = params.support_length();
  ShareResiduals r;
  if (regime == Regime::kMonopoly) {
    r.over = utility(s.omega_over, q1, s.n1, p1, mu);
    r.share1 = s.n1 - (params.omega_hat - s.omega_over) / len;
    return r;
  }
  const NetworkSizes t = network_sizes(s, regime);
  r.over = utility(s.omega_over, q1, t.n1, p1, mu) - utility(s.omega_over, q2, t.n2, p2, mu);
  r.under = utility(s.omega_under, q2, t.n2, p2, mu);
  r.share1 = s.n1 - (params.omega_hat - s.omega_over) / len;
  r.share2 = s.n2 - (s.omega_over - s.omega_under) / len;
  return r;
}

}  // namespace netshare::game

// Acceptance suite: one PASS/FAIL line per criterion. Tolerances are pinned
// below; the exit status is non-zero if any criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <filesystem>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "netshare/externality/regression.hpp"
#include "netshare/externality/sweep.hpp"
#include "netshare/game/equilibrium.hpp"
#include "netshare/game/numerical.hpp"
#include "netshare/game/sweep.hpp"
#include "netshare/harness/csv.hpp"
#include "netshare/harness/experiment.hpp"
#include "netshare/netsim/scenario.hpp"
#include "netshare/netsim/simulator.hpp"
#include "netshare/rng.hpp"
#include "oracles.hpp"

using namespace netshare;
using game::MarketParams;
using game::Regime;
using game::SupportConvention;

namespace {

// ---- pinned tolerances -----------------------------------------------------
constexpr double kClosedFormTol = 1e-9;      // criterion 1
constexpr double kRegimeEquivTol = 1e-12;    // criterion 2
constexpr double kHomogeneityTol = 1e-10;    // criterion 3
constexpr double kShareOracleTol = 2e-3;     // criterion 4
constexpr double kNashGainTol = 1e-6;        // criterion 5
constexpr double kRateRelTol = 1e-9;         // criterion 7
constexpr double kTimeShareTol = 0.02;       // criterion 8
constexpr double kHingeExactTol = 1e-9;      // criterion 10
constexpr double kHingeNoisyTol = 0.05;      // criterion 10

constexpr std::uint64_t kSeed = 20160901;

struct Verdict {
  bool pass = false;
  std::string detail;
};

std::string fmt(double v) {
  std::ostringstream s;
  s.precision(6);
  s << v;
  return s.str();
}

MarketParams make(double omega_hat, double q_hat, double mu, SupportConvention c) {
  MarketParams p;
  p.omega_hat = omega_hat;
  p.q_hat = q_hat;
  p.mu = mu;
  p.convention = c;
  return p;
}

double admissible_mu(oracle::Gen& g, double omega_hat) {
  return g.uniform(0.0, 0.95) * std::min(1.0, omega_hat / 2.0);
}

// 1 ---------------------------------------------------------------------------
Verdict closed_form_fidelity() {
  const auto o = game::equilibrium_no_sharing(make(2.0, 1.0, 0.0, SupportConvention::kZeroToOmegaHat));
  const std::vector<std::pair<double, double>> checks{
      {o.q2, 4.0 / 7.0},        {o.p1, 1.25},           {o.p2, 9.0 / 14.0},   {o.shares.n1, 7.0 / 24.0},
      {o.shares.n2, 7.0 / 48.0}, {o.profit1, 7.0 / 96.0}, {o.profit2, 1.0 / 96.0}};
  double worst = 0.0;
  for (auto [got, want] : checks) worst = std::max(worst, std::abs(got - want));
  return {worst <= kClosedFormTol, "max abs error " + fmt(worst)};
}

// 2 ---------------------------------------------------------------------------
Verdict regime_equivalence() {
  oracle::Gen g(kSeed + 2);
  double worst = 0.0;
  for (int t = 0; t < 500; ++t) {
    const auto c = t % 2 ? SupportConvention::kZeroToOmegaHat : SupportConvention::kUnitInterval;
    const auto p = make(g.uniform(1.5, 6.0), g.uniform(0.5, 2.0), 0.0, c);
    const auto a = game::equilibrium_no_sharing(p);
    const auto b = game::equilibrium_sharing(p);
    for (auto [x, y] : {std::pair{a.q2, b.q2}, {a.p1, b.p1}, {a.p2, b.p2}, {a.shares.n1, b.shares.n1},
                        {a.shares.n2, b.shares.n2}, {a.shares.omega_over, b.shares.omega_over},
                        {a.shares.omega_under, b.shares.omega_under}, {a.profit1, b.profit1},
                        {a.profit2, b.profit2}, {a.consumer_surplus, b.consumer_surplus}}) {
      worst = std::max(worst, std::abs(x - y));
    }
  }
  return {worst <= kRegimeEquivTol, "500 draws, max |NS - S| " + fmt(worst)};
}

// 3 ---------------------------------------------------------------------------
Verdict homogeneity() {
  oracle::Gen g(kSeed + 3);
  double worst = 0.0;
  for (int t = 0; t < 200; ++t) {
    const auto conv = t % 2 ? SupportConvention::kZeroToOmegaHat : SupportConvention::kUnitInterval;
    auto p = make(g.uniform(1.5, 6.0), g.uniform(0.5, 2.0), 0.0, conv);
    p.mu = admissible_mu(g, p.omega_hat);
    for (double c : {0.5, 2.0, 10.0}) {
      auto s = p;
      s.q_hat *= c;
      for (auto r : {Regime::kNoSharing, Regime::kSharing}) {
        const auto a = game::equilibrium(p, r);
        const auto b = game::equilibrium(s, r);
        // prices and profits relative to their scale, shares and types absolute
        for (auto [x, y] : {std::pair{b.p1, c * a.p1}, {b.p2, c * a.p2}, {b.profit1, c * a.profit1},
                            {b.profit2, c * a.profit2}}) {
          worst = std::max(worst, std::abs(x - y) / std::max(1.0, std::abs(y)));
        }
        for (auto [x, y] : {std::pair{b.shares.n1, a.shares.n1}, {b.shares.n2, a.shares.n2},
                            {b.shares.omega_over, a.shares.omega_over}, {b.shares.omega_under, a.shares.omega_under}}) {
          worst = std::max(worst, std::abs(x - y));
        }
      }
    }
  }
  return {worst <= kHomogeneityTol, "200 draws x 3 scales x 2 regimes, max deviation " + fmt(worst)};
}

// 4 ---------------------------------------------------------------------------
Verdict share_oracle() {
  oracle::Gen g(kSeed + 4);
  std::ostringstream detail;
  bool pass = true;
  int total = 0;
  for (auto conv : {SupportConvention::kZeroToOmegaHat, SupportConvention::kUnitInterval}) {
    for (auto regime : {Regime::kNoSharing, Regime::kSharing}) {
      double worst = 0.0;
      int found = 0;
      int unconverged = 0;
      for (int attempt = 0; found < 100 && attempt < 100000; ++attempt) {
        auto p = make(g.uniform(1.5, 6.0), g.uniform(0.5, 2.0), 0.0, conv);
        p.mu = admissible_mu(g, p.omega_hat);
        const double q1 = p.q_hat;
        const double q2 = regime == Regime::kSharing ? game::quality_low_sharing(p) : game::quality_low_no_sharing(p);
        if (!(q1 / q2 > game::quality_ratio_threshold(p))) continue;
        const auto pp = regime == Regime::kSharing ? game::prices_sharing(p, q1, q2) : game::prices_no_sharing(p, q1, q2);
        const double p1 = pp.p1 * (1.0 + g.uniform(-0.05, 0.05));
        const double p2 = pp.p2 * (1.0 + g.uniform(-0.05, 0.05));
        const auto s = game::market_shares(q1, q2, p1, p2, p, regime);
        if (!s.valid) continue;
        ++found;
        const auto fe = oracle::fulfilled_expectations(q1, q2, p1, p2, p.mu, p.support_lo(), p.support_hi(),
                                                       regime == Regime::kSharing);
        if (!fe.converged) ++unconverged;
        worst = std::max({worst, std::abs(fe.n1 - s.n1), std::abs(fe.n2 - s.n2)});
      }
      total += found;
      pass = pass && found == 100 && worst <= kShareOracleTol;
      detail << game::to_string(conv) << "/" << game::to_string(regime) << ": " << found << " sets, max err "
             << fmt(worst) << " (" << unconverged << " oracle runs stopped at the iteration cap); ";
    }
  }
  detail << total << " comparisons";
  return {pass, detail.str()};
}

// 5 ---------------------------------------------------------------------------
Verdict nash_property() {
  oracle::Gen g(kSeed + 5);
  double worst = -1e300;
  int nonconv = 0;
  for (int t = 0; t < 50; ++t) {
    auto p = make(g.uniform(1.5, 6.0), 1.0, 0.0, SupportConvention::kZeroToOmegaHat);
    p.mu = admissible_mu(g, p.omega_hat);
    const double q1 = g.uniform(0.5, 2.0);
    const double q2 = q1 / (game::quality_ratio_threshold(p) * g.uniform(1.05, 4.0));
    const auto r = t % 2 ? Regime::kSharing : Regime::kNoSharing;
    try {
      const auto eq = game::numerical_price_equilibrium(q1, q2, p, r);
      worst = std::max(worst, game::deviation_gain(q1, q2, eq.p1, eq.p2, p, r, 1000).max());
    } catch (const game::NonConvergenceError&) {
      ++nonconv;
    }
  }
  return {nonconv == 0 && worst <= kNashGainTol,
          "50 draws (paper convention, both regimes), max grid deviation gain " + fmt(worst) + ", non-converged " +
              std::to_string(nonconv)};
}

// 6 ---------------------------------------------------------------------------
struct Fig6Facts {
  int cells = 0;
  int both_low_mu = 0;   // mu = 0.05
  int both_high_mu = 0;  // mu = 0.64
  int high_end_no_share = 0;
  int high_end_price_violations = 0;
  int cs_lower_with_sharing = 0;
};

Fig6Facts fig6_facts(const std::vector<game::MarketRow>& rows, SupportConvention conv) {
  std::map<std::tuple<double, double, double>, std::map<Regime, const game::MarketRow*>> cells;
  for (const auto& r : rows) {
    if (r.params.convention != conv || !r.error.empty()) continue;
    cells[{r.params.q_hat, r.params.mu, r.params.omega_hat}][r.regime] = &r;
  }
  Fig6Facts f;
  for (const auto& [key, c] : cells) {
    if (!c.count(Regime::kNoSharing) || !c.count(Regime::kSharing)) continue;
    const auto& ns = c.at(Regime::kNoSharing)->outcome;
    const auto& s = c.at(Regime::kSharing)->outcome;
    const bool pref1 = s.profit1 > ns.profit1;
    const bool pref2 = s.profit2 > ns.profit2;
    ++f.cells;
    const double mu = std::get<1>(key);
    if (pref1 && pref2) (mu > 0.3 ? f.both_high_mu : f.both_low_mu)++;
    if (!pref1) {
      ++f.high_end_no_share;
      if (!(s.p1 < ns.p1)) ++f.high_end_price_violations;
    }
    if (s.consumer_surplus < ns.consumer_surplus) ++f.cs_lower_with_sharing;
  }
  return f;
}

Verdict fig6_qualitative() {
  const auto grid = game::MarketGrid::fig6_default();
  const auto rows = game::sweep_market(grid);
  std::ostringstream detail;
  bool pass = true;
  for (auto conv : {SupportConvention::kZeroToOmegaHat, SupportConvention::kUnitInterval}) {
    const auto f = fig6_facts(rows, conv);
    const int per_mu = f.cells / 2;
    const bool a = f.both_high_mu * 1.0 / per_mu < f.both_low_mu * 1.0 / per_mu;
    const bool b = f.high_end_price_violations == 0;
    const bool c = f.cs_lower_with_sharing > 0;
    // The [0, omega_hat] convention carries the verdict; the other is reported.
    if (conv == SupportConvention::kZeroToOmegaHat) pass = a && b && c;
    detail << game::to_string(conv) << ": (a) both-prefer " << f.both_high_mu << "/" << per_mu << " at mu=0.64 vs "
           << f.both_low_mu << "/" << per_mu << " at mu=0.05 " << (a ? "ok" : "NOT lower") << "; (b) "
           << f.high_end_price_violations << " violations on " << f.high_end_no_share << " cells "
           << (b ? "ok" : "violated") << "; (c) " << f.cs_lower_with_sharing << " cells with CS_S < CS_NS "
           << (c ? "ok" : "none") << ". ";
  }
  return {pass, detail.str()};
}

// 7 ---------------------------------------------------------------------------
Verdict rate_point_check() {
  auto cfg = netsim::ScenarioConfig::mmwave_default();
  cfg.fading = false;
  const double s_mw = std::pow(10.0, -7.0);  // -70 dBm
  const double r = netsim::shannon_rate_bps(cfg, 1.0, s_mw, 0.0);
  const double want = 0.8e9 * std::log2(1.0 + 0.5 * std::pow(10.0, 0.7));
  const double rel = std::abs(r - want) / want;
  return {rel <= kRateRelTol && std::abs(r - 1.4478e9) / 1.4478e9 < 1e-4,
          "R = " + fmt(r / 1e9) + " Gb/s, rel err " + fmt(rel)};
}

// 8 ---------------------------------------------------------------------------
Verdict scheduler_fairness() {
  auto cfg = netsim::ScenarioConfig::mmwave_default();
  netsim::Deployment d;
  d.bs_positions = {{500.0, 500.0}};
  d.band_of_bs = {0};
  for (int u = 0; u < 4; ++u) {
    const double a = u * 3.141592653589793 / 2.0;
    d.ue_positions.push_back({500.0 + 50.0 * std::cos(a), 500.0 + 50.0 * std::sin(a)});
    d.link_state.push_back(netsim::LinkState::kLos);
    d.shadowing_db.push_back(0.0);
  }
  d.association.assign(4, 0);
  const netsim::SlotEngine engine(d, cfg, 1.0);
  std::vector<int> count(4, 0);
  const int slots = 100000;
  for (int s = 0; s < slots; ++s) {
    for (const auto& l : engine.run_slot(derive_seed(kSeed, {8, static_cast<std::uint64_t>(s)}))) ++count[l.ue];
  }
  double worst = 0.0;
  std::string shares;
  for (int c : count) {
    const double share = static_cast<double>(c) / slots;
    worst = std::max(worst, std::abs(share - 0.25));
    shares += fmt(share) + " ";
  }
  return {worst <= kTimeShareTol, "time shares " + shares + "(max dev " + fmt(worst) + ")"};
}

// 9 and 11 share the full-scale sweeps --------------------------------------
harness::ExperimentSpec fig2_spec(const std::filesystem::path& out, int workers) {
  harness::ExperimentSpec s;
  s.n_grid = game::arithmetic_range(0.1, 1.0, 0.1);
  s.drops = 20;
  s.slots = 200;
  s.seed = kSeed;
  s.workers = workers;
  s.bootstrap_resamples = 1000;
  s.output_dir = out;
  return s;
}

struct Fig2Runs {
  harness::Fig2Result first;
  std::filesystem::path dir_a, dir_b;
  std::string error;
  bool ran = false;
};

Fig2Runs& fig2_runs() {
  static Fig2Runs runs;
  if (runs.ran) return runs;
  runs.ran = true;
  const auto base = std::filesystem::temp_directory_path() / "netshare_acceptance";
  runs.dir_a = base / "workers1";
  runs.dir_b = base / "workers4";
  std::filesystem::remove_all(base);
  try {
    runs.first = harness::reproduce_fig2(fig2_spec(runs.dir_a, 1));
    harness::reproduce_fig2(fig2_spec(runs.dir_b, 4));
  } catch (const std::exception& e) {
    runs.error = e.what();
  }
  return runs;
}

Verdict network_effect_direction() {
  auto& runs = fig2_runs();
  if (!runs.error.empty()) return {false, runs.error};
  const auto& mm = runs.first.mmwave;
  const auto& mw = runs.first.microwave;
  const auto at = [](const externality::SweepResult& r, double n) {
    for (const auto& p : r.points) {
      if (std::abs(p.n - n) < 1e-9) return p;
    }
    throw std::runtime_error("n not on grid");
  };
  const auto half = at(mm.sweep, 0.5);
  const auto full = at(mm.sweep, 1.0);
  const bool separated = full.rate5 > half.rate5 && full.ci_lo > half.ci_hi;
  const bool mu_order = mm.mu && mw.mu && *mm.mu > *mw.mu;
  std::ostringstream d;
  d << "mmWave rate5(0.5)=" << fmt(half.rate5 / 1e6) << " Mb/s [" << fmt(half.ci_lo / 1e6) << ", "
    << fmt(half.ci_hi / 1e6) << "], rate5(1.0)=" << fmt(full.rate5 / 1e6) << " Mb/s [" << fmt(full.ci_lo / 1e6)
    << ", " << fmt(full.ci_hi / 1e6) << "]; mu mmWave=" << (mm.mu ? fmt(*mm.mu) : mm.mu_error)
    << " (breakpoint " << (mm.fit.breakpoint ? fmt(*mm.fit.breakpoint) : "none") << "), mu microwave="
    << (mw.mu ? fmt(*mw.mu) : mw.mu_error);
  return {separated && mu_order, d.str()};
}

// 10 --------------------------------------------------------------------------
Verdict segmented_recovery() {
  auto hinge = [](double n) { return 1.0 + 2.0 * std::max(0.0, n - 0.4); };
  std::vector<externality::Observation> pts;
  for (int i = 0; i <= 20; ++i) pts.push_back({i / 20.0, hinge(i / 20.0)});
  const auto exact = externality::fit_segmented(pts);
  const bool exact_ok = exact.breakpoint && std::abs(*exact.breakpoint - 0.4) <= kHingeExactTol &&
                        std::abs(exact.left.slope) <= kHingeExactTol &&
                        std::abs(exact.right.slope - 2.0) <= kHingeExactTol;
  double worst = 0.0;
  bool all_found = true;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    std::mt19937_64 rng(kSeed + seed);
    std::normal_distribution<double> noise(0.0, 0.01 * 1.2);  // 1% of the y range
    auto noisy = pts;
    for (auto& p : noisy) p.y += noise(rng);
    const auto fit = externality::fit_segmented(noisy);
    if (!fit.breakpoint) {
      all_found = false;
      continue;
    }
    worst = std::max(worst, std::abs(*fit.breakpoint - 0.4));
  }
  return {exact_ok && all_found && worst <= kHingeNoisyTol,
          std::string("noiseless ") + (exact_ok ? "exact" : "NOT exact") + "; noisy max breakpoint error " +
              fmt(worst) + " over 20 seeds"};
}

// 11 --------------------------------------------------------------------------
Verdict determinism() {
  auto& runs = fig2_runs();
  if (!runs.error.empty()) return {false, runs.error};
  int compared = 0;
  int differing = 0;
  for (const auto& entry : std::filesystem::directory_iterator(runs.dir_a)) {
    ++compared;
    const auto other = runs.dir_b / entry.path().filename();
    if (!std::filesystem::exists(other) || harness::read_file(entry.path()) != harness::read_file(other)) ++differing;
  }
  return {compared == 4 && differing == 0, std::to_string(compared) + " files compared (workers 1 vs 4), " +
                                               std::to_string(differing) + " differ"};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Verdict()>>> criteria{
      {"closed-form fidelity", closed_form_fidelity},
      {"mu=0 regime equivalence", regime_equivalence},
      {"homogeneity in q_hat", homogeneity},
      {"share solver vs fulfilled-expectations oracle", share_oracle},
      {"Nash property of numerical oracle", nash_property},
      {"market-sweep qualitative reproduction", fig6_qualitative},
      {"rate formula point check", rate_point_check},
      {"scheduler temporal fairness", scheduler_fairness},
      {"network-effect direction", network_effect_direction},
      {"segmented-fit recovery", segmented_recovery},
      {"determinism across worker counts", determinism},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto t0 = std::chrono::steady_clock::now();
    Verdict v;
    try {
      v = criteria[i].second();
    } catch (const std::exception& e) {
      v = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (!v.pass) ++failures;
    std::printf("%s %2zu %s: %s [%.1fs]\n", v.pass ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(),
                v.detail.c_str(), secs);
    std::fflush(stdout);
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}

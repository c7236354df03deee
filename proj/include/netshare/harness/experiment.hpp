#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "netshare/externality/regression.hpp"
#include "netshare/externality/sweep.hpp"
#include "netshare/game/sweep.hpp"
#include "netshare/netsim/scenario.hpp"

namespace netshare::harness {

struct AuditSettings {
  int rows = 6;            ///< grid cells sampled
  int quality_grid = 200;  ///< low-end quality grid for the numerical quality stage
  int deviation_grid = 1000;
};

/// Everything an experiment run needs. No wall-clock seeding: `seed` is mandatory.
struct ExperimentSpec {
  netsim::ScenarioConfig mmwave = netsim::ScenarioConfig::mmwave_default();
  netsim::ScenarioConfig microwave = netsim::ScenarioConfig::microwave_default();
  std::vector<double> n_grid;
  int drops = 20;
  int slots = 200;
  std::uint64_t seed = 0;
  int workers = 1;
  int bootstrap_resamples = 1000;
  game::MarketGrid market = game::MarketGrid::fig6_default();
  AuditSettings audit;
  std::filesystem::path output_dir = "out";
};

/// Scenario paths and output_dir are resolved relative to `base_dir`. The
/// "seed" key is required unless `seed_override` is given.
ExperimentSpec experiment_from_json(const nlohmann::json& j, const std::filesystem::path& base_dir,
                                    std::optional<std::uint64_t> seed_override = std::nullopt);
ExperimentSpec load_experiment(const std::filesystem::path& path,
                               std::optional<std::uint64_t> seed_override = std::nullopt);

/// Seed for one named experiment; per-n and per-drop seeds are derived below it.
std::uint64_t experiment_seed(std::uint64_t master, const std::string& name);

nlohmann::json fit_to_json(const externality::SegmentedFit& fit, std::optional<double> mu);

struct BandFit {
  std::string band;
  externality::SweepResult sweep;
  externality::SegmentedFit fit;
  std::optional<double> mu;
  std::string mu_error;
};

struct Fig2Result {
  BandFit mmwave;
  BandFit microwave;
  std::vector<std::filesystem::path> files;
};

/// Sweeps, fits and writes fig2_<band>_sweep.csv and fig2_<band>_fit.json.
Fig2Result reproduce_fig2(const ExperimentSpec& spec);

struct Fig6Summary {
  double mu = 0.0;
  double q_hat = 0.0;
  game::SupportConvention convention = game::SupportConvention::kZeroToOmegaHat;
  int cells = 0;
  int both_prefer_sharing = 0;
  double both_prefer_fraction() const { return cells ? static_cast<double>(both_prefer_sharing) / cells : 0.0; }
};

struct Fig6Result {
  std::vector<game::MarketRow> rows;
  std::vector<Fig6Summary> summary;
  int error_rows = 0;
  std::vector<std::filesystem::path> files;
};

/// Market sweep over the spec's grid; writes fig6_market.csv and fig6_summary.json.
Fig6Result reproduce_fig6(const ExperimentSpec& spec);
std::vector<Fig6Summary> summarize_fig6(const std::vector<game::MarketRow>& rows);

struct AuditEntry {
  game::MarketParams params;
  game::Regime regime = game::Regime::kNoSharing;
  double closed_q2 = 0.0;
  double closed_p1 = 0.0;
  double closed_p2 = 0.0;
  double closed_deviation_gain = 0.0;  ///< max unilateral gain against the printed prices
  double numeric_p1 = 0.0;
  double numeric_p2 = 0.0;
  double price_gap = 0.0;               ///< max |numeric - printed| price at the printed qualities
  double numeric_q2 = 0.0;
  double q2_gap = 0.0;
  double quality_grid_step = 0.0;
  std::string error;
};

struct AuditReport {
  std::vector<AuditEntry> entries;
  int error_rows = 0;
  std::string text;
  nlohmann::json json;
  std::vector<std::filesystem::path> files;
};

/// Checks the printed closed forms against the numerical equilibrium oracle on
/// sampled grid cells, both duopoly regimes and every configured convention.
/// Writes audit_report.txt and audit_report.json.
AuditReport audit_consistency(const ExperimentSpec& spec);

}  // namespace netshare::harness

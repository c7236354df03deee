// netshare: simulator, externality fit, duopoly game and experiment runner.

#include <cstdint>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "netshare/externality/regression.hpp"
#include "netshare/game/equilibrium.hpp"
#include "netshare/game/sweep.hpp"
#include "netshare/harness/csv.hpp"
#include "netshare/harness/experiment.hpp"
#include "netshare/netsim/scenario.hpp"
#include "netshare/netsim/simulator.hpp"

namespace {

using namespace netshare;

nlohmann::json outcome_json(const game::EquilibriumOutcome& o, const game::MarketParams& p) {
  return {{"omega_hat", p.omega_hat},
          {"q_hat", p.q_hat},
          {"mu", p.mu},
          {"regime", game::to_string(o.regime)},
          {"convention", game::to_string(p.convention)},
          {"q1", o.q1},
          {"q2", o.q2},
          {"p1", o.p1},
          {"p2", o.p2},
          {"n1", o.shares.n1},
          {"n2", o.shares.n2},
          {"omega_over", o.shares.omega_over},
          {"omega_under", o.shares.omega_under},
          {"profit1", o.profit1},
          {"profit2", o.profit2},
          {"cs", o.consumer_surplus},
          {"eq8_ok", o.conditions.eq8_ok},
          {"eq9_ok", o.conditions.eq9_ok}};
}

void print_files(const std::vector<std::filesystem::path>& files) {
  for (const auto& f : files) std::cout << "wrote " << f.string() << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"mmWave/microwave network-externality and duopoly sharing workbench"};
  app.require_subcommand(1);

  // netsim
  auto* netsim_cmd = app.add_subcommand("netsim", "Simulate per-UE throughput at one network size");
  std::string config_path;
  double n = 1.0;
  int drops = 1;
  int slots = 1;
  std::uint64_t seed = 0;
  std::string out_path;
  int workers = 1;
  netsim_cmd->add_option("--config", config_path, "Scenario JSON")->required()->check(CLI::ExistingFile);
  netsim_cmd->add_option("--n", n, "Network size in (0, 1]")->required();
  netsim_cmd->add_option("--drops", drops, "Monte Carlo drops")->required();
  netsim_cmd->add_option("--slots", slots, "Scheduling slots per drop")->required();
  netsim_cmd->add_option("--seed", seed, "Master seed")->required();
  netsim_cmd->add_option("--out", out_path, "Output CSV")->required();
  netsim_cmd->add_option("--workers", workers, "Worker threads (0 = all cores)");

  // fit
  auto* fit_cmd = app.add_subcommand("fit", "Segmented regression of a sweep CSV and mu extraction");
  std::string fit_in;
  std::string fit_out;
  fit_cmd->add_option("--in", fit_in, "Sweep CSV")->required()->check(CLI::ExistingFile);
  fit_cmd->add_option("--out", fit_out, "Fit JSON")->required();

  // game
  auto* game_cmd = app.add_subcommand("game", "Evaluate one equilibrium");
  game::MarketParams params;
  std::string regime_name = "ns";
  std::string convention_name = "paper";
  bool cs_normalized = false;
  game_cmd->add_option("--omega-hat", params.omega_hat, "Taste upper bound")->required();
  game_cmd->add_option("--q-hat", params.q_hat, "Maximum inherent quality")->required();
  game_cmd->add_option("--mu", params.mu, "Network effect intensity")->required();
  game_cmd->add_option("--regime", regime_name, "ns, s or m")->check(CLI::IsMember({"ns", "s", "m"}));
  game_cmd->add_option("--convention", convention_name, "paper or unit")->check(CLI::IsMember({"paper", "unit"}));
  game_cmd->add_flag("--cs-normalized", cs_normalized, "Divide consumer surplus by the support length");

  // sweep
  auto* sweep_cmd = app.add_subcommand("sweep", "Market sweep over a grid");
  std::string grid_path;
  std::string sweep_out;
  sweep_cmd->add_option("--grid", grid_path, "Grid JSON")->required()->check(CLI::ExistingFile);
  sweep_cmd->add_option("--out", sweep_out, "Output CSV")->required();

  // experiment commands
  std::string spec_path;
  std::optional<std::uint64_t> spec_seed;
  std::optional<int> spec_workers;
  auto add_spec = [&](CLI::App* cmd, bool stochastic) {
    cmd->add_option("--spec", spec_path, "Experiment JSON")->required()->check(CLI::ExistingFile);
    auto* opt = cmd->add_option("--seed", spec_seed, "Master seed (overrides the spec file)");
    if (stochastic) opt->required();
    cmd->add_option("--workers", spec_workers, "Worker threads");
  };
  auto* fig2_cmd = app.add_subcommand("reproduce-fig2", "Network-size sweeps and fits for both bands");
  add_spec(fig2_cmd, true);
  auto* fig6_cmd = app.add_subcommand("reproduce-fig6", "Duopoly market sweep");
  add_spec(fig6_cmd, false);
  auto* audit_cmd = app.add_subcommand("audit", "Closed-form vs numerical equilibrium audit");
  add_spec(audit_cmd, true);

  CLI11_PARSE(app, argc, argv);

  try {
    if (netsim_cmd->parsed()) {
      const auto config = netsim::load_scenario(config_path);
      const auto result = netsim::simulate(config, n, drops, slots, seed, {workers});
      harness::write_file(out_path, harness::samples_csv(result.samples));
      std::cerr << "samples=" << result.samples.size() << " resampled_drops=" << result.resampled_drops << "\n";
      return 0;
    }
    if (fit_cmd->parsed()) {
      const auto points = harness::parse_sweep_csv(harness::read_file(fit_in));
      const auto obs = externality::to_observations(points);
      const auto fit = externality::fit_segmented(obs);
      std::optional<double> mu;
      std::string mu_error;
      try {
        mu = externality::extract_mu(fit);
      } catch (const std::exception& e) {
        mu_error = e.what();
      }
      auto j = harness::fit_to_json(fit, mu);
      if (!mu_error.empty()) j["mu_error"] = mu_error;
      harness::write_file(fit_out, j.dump(2) + "\n");
      if (!mu) {
        std::cerr << "error: " << mu_error << "\n";
        return 1;
      }
      return 0;
    }
    if (game_cmd->parsed()) {
      params.convention = game::convention_from_string(convention_name);
      const auto regime = game::regime_from_string(regime_name);
      const auto mode = cs_normalized ? game::SurplusMode::kNormalized : game::SurplusMode::kLiteral;
      const auto outcome = game::equilibrium(params, regime, mode);
      std::cout << outcome_json(outcome, params).dump(2) << "\n";
      return 0;
    }
    if (sweep_cmd->parsed()) {
      const auto grid = game::market_grid_from_json(nlohmann::json::parse(harness::read_file(grid_path)));
      const auto rows = game::sweep_market(grid);
      harness::write_file(sweep_out, harness::market_csv(rows));
      int errors = 0;
      for (const auto& r : rows) {
        if (!r.error.empty()) {
          ++errors;
          std::cerr << "error row omega_hat=" << r.params.omega_hat << " mu=" << r.params.mu << ": " << r.error << "\n";
        }
      }
      return errors == 0 ? 0 : 1;
    }

    auto spec = harness::load_experiment(spec_path, spec_seed);
    if (spec_workers) spec.workers = *spec_workers;
    if (fig2_cmd->parsed()) {
      const auto result = harness::reproduce_fig2(spec);
      print_files(result.files);
      for (const auto* b : {&result.mmwave, &result.microwave}) {
        std::cout << b->band << ": mu=" << (b->mu ? harness::format_number(*b->mu) : "n/a (" + b->mu_error + ")")
                  << " breakpoint="
                  << (b->fit.breakpoint ? harness::format_number(*b->fit.breakpoint) : std::string("none")) << "\n";
      }
      return (result.mmwave.mu && result.microwave.mu) ? 0 : 1;
    }
    if (fig6_cmd->parsed()) {
      const auto result = harness::reproduce_fig6(spec);
      print_files(result.files);
      for (const auto& s : result.summary) {
        std::cout << game::to_string(s.convention) << " q_hat=" << s.q_hat << " mu=" << s.mu
                  << " both_prefer_sharing=" << s.both_prefer_sharing << "/" << s.cells << "\n";
      }
      return result.error_rows == 0 ? 0 : 1;
    }
    if (audit_cmd->parsed()) {
      const auto report = harness::audit_consistency(spec);
      std::cout << report.text;
      print_files(report.files);
      return report.error_rows == 0 ? 0 : 1;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}

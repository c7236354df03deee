#include "netshare/harness/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

#include "netshare/game/numerical.hpp"
#include "netshare/harness/csv.hpp"
#include "netshare/rng.hpp"

namespace netshare::harness {

namespace {

std::vector<double> n_grid_from_json(const nlohmann::json& j) {
  if (j.is_array()) return j.get<std::vector<double>>();
  return game::arithmetic_range(j.at("start").get<double>(), j.at("stop").get<double>(), j.at("step").get<double>());
}

netsim::ScenarioConfig scenario_ref(const nlohmann::json& j, const std::filesystem::path& base_dir) {
  if (j.is_string()) {
    std::filesystem::path p = j.get<std::string>();
    if (p.is_relative()) p = base_dir / p;
    return netsim::load_scenario(p);
  }
  return netsim::scenario_from_json(j);
}

std::string json_text(const nlohmann::json& j) { return j.dump(2) + "\n"; }

}  // namespace

ExperimentSpec experiment_from_json(const nlohmann::json& j, const std::filesystem::path& base_dir,
                                    std::optional<std::uint64_t> seed_override) {
  static const std::set<std::string> known{"mmwave_scenario", "microwave_scenario", "n_grid", "drops", "slots",
                                           "seed", "workers", "bootstrap_resamples", "market", "audit",
                                           "output_dir"};
  for (auto it = j.begin(); it != j.end(); ++it) {
    if (!known.count(it.key())) throw std::invalid_argument("experiment: unknown key '" + it.key() + "'");
  }
  if (!seed_override && !j.contains("seed")) throw std::invalid_argument("experiment: 'seed' is required");
  ExperimentSpec spec;
  spec.seed = seed_override ? *seed_override : j.at("seed").get<std::uint64_t>();
  if (auto it = j.find("mmwave_scenario"); it != j.end()) spec.mmwave = scenario_ref(*it, base_dir);
  if (auto it = j.find("microwave_scenario"); it != j.end()) spec.microwave = scenario_ref(*it, base_dir);
  spec.n_grid = j.contains("n_grid") ? n_grid_from_json(j.at("n_grid"))
                                     : game::arithmetic_range(0.1, 1.0, 0.1);
  spec.drops = j.value("drops", spec.drops);
  spec.slots = j.value("slots", spec.slots);
  spec.workers = j.value("workers", spec.workers);
  spec.bootstrap_resamples = j.value("bootstrap_resamples", spec.bootstrap_resamples);
  if (auto it = j.find("market"); it != j.end()) spec.market = game::market_grid_from_json(*it);
  if (auto it = j.find("audit"); it != j.end()) {
    spec.audit.rows = it->value("rows", spec.audit.rows);
    spec.audit.quality_grid = it->value("quality_grid", spec.audit.quality_grid);
    spec.audit.deviation_grid = it->value("deviation_grid", spec.audit.deviation_grid);
  }
  std::filesystem::path out = j.value("output_dir", std::string("out"));
  spec.output_dir = out.is_relative() ? base_dir / out : out;
  if (spec.drops < 1 || spec.slots < 1) throw std::invalid_argument("experiment: drops and slots must be >= 1");
  return spec;
}

ExperimentSpec load_experiment(const std::filesystem::path& path, std::optional<std::uint64_t> seed_override) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(read_file(path));
  } catch (const nlohmann::json::exception& e) {
    throw std::runtime_error("experiment file " + path.string() + ": " + e.what());
  }
  return experiment_from_json(j, path.has_parent_path() ? path.parent_path() : std::filesystem::path("."),
                              seed_override);
}

std::uint64_t experiment_seed(std::uint64_t master, const std::string& name) { return derive_seed(master, name); }

nlohmann::json fit_to_json(const externality::SegmentedFit& fit, std::optional<double> mu) {
  nlohmann::json j;
  j["model"] = fit.breakpoint ? "segmented" : "linear";
  j["breakpoint"] = fit.breakpoint ? nlohmann::json(*fit.breakpoint) : nlohmann::json(nullptr);
  j["left"] = {{"slope", fit.left.slope}, {"intercept", fit.left.intercept}};
  j["right"] = {{"slope", fit.right.slope}, {"intercept", fit.right.intercept}};
  j["sse"] = fit.sse;
  j["num_points"] = fit.num_points;
  j["mu"] = mu ? nlohmann::json(*mu) : nlohmann::json(nullptr);
  return j;
}

Fig2Result reproduce_fig2(const ExperimentSpec& spec) {
  Fig2Result result;
  externality::SweepOptions options;
  options.workers = spec.workers;
  options.bootstrap_resamples = spec.bootstrap_resamples;

  auto run_band = [&](const std::string& band, const netsim::ScenarioConfig& config) {
    BandFit b;
    b.band = band;
    b.sweep = externality::sweep_network_size(config, spec.n_grid, spec.drops, spec.slots,
                                              experiment_seed(spec.seed, "fig2-" + band), options);
    const auto obs = externality::to_observations(b.sweep.points);
    b.fit = obs.size() >= 5 ? externality::fit_segmented(obs) : [&] {
      externality::SegmentedFit f;
      f.left = f.right = externality::fit_ols(obs);
      f.sse = externality::sum_squared_error(obs, f.left);
      f.num_points = obs.size();
      return f;
    }();
    try {
      b.mu = externality::extract_mu(b.fit);
    } catch (const std::exception& e) {
      b.mu_error = e.what();
    }
    const auto sweep_path = spec.output_dir / ("fig2_" + band + "_sweep.csv");
    const auto fit_path = spec.output_dir / ("fig2_" + band + "_fit.json");
    write_file(sweep_path, sweep_csv(b.sweep.points));
    auto fit_json = fit_to_json(b.fit, b.mu);
    fit_json["band"] = band;
    fit_json["resampled_drops"] = b.sweep.resampled_drops;
    if (!b.mu_error.empty()) fit_json["mu_error"] = b.mu_error;
    write_file(fit_path, json_text(fit_json));
    result.files.push_back(sweep_path);
    result.files.push_back(fit_path);
    return b;
  };

  result.mmwave = run_band("mmwave", spec.mmwave);
  result.microwave = run_band("microwave", spec.microwave);
  return result;
}

std::vector<Fig6Summary> summarize_fig6(const std::vector<game::MarketRow>& rows) {
  // Key: (convention, q_hat, mu) -> counts over omega_hat cells.
  std::map<std::tuple<int, double, double>, Fig6Summary> cells;
  std::set<std::tuple<int, double, double, double>> seen;
  for (const auto& r : rows) {
    if (!r.error.empty() || r.regime == game::Regime::kMonopoly) continue;
    const auto key = std::make_tuple(static_cast<int>(r.params.convention), r.params.q_hat, r.params.mu);
    if (!seen.insert({std::get<0>(key), r.params.q_hat, r.params.mu, r.params.omega_hat}).second) continue;
    auto& s = cells[key];
    s.mu = r.params.mu;
    s.q_hat = r.params.q_hat;
    s.convention = r.params.convention;
    ++s.cells;
    if (r.prefers_sharing_1 && r.prefers_sharing_2) ++s.both_prefer_sharing;
  }
  std::vector<Fig6Summary> out;
  for (const auto& [key, s] : cells) out.push_back(s);
  return out;
}

Fig6Result reproduce_fig6(const ExperimentSpec& spec) {
  Fig6Result result;
  result.rows = game::sweep_market(spec.market);
  for (const auto& r : result.rows) {
    if (!r.error.empty()) ++result.error_rows;
  }
  result.summary = summarize_fig6(result.rows);

  const auto csv_path = spec.output_dir / "fig6_market.csv";
  write_file(csv_path, market_csv(result.rows));
  nlohmann::json summary = nlohmann::json::array();
  for (const auto& s : result.summary) {
    summary.push_back({{"convention", game::to_string(s.convention)},
                       {"q_hat", s.q_hat},
                       {"mu", s.mu},
                       {"cells", s.cells},
                       {"both_prefer_sharing", s.both_prefer_sharing},
                       {"both_prefer_fraction", s.both_prefer_fraction()}});
  }
  nlohmann::json doc = {{"grid", game::to_json(spec.market)}, {"summary", summary}, {"error_rows", result.error_rows}};
  const auto summary_path = spec.output_dir / "fig6_summary.json";
  write_file(summary_path, json_text(doc));
  result.files = {csv_path, summary_path};
  return result;
}

AuditReport audit_consistency(const ExperimentSpec& spec) {
  const auto& grid = spec.market;
  if (grid.omega_hat.empty() || grid.q_hat.empty() || grid.mu.empty()) {
    throw std::invalid_argument("audit: market grid must be non-empty");
  }
  // Sample distinct (omega_hat, q_hat, mu) cells.
  const std::size_t total = grid.omega_hat.size() * grid.q_hat.size() * grid.mu.size();
  const std::size_t wanted = std::min<std::size_t>(total, static_cast<std::size_t>(std::max(spec.audit.rows, 0)));
  SplitMix64 rng(experiment_seed(spec.seed, "audit"));
  std::set<std::size_t> picked;
  while (picked.size() < wanted) picked.insert(static_cast<std::size_t>(rng.uniform() * static_cast<double>(total)));

  AuditReport report;
  for (std::size_t index : picked) {
    const double omega_hat = grid.omega_hat[index % grid.omega_hat.size()];
    const double q_hat = grid.q_hat[(index / grid.omega_hat.size()) % grid.q_hat.size()];
    const double mu = grid.mu[index / (grid.omega_hat.size() * grid.q_hat.size())];
    for (auto convention : grid.conventions) {
      for (auto regime : {game::Regime::kNoSharing, game::Regime::kSharing}) {
        AuditEntry e;
        e.params = {omega_hat, q_hat, mu, convention};
        e.regime = regime;
        e.quality_grid_step = q_hat / (spec.audit.quality_grid + 1.0);
        try {
          const auto closed = game::equilibrium(e.params, regime, grid.surplus);
          e.closed_q2 = closed.q2;
          e.closed_p1 = closed.p1;
          e.closed_p2 = closed.p2;
          e.closed_deviation_gain =
              game::deviation_gain(closed.q1, closed.q2, closed.p1, closed.p2, e.params, regime, spec.audit.deviation_grid)
                  .max();
          const auto numeric = game::numerical_price_equilibrium(closed.q1, closed.q2, e.params, regime);
          e.numeric_p1 = numeric.p1;
          e.numeric_p2 = numeric.p2;
          e.price_gap = std::max(std::abs(numeric.p1 - closed.p1), std::abs(numeric.p2 - closed.p2));
          const auto stage = game::numerical_quality_stage(e.params, regime, spec.audit.quality_grid);
          e.numeric_q2 = stage.q2_best;
          e.q2_gap = std::abs(stage.q2_best - closed.q2);
          if (!std::isfinite(e.closed_deviation_gain)) e.error = "non-finite deviation gain";
        } catch (const std::exception& ex) {
          e.error = ex.what();
        }
        if (!e.error.empty()) ++report.error_rows;
        report.entries.push_back(std::move(e));
      }
    }
  }

  std::ostringstream text;
  text << "closed-form consistency audit (seed " << spec.seed << ", " << picked.size() << " cells)\n";
  report.json["seed"] = spec.seed;
  report.json["entries"] = nlohmann::json::array();
  double worst_gain = 0.0;
  for (const auto& e : report.entries) {
    text << "omega_hat=" << format_number(e.params.omega_hat) << " q_hat=" << format_number(e.params.q_hat)
         << " mu=" << format_number(e.params.mu) << " regime=" << game::to_string(e.regime)
         << " convention=" << game::to_string(e.params.convention);
    nlohmann::json row = {{"omega_hat", e.params.omega_hat},
                          {"q_hat", e.params.q_hat},
                          {"mu", e.params.mu},
                          {"regime", game::to_string(e.regime)},
                          {"convention", game::to_string(e.params.convention)}};
    if (!e.error.empty()) {
      text << "  ERROR: " << e.error << "\n";
      row["error"] = e.error;
    } else {
      worst_gain = std::max(worst_gain, e.closed_deviation_gain);
      text << "  deviation_gain=" << format_number(e.closed_deviation_gain)
           << " price_gap=" << format_number(e.price_gap) << " q2_closed=" << format_number(e.closed_q2)
           << " q2_numeric=" << format_number(e.numeric_q2) << " q2_gap=" << format_number(e.q2_gap) << "\n";
      row["closed"] = {{"q2", e.closed_q2}, {"p1", e.closed_p1}, {"p2", e.closed_p2}};
      row["numeric"] = {{"q2", e.numeric_q2}, {"p1", e.numeric_p1}, {"p2", e.numeric_p2}};
      row["deviation_gain"] = e.closed_deviation_gain;
      row["price_gap"] = e.price_gap;
      row["q2_gap"] = e.q2_gap;
      row["quality_grid_step"] = e.quality_grid_step;
    }
    report.json["entries"].push_back(row);
  }
  text << "max deviation gain of printed closed forms: " << format_number(worst_gain) << "\n";
  text << "error rows: " << report.error_rows << "\n";
  report.json["max_deviation_gain"] = worst_gain;
  report.json["error_rows"] = report.error_rows;
  report.text = text.str();

  const auto txt_path = spec.output_dir / "audit_report.txt";
  const auto json_path = spec.output_dir / "audit_report.json";
  write_file(txt_path, report.text);
  write_file(json_path, json_text(report.json));
  report.files = {txt_path, json_path};
  return report;
}

}  // namespace netshare::harness

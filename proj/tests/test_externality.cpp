#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "netshare/externality/regression.hpp"
#include "netshare/externality/sweep.hpp"
#include "netshare/netsim/scenario.hpp"
#include "oracles.hpp"

using namespace netshare;
using namespace netshare::externality;

namespace {

std::vector<Observation> hinge_data(double nb, double a, double b, double c, int points = 21) {
  std::vector<Observation> out;
  for (int i = 0; i < points; ++i) {
    const double n = static_cast<double>(i) / (points - 1);
    out.push_back({n, a + b * n + c * std::max(0.0, n - nb)});
  }
  return out;
}

}  // namespace

TEST_SUITE("externality") {

TEST_CASE("OLS examples") {
  const std::vector<Observation> p1{{0, 0}, {1, 1}, {2, 2}};
  const auto l1 = fit_ols(p1);
  CHECK(l1.slope == doctest::Approx(1.0));
  CHECK(l1.intercept == doctest::Approx(0.0).epsilon(1e-15));
  const std::vector<Observation> p2{{0, 1}, {1, 1}};
  const auto l2 = fit_ols(p2);
  CHECK(l2.slope == doctest::Approx(0.0));
  CHECK(l2.intercept == doctest::Approx(1.0));
  const std::vector<Observation> bad{{1, 0}, {1, 2}, {1, 3}};
  CHECK_THROWS_AS(fit_ols(bad), std::invalid_argument);
  CHECK_THROWS_AS(fit_ols(std::vector<Observation>{{1, 1}}), std::invalid_argument);
}

TEST_CASE("OLS matches normal-equation oracle (property)") {
  oracle::Gen g(21);
  for (int t = 0; t < 200; ++t) {
    std::vector<Observation> pts;
    std::vector<double> x, y;
    for (int i = 0; i < 50; ++i) {
      const double xi = g.uniform(-5.0, 5.0);
      const double yi = g.uniform(-3.0, 3.0) + 0.7 * xi;
      pts.push_back({xi, yi});
      x.push_back(xi);
      y.push_back(yi);
    }
    const auto f = fit_ols(pts);
    const auto o = oracle::normal_equations(x, y);
    CHECK(f.slope == doctest::Approx(o.slope).epsilon(1e-10));
    CHECK(std::abs(f.intercept - o.intercept) < 1e-10 * (1.0 + std::abs(o.intercept)));
  }
}

TEST_CASE("noiseless hinge recovered exactly") {
  const auto pts = hinge_data(0.4, 1.0, 0.0, 2.0);
  const auto fit = fit_segmented(pts);
  REQUIRE(fit.breakpoint.has_value());
  CHECK(*fit.breakpoint == doctest::Approx(0.4).epsilon(1e-9));
  CHECK(std::abs(fit.left.slope) < 1e-9);
  CHECK(fit.right.slope == doctest::Approx(2.0).epsilon(1e-9));
  CHECK(fit.left.intercept == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("collinear points select the single line") {
  const auto pts = hinge_data(0.5, 3.0, 1.5, 0.0);
  const auto fit = fit_segmented(pts);
  CHECK_FALSE(fit.breakpoint.has_value());
  CHECK(fit.left.slope == doctest::Approx(1.5));
  CHECK(fit.right.slope == doctest::Approx(1.5));
  CHECK_THROWS_AS(fit_segmented(std::vector<Observation>(pts.begin(), pts.begin() + 4)), std::invalid_argument);
}

TEST_CASE("segmented fit invariants (property)") {
  oracle::Gen g(22);
  for (int t = 0; t < 100; ++t) {
    const double nb = g.uniform(0.2, 0.8);
    auto pts = hinge_data(nb, g.uniform(-1, 1), g.uniform(-2, 2), g.uniform(-3, 3), g.integer(8, 40));
    std::normal_distribution<double> noise(0.0, g.uniform(0.0, 0.3));
    for (auto& p : pts) p.y += noise(g.rng);
    const auto seg = fit_segmented(pts);
    const auto line = fit_ols(pts);
    CHECK(seg.sse >= 0.0);
    CHECK(seg.sse <= sum_squared_error(pts, line) * (1.0 + 1e-12) + 1e-15);
    CHECK(seg.num_points == pts.size());
    if (seg.breakpoint) {
      const double l = seg.left(*seg.breakpoint);
      const double r = seg.right(*seg.breakpoint);
      CHECK(std::abs(l - r) <= 1e-9 * std::max(1.0, std::abs(l)));
    }
  }
}

TEST_CASE("noisy hinge: breakpoint within 0.05") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    auto pts = hinge_data(0.4, 1.0, 0.0, 2.0);
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> noise(0.0, 0.01 * 1.2);  // 1% of the range
    for (auto& p : pts) p.y += noise(rng);
    const auto fit = fit_segmented(pts);
    REQUIRE(fit.breakpoint.has_value());
    CHECK(std::abs(*fit.breakpoint - 0.4) <= 0.05);
  }
}

TEST_CASE("mu extraction examples") {
  SegmentedFit f;
  f.breakpoint = 0.5;
  f.right = {800e6, 1250e6 - 800e6};
  f.left = {0.0, f.right(0.5)};
  CHECK(extract_mu(f) == doctest::Approx(0.64).epsilon(1e-12));
  SegmentedFit flat;
  flat.left = flat.right = {0.0, 5.0};
  CHECK(extract_mu(flat) == 0.0);
  SegmentedFit neg;
  neg.left = neg.right = {1.0, -3.0};
  CHECK_THROWS_AS(extract_mu(neg), std::domain_error);
  MuOptions raw;
  raw.normalization = MuNormalization::kRawSlope;
  raw.scale = 1e9;
  CHECK(extract_mu(f, raw) == doctest::Approx(0.8));
}

TEST_CASE("mu is invariant to rescaling the rate axis (property)") {
  oracle::Gen g(23);
  for (int t = 0; t < 100; ++t) {
    auto pts = hinge_data(g.uniform(0.3, 0.7), g.uniform(1, 2), g.uniform(0, 0.5), g.uniform(0.5, 3));
    const double mu = extract_mu(fit_segmented(pts));
    const double k = std::pow(10.0, g.uniform(-3.0, 9.0));
    for (auto& p : pts) p.y *= k;
    CHECK(extract_mu(fit_segmented(pts)) == doctest::Approx(mu).epsilon(1e-8));
  }
}

TEST_CASE("BIC penalises parameters") {
  CHECK(bic(1.0, 10.0, 20, 4) > bic(1.0, 10.0, 20, 2));
  CHECK(bic(0.5, 10.0, 20, 2) < bic(1.0, 10.0, 20, 2));
  CHECK(std::isfinite(bic(0.0, 10.0, 20, 2)));
}

TEST_CASE("network-size sweep: reproducible single point, CI contains estimate") {
  const auto cfg = netsim::ScenarioConfig::microwave_default();
  const auto a = sweep_network_size(cfg, {1.0}, 2, 10, 5, {1, 200});
  const auto b = sweep_network_size(cfg, {1.0}, 2, 10, 5, {2, 200});
  REQUIRE(a.points.size() == 1);
  CHECK(a.points[0].rate5 == b.points[0].rate5);
  CHECK(a.points[0].ci_lo == b.points[0].ci_lo);
  CHECK(a.points[0].ci_lo <= a.points[0].rate5);
  CHECK(a.points[0].rate5 <= a.points[0].ci_hi);
  CHECK_THROWS_AS(sweep_network_size(cfg, {}, 1, 1, 1), std::invalid_argument);
  CHECK_THROWS_AS(sweep_network_size(cfg, {0.5, 0.4}, 1, 1, 1), std::invalid_argument);
  const auto obs = to_observations(a.points);
  CHECK(obs.size() == 1);
  CHECK(obs[0].y == a.points[0].rate5);
}

}  // TEST_SUITE

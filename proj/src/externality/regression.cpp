#include "netshare/externality/regression.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <stdexcept>

#include <Eigen/Dense>

namespace netshare::externality {

namespace {

std::size_t distinct_abscissae(std::span<const Observation> points) {
  std::set<double> xs;
  for (const auto& p : points) xs.insert(p.n);
  return xs.size();
}

double total_sum_squares(std::span<const Observation> points) {
  double mean = 0.0;
  for (const auto& p : points) mean += p.y;
  mean /= static_cast<double>(points.size());
  double sst = 0.0;
  for (const auto& p : points) sst += (p.y - mean) * (p.y - mean);
  return sst;
}

}  // namespace

Line fit_ols(std::span<const Observation> points) {
  if (distinct_abscissae(points) < 2) {
    throw std::invalid_argument("fit_ols: need at least two distinct n values");
  }
  const double count = static_cast<double>(points.size());
  double mx = 0.0;
  double my = 0.0;
  for (const auto& p : points) {
    mx += p.n;
    my += p.y;
  }
  mx /= count;
  my /= count;
  double sxx = 0.0;
  double sxy = 0.0;
  for (const auto& p : points) {
    sxx += (p.n - mx) * (p.n - mx);
    sxy += (p.n - mx) * (p.y - my);
  }
  Line line;
  line.slope = sxy / sxx;
  line.intercept = my - line.slope * mx;
  return line;
}

double sum_squared_error(std::span<const Observation> points, const Line& line) {
  double sse = 0.0;
  for (const auto& p : points) {
    const double r = p.y - line(p.n);
    sse += r * r;
  }
  return sse;
}

std::optional<SegmentedFit> fit_hinge(std::span<const Observation> points, double breakpoint) {
  const auto m = static_cast<Eigen::Index>(points.size());
  Eigen::MatrixXd x(m, 3);
  Eigen::VectorXd y(m);
  for (Eigen::Index i = 0; i < m; ++i) {
    const auto& p = points[static_cast<std::size_t>(i)];
    x(i, 0) = 1.0;
    x(i, 1) = p.n;
    x(i, 2) = std::max(0.0, p.n - breakpoint);
    y(i) = p.y;
  }
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(x);
  qr.setThreshold(1e-10);
  if (qr.rank() < 3) return std::nullopt;
  const Eigen::Vector3d beta = qr.solve(y);

  SegmentedFit fit;
  fit.breakpoint = breakpoint;
  fit.left = {beta(1), beta(0)};
  fit.right = {beta(1) + beta(2), beta(0) - beta(2) * breakpoint};
  fit.num_points = points.size();
  for (const auto& p : points) {
    const double r = p.y - fit(p.n);
    fit.sse += r * r;
  }
  return fit;
}

double bic(double sse, double sst, std::size_t num_points, int num_params) {
  const double count = static_cast<double>(num_points);
  const double floor = std::max(sst, std::numeric_limits<double>::min()) * 1e-24;
  return count * std::log(std::max(sse, floor) / count) + num_params * std::log(count);
}

SegmentedFit fit_segmented(std::span<const Observation> points) {
  if (points.size() < 5) throw std::invalid_argument("fit_segmented: need at least five points");
  const Line line = fit_ols(points);

  SegmentedFit single;
  single.left = line;
  single.right = line;
  single.sse = sum_squared_error(points, line);
  single.num_points = points.size();

  std::set<double> xs;
  for (const auto& p : points) xs.insert(p.n);
  const double lo = *xs.begin();
  const double hi = *xs.rbegin();
  std::vector<double> candidates(std::next(xs.begin()), std::prev(xs.end()));
  constexpr int kUniformCandidates = 50;
  for (int k = 1; k <= kUniformCandidates; ++k) {
    candidates.push_back(lo + (hi - lo) * k / (kUniformCandidates + 1.0));
  }
  std::sort(candidates.begin(), candidates.end());

  std::optional<SegmentedFit> best;
  for (double c : candidates) {
    auto fit = fit_hinge(points, c);
    if (fit && (!best || fit->sse < best->sse)) best = std::move(fit);
  }
  if (!best || best->sse > single.sse) return single;

  const double sst = total_sum_squares(points);
  const double bic_line = bic(single.sse, sst, points.size(), 2);
  const double bic_hinge = bic(best->sse, sst, points.size(), 4);
  return bic_hinge < bic_line ? *best : single;
}

double extract_mu(const SegmentedFit& fit, const MuOptions& options) {
  const double slope = fit.right.slope;
  switch (options.normalization) {
    case MuNormalization::kFittedAtOne: {
      const double at_one = fit.right(1.0);
      if (!std::isfinite(at_one)) throw std::domain_error("extract_mu: fitted value at n = 1 is not finite");
      if (!(at_one > 0.0)) throw std::domain_error("extract_mu: fitted value at n = 1 must be positive");
      return slope / at_one;
    }
    case MuNormalization::kRawSlope:
      if (!(options.scale > 0.0)) throw std::invalid_argument("extract_mu: scale must be positive");
      return slope / options.scale;
  }
  return slope;
}

}  // namespace netshare::externality

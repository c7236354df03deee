#pragma once

#include <optional>
#include <span>
#include <vector>

namespace netshare::externality {

struct Observation {
  double n = 0.0;
  double y = 0.0;
};

struct Line {
  double slope = 0.0;
  double intercept = 0.0;

  double operator()(double n) const { return intercept + slope * n; }
};

/// Continuous piecewise-linear model of rate against network size. Without a
/// breakpoint both segments hold the same line.
struct SegmentedFit {
  std::optional<double> breakpoint;
  Line left;
  Line right;
  double sse = 0.0;
  std::size_t num_points = 0;

  double operator()(double n) const {
    return (breakpoint && n > *breakpoint) ? right(n) : left(n);
  }
};

/// Ordinary least squares. Throws std::invalid_argument with fewer than two
/// distinct abscissae.
Line fit_ols(std::span<const Observation> points);

double sum_squared_error(std::span<const Observation> points, const Line& line);

/// Least-squares continuous hinge y = a + b n + c max(0, n - n_b) for a fixed
/// breakpoint. Returns nothing when the design is rank deficient.
std::optional<SegmentedFit> fit_hinge(std::span<const Observation> points, double breakpoint);

/// Grid search over breakpoint candidates (every interior abscissa plus 50
/// uniformly spaced values), minimal SSE wins; the single line is returned
/// instead when BIC prefers it. Requires at least five points.
SegmentedFit fit_segmented(std::span<const Observation> points);

/// BIC = N ln(SSE/N) + k ln N with SSE floored relative to the total sum of squares.
double bic(double sse, double sst, std::size_t num_points, int num_params);

enum class MuNormalization {
  kFittedAtOne,  ///< right slope / fitted rate at n = 1
  kRawSlope,     ///< right slope / scale
};

struct MuOptions {
  MuNormalization normalization = MuNormalization::kFittedAtOne;
  double scale = 1.0;
};

/// Externality intensity from the right-hand segment. Throws std::domain_error
/// when the fitted value at n = 1 is not positive (kFittedAtOne).
double extract_mu(const SegmentedFit& fit, const MuOptions& options = {});

}  // namespace netshare::externality

#pragma once
// Independent reference implementations used only by the tests. They share
// no code paths with the library beyond plain data types.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <random>
#include <vector>

namespace oracle {

// --- regression -----------------------------------------------------------

struct LineFit {
  double slope = 0.0;
  double intercept = 0.0;
};

// Normal equations [n Sx; Sx Sxx][b; m] = [Sy; Sxy], raw sums, Cramer's rule.
inline LineFit normal_equations(const std::vector<double>& x, const std::vector<double>& y) {
  long double n = static_cast<long double>(x.size());
  long double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
    sxx += static_cast<long double>(x[i]) * x[i];
    sxy += static_cast<long double>(x[i]) * y[i];
  }
  const long double det = n * sxx - sx * sx;
  LineFit f;
  f.slope = static_cast<double>((n * sxy - sx * sy) / det);
  f.intercept = static_cast<double>((sxx * sy - sx * sxy) / det);
  return f;
}

// --- fulfilled-expectations market -------------------------------------------

struct FeShares {
  double n1 = 0.0;
  double n2 = 0.0;
  int iterations = 0;
  bool converged = false;
};

// A continuum of consumers discretised into `consumers` equally spaced types on
// [lo, hi]. Each type picks the best of {nothing, NSP 1, NSP 2} given expected
// network sizes; expectations are updated with damping gamma until they stop
// moving. Shares are the fraction of consumers, which equals the mass share
// under either support convention.
inline FeShares fulfilled_expectations(double q1, double q2, double p1, double p2, double mu, double lo, double hi,
                                       bool sharing, int consumers = 100000, double gamma = 0.5,
                                       double tol = 1e-10, int max_iter = 400) {
  std::vector<double> omega(static_cast<std::size_t>(consumers));
  for (int k = 0; k < consumers; ++k) omega[static_cast<std::size_t>(k)] = lo + (hi - lo) * (k + 0.5) / consumers;
  double e1 = 1.0 / 3.0;
  double e2 = 1.0 / 3.0;
  FeShares out;
  for (int it = 1; it <= max_iter; ++it) {
    const double t1 = sharing ? e1 + e2 : e1;
    const double t2 = sharing ? e1 + e2 : e2;
    long c1 = 0, c2 = 0;
    for (double w : omega) {
      const double u1 = w * q1 + mu * q1 * t1 - p1;
      const double u2 = w * q2 + mu * q2 * t2 - p2;
      if (u1 >= u2 && u1 > 0.0) {
        ++c1;
      } else if (u2 > u1 && u2 > 0.0) {
        ++c2;
      }
    }
    const double s1 = static_cast<double>(c1) / consumers;
    const double s2 = static_cast<double>(c2) / consumers;
    const double n1 = (1.0 - gamma) * e1 + gamma * s1;
    const double n2 = (1.0 - gamma) * e2 + gamma * s2;
    const double delta = std::max(std::abs(n1 - e1), std::abs(n2 - e2));
    e1 = n1;
    e2 = n2;
    out.iterations = it;
    if (delta < tol) {
      out.converged = true;
      break;
    }
  }
  out.n1 = e1;
  out.n2 = e2;
  return out;
}

// --- quadrature ---------------------------------------------------------------

inline double trapezoid(const std::function<double(double)>& f, double a, double b, int points = 10000) {
  if (b <= a) return 0.0;
  const double h = (b - a) / (points - 1);
  double s = 0.5 * (f(a) + f(b));
  for (int i = 1; i < points - 1; ++i) s += f(a + h * i);
  return s * h;
}

// --- association ----------------------------------------------------------------

// Exhaustive argmax over candidate BSs; `power(u, b)` returns the long-run
// received power or a value <= 0 when the link cannot carry traffic.
inline std::vector<int> brute_force_association(std::size_t ues, std::size_t bss,
                                                const std::function<double(std::size_t, std::size_t)>& power) {
  std::vector<int> out(ues, -1);
  for (std::size_t u = 0; u < ues; ++u) {
    double best = 0.0;
    for (std::size_t b = 0; b < bss; ++b) {
      const double p = power(u, b);
      if (p > best) {
        best = p;
        out[u] = static_cast<int>(b);
      }
    }
  }
  return out;
}

// --- random parameter generators ---------------------------------------------------

struct Gen {
  std::mt19937_64 rng;
  explicit Gen(std::uint64_t seed) : rng(seed) {}
  double uniform(double a, double b) { return std::uniform_real_distribution<double>(a, b)(rng); }
  int integer(int a, int b) { return std::uniform_int_distribution<int>(a, b)(rng); }
};

}  // namespace oracle

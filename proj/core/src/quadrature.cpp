#include "ctphs/quadrature.hpp"

#include <cmath>
#include <numbers>

#include "ctphs/error.hpp"

namespace ctphs {

QuadratureRule gauss_legendre(int n, double lo, double hi) {
  if (n < 1) throw ParameterError("gauss_legendre: n must be >= 1");
  QuadratureRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  const double half = 0.5 * (hi - lo);
  const double mid = 0.5 * (hi + lo);
  const int m = (n + 1) / 2;
  for (int i = 0; i < m; ++i) {
    // Tricomi initial guess for the i-th largest root.
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    // Recompute the derivative at the converged root.
    double p0 = 1.0, p1 = x;
    for (int k = 2; k <= n; ++k) {
      const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
      p0 = p1;
      p1 = p2;
    }
    dp = n * (x * p1 - p0) / (x * x - 1.0);
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.nodes[i] = mid - half * x;
    rule.nodes[n - 1 - i] = mid + half * x;
    rule.weights[i] = w * half;
    rule.weights[n - 1 - i] = w * half;
  }
  return rule;
}

double integrate_gl_doubling(const std::function<double(double)>& f, double lo, double hi,
                             double rel_tol, int max_points) {
  auto apply = [&](int n) {
    const QuadratureRule rule = gauss_legendre(n, lo, hi);
    double s = 0.0;
    for (int i = 0; i < n; ++i) s += rule.weights[i] * f(rule.nodes[i]);
    return s;
  };
  double prev = apply(16);
  for (int n = 32; n <= max_points; n *= 2) {
    const double cur = apply(n);
    if (!std::isfinite(cur)) throw NumericError("integrate_gl_doubling: non-finite estimate");
    if (std::abs(cur - prev) <= rel_tol * std::abs(cur)) return cur;
    prev = cur;
  }
  throw NumericError("integrate_gl_doubling: no convergence within point budget");
}

}  // namespace ctphs

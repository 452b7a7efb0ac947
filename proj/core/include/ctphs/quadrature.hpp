#pragma once

#include <functional>
#include <vector>

namespace ctphs {

struct QuadratureRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// n-point Gauss–Legendre rule on [lo, hi] (Newton iteration on the Legendre
/// recurrence; nodes accurate to a few ulps for n up to several thousand).
QuadratureRule gauss_legendre(int n, double lo = -1.0, double hi = 1.0);

/// Gauss–Legendre with doubling n = 16, 32, ... until the relative change of
/// the estimate is <= rel_tol. Throws NumericError if max_points is reached.
double integrate_gl_doubling(const std::function<double(double)>& f, double lo, double hi,
                             double rel_tol = 1e-13, int max_points = 1 << 14);

}  // namespace ctphs

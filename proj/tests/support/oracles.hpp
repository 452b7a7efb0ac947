#pragma once

// Independent reference computations for tests. Nothing here calls the
// library's numerical kernels.

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <memory>
#include <numbers>
#include <random>
#include <vector>

#include <Eigen/Dense>
#include <boost/math/quadrature/tanh_sinh.hpp>

namespace oracle {

inline constexpr double kPi = std::numbers::pi;

/// ∫_0^π sin^a(t/2) sin^b(t) dt = 2^b B((a+b+1)/2, (b+1)/2).
inline double radial_mass(int a, int b) {
  const double x = 0.5 * (a + b + 1), y = 0.5 * (b + 1);
  return std::exp(b * std::log(2.0) + std::lgamma(x) + std::lgamma(y) - std::lgamma(x + y));
}

/// Generalized binomial C(x, j) for real x, integer j >= 0.
inline double binom(double x, int j) {
  long double r = 1.0L;
  for (int i = 0; i < j; ++i) r *= (static_cast<long double>(x) - i) / (i + 1);
  return static_cast<double>(r);
}

inline long double binom_ld(long double x, int j) {
  long double r = 1.0L;
  for (int i = 0; i < j; ++i) r *= (x - i) / (i + 1);
  return r;
}

/// Explicit sum P_k^{(a,b)}(t) = Σ_s C(k+a, k-s) C(k+b, s) ((t-1)/2)^s ((t+1)/2)^{k-s}.
/// Summed in extended precision to contain the sum's cancellation.
inline double jacobi_explicit(double a, double b, int k, double t) {
  long double s = 0.0L;
  const long double lt = t;
  for (int j = 0; j <= k; ++j) {
    s += binom_ld(k + a, k - j) * binom_ld(k + b, j) * std::pow(0.5L * (lt - 1.0L), j) * std::pow(0.5L * (lt + 1.0L), k - j);
  }
  return static_cast<double>(s);
}

/// Tanh-sinh quadrature (a different algorithm from the library's Gauss rules).
inline double integrate(const std::function<double(double)>& f, double lo, double hi, double tol = 1e-12) {
  boost::math::quadrature::tanh_sinh<double> ts;
  return ts.integrate(f, lo, hi, tol);
}

/// Kolmogorov–Smirnov distance between samples and a CDF.
inline double ks_distance(std::vector<double> xs, const std::function<double(double)>& cdf) {
  std::sort(xs.begin(), xs.end());
  const double n = static_cast<double>(xs.size());
  double d = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double F = cdf(xs[i]);
    d = std::max({d, std::abs(F - i / n), std::abs((i + 1) / n - F)});
  }
  return d;
}

/// Haar-ish random orthogonal matrix from the QR of a Gaussian matrix.
inline Eigen::MatrixXd random_orthogonal(int n, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  Eigen::MatrixXd A(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) A(i, j) = g(rng);
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(A);
  return qr.householderQ();
}

/// CDF of a density on [0, π], tabulated by tanh-sinh on a uniform grid and
/// interpolated linearly.
inline std::function<double(double)> tabulated_cdf(const std::function<double(double)>& density, int n = 4096) {
  auto table = std::make_shared<std::vector<double>>(n + 1, 0.0);
  for (int i = 1; i <= n; ++i) {
    (*table)[i] = (*table)[i - 1] + integrate(density, kPi * (i - 1) / n, kPi * i / n, 1e-13);
  }
  return [table, n](double t) {
    const double x = std::clamp(t / kPi * n, 0.0, static_cast<double>(n));
    const int i = std::min(static_cast<int>(x), n - 1);
    return (*table)[i] + (x - i) * ((*table)[i + 1] - (*table)[i]);
  };
}

/// Random unitary via QR of a complex Gaussian matrix.
inline Eigen::MatrixXcd random_unitary(int n, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  Eigen::MatrixXcd A(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) A(i, j) = {g(rng), g(rng)};
  Eigen::HouseholderQR<Eigen::MatrixXcd> qr(A);
  return qr.householderQ();
}

/// Central finite difference.
inline double fd(const std::function<double(double)>& f, double x, double h) {
  return (f(x + h) - f(x - h)) / (2.0 * h);
}

/// log-log least-squares slope.
inline double loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
  const double n = static_cast<double>(x.size());
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += std::log(x[i]) / n;
    my += std::log(y[i]) / n;
  }
  double sxy = 0, sxx = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += (std::log(x[i]) - mx) * (std::log(y[i]) - my);
    sxx += (std::log(x[i]) - mx) * (std::log(x[i]) - mx);
  }
  return sxy / sxx;
}

}  // namespace oracle

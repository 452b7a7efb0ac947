#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "ctphs/covering.hpp"
#include "ctphs/manifold.hpp"

namespace ctphs {

/// G_{ij} = Σ_{k=1}^{D} c_{εk} P_{εk}(cos(d(ω_i, ω_j)/ε)), assembled from
/// the closed-form reproducing kernel minus its constant term. PSD.
Eigen::MatrixXd gram_matrix(const ManifoldSpec& spec, const std::vector<Point>& nodes, int D,
                            int threads = 0);

/// Euclidean projection onto {λ >= 0, Σλ = 1} (sort and threshold).
void project_to_simplex(std::span<double> v);

struct SolverOptions {
  int max_iters = 20000;
  /// Converged when λᵀGλ <= tol_rel · trace(G) / m.
  double tol_rel = 1e-10;
  int power_iters = 30;
  /// After reaching the tolerance keep iterating until the mean square of
  /// Gλ over the nodes falls below polish_factor · tolerance or stops
  /// improving for `patience` iterations. Exactness errors track
  /// sqrt(residual), and λᵀGλ itself bottoms out at roundoff, so polishing
  /// is steered by Gλ.
  bool polish = true;
  double polish_factor = 1e-20;
  int patience = 200;
  int threads = 0;
};

struct SolverResult {
  std::vector<double> weights;
  double residual = 0.0;
  double tolerance = 0.0;
  bool converged = false;
  int iterations = 0;
  int restarts = 0;
  double lipschitz = 0.0;
  /// Running minimum of λᵀGλ over iterates (nonincreasing).
  std::vector<double> history;
};

/// Accelerated projected gradient for min λᵀGλ over the probability simplex,
/// started from uniform weights, with gradient-based momentum restarts and
/// step 1/L from a power-iteration estimate of the largest eigenvalue.
/// Never reports success above tolerance.
SolverResult solve_weights(const Eigen::MatrixXd& G, const SolverOptions& opts = {});

struct CubatureRule {
  ManifoldSpec spec;
  std::vector<Point> nodes;
  std::vector<double> weights;
  int degree = 0;
  /// Degree parameter n of the covering (radius δ/n) used for scaling.
  int n = 0;
  double residual = 0.0;
  double weight_max_scaled = 0.0;
  double tolerance = 0.0;
  bool converged = false;
  int iterations = 0;
  std::uint64_t seed = 0;
};

/// Gram assembly, solve, clipping at -1e-14 and renormalization.
/// Throws NumericError if a weight is more negative than -1e-14.
CubatureRule build_rule(const ManifoldSpec& spec, const std::vector<Point>& nodes, int D, int n,
                        const SolverOptions& opts = {}, std::uint64_t seed = 0);
CubatureRule build_rule(const Covering& cov, int D, int n, const SolverOptions& opts = {});

/// λᵀGλ of given weights at degree D (used to re-certify loaded rules).
double rule_residual(const ManifoldSpec& spec, const std::vector<Point>& nodes,
                     const std::vector<double>& weights, int D, int threads = 0);

struct ExactnessReport {
  int trials = 0;
  /// max |Σ λ_ω Z_D(ω, x) - 1| over reproducing kernels at random x.
  double max_error_kernel = 0.0;
  /// max |Σ λ_ω f(ω) - ∫f| over random zonal sums.
  double max_error_random = 0.0;
  double max_error = 0.0;
  /// Every trial satisfied error <= sqrt(residual) ||f - ∫f||_2 up to
  /// floating-point allowances (residual floor eps·diag G, summation
  /// error eps·Σλ|f(ω)|).
  bool bound_holds = true;
};

ExactnessReport verify_exactness(const CubatureRule& rule, int trials, std::uint64_t seed,
                                 int threads = 0);

struct WeightBoundReport {
  int n = 0;
  double max_scaled = 0.0;
  double min_scaled = 0.0;
  double mean_scaled = 0.0;
  int negative = 0;
  /// Histogram of λ n^{d-1} over [0, max_scaled] in equal bins.
  std::vector<double> bin_edges;
  std::vector<int> bin_counts;
};

WeightBoundReport weight_bound_report(const CubatureRule& rule, int n, int bins = 20);

}  // namespace ctphs

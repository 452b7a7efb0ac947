#include "ctphs/cubature.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>

#include "ctphs/error.hpp"
#include "ctphs/jacobi.hpp"
#include "ctphs/kernels.hpp"
#include "ctphs/parallel.hpp"

namespace ctphs {

Eigen::MatrixXd gram_matrix(const ManifoldSpec& spec, const std::vector<Point>& nodes, int D,
                            int threads) {
  if (D < 1) throw ParameterError("gram_matrix: D must be >= 1");
  const auto m = static_cast<Eigen::Index>(nodes.size());
  Eigen::MatrixXd G(m, m);
  parallel_for(
      static_cast<std::size_t>(m),
      [&](std::size_t begin, std::size_t end) {
        std::vector<double> u, v;
        for (std::size_t i = begin; i < end; ++i) {
          const auto len = static_cast<std::size_t>(m) - i;
          u.resize(len);
          v.resize(len);
          for (std::size_t j = i; j < static_cast<std::size_t>(m); ++j) {
            u[j - i] = addition_argument(spec, nodes[i], nodes[j]);
          }
          reproducing_kernel_batch(spec, D, u, v);
          // Column-major: fill column i below the diagonal.
          for (std::size_t j = i; j < static_cast<std::size_t>(m); ++j) {
            G(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(i)) = v[j - i] - 1.0;
          }
        }
      },
      threads);
  G.triangularView<Eigen::StrictlyUpper>() = G.transpose();
  return G;
}

void project_to_simplex(std::span<double> v) {
  const std::size_t m = v.size();
  if (m == 0) return;
  std::vector<double> s(v.begin(), v.end());
  std::sort(s.begin(), s.end(), std::greater<>());
  double cum = 0.0, tau = 0.0;
  for (std::size_t k = 0; k < m; ++k) {
    cum += s[k];
    const double t = (cum - 1.0) / static_cast<double>(k + 1);
    if (s[k] - t > 0.0) tau = t;
  }
  for (double& x : v) x = std::max(x - tau, 0.0);
}

SolverResult solve_weights(const Eigen::MatrixXd& G, const SolverOptions& opts) {
  const Eigen::Index m = G.rows();
  if (m == 0 || G.cols() != m) throw ParameterError("solve_weights: G must be square and nonempty");
  SolverResult res;
  res.tolerance = opts.tol_rel * G.trace() / static_cast<double>(m);

  // Largest eigenvalue by power iteration from a fixed pseudo-random start.
  Eigen::VectorXd q(m);
  Rng rng = make_rng(0x9a3f);
  std::normal_distribution<double> normal;
  for (Eigen::Index i = 0; i < m; ++i) q[i] = normal(rng);
  q.normalize();
  double lam = 0.0;
  for (int it = 0; it < opts.power_iters; ++it) {
    Eigen::VectorXd z = G * q;
    lam = q.dot(z);
    const double nz = z.norm();
    if (!(nz > 0.0)) break;
    q = z / nz;
  }
  // Power iteration approaches λ_max from below; the margin keeps the step safe.
  const double L = 2.0 * std::max(lam, 1e-300) * 1.1;
  res.lipschitz = L;

  // λᵀGλ loses all digits once it nears eps·diag(G), while Gλ (the error
  // function sampled at the nodes) keeps absolute accuracy. Its mean square
  // therefore ranks iterates and drives polishing below that floor.
  auto node_energy = [m](const Eigen::VectorXd& g) { return g.squaredNorm() / static_cast<double>(m); };

  Eigen::VectorXd x = Eigen::VectorXd::Constant(m, 1.0 / static_cast<double>(m));
  Eigen::VectorXd Gx = G * x;
  double fx = x.dot(Gx);
  Eigen::VectorXd y = x, Gy = Gx, best = x;
  double best_f = fx, best_f_seen = fx, best_e = node_energy(Gx);
  double t = 1.0;
  int since_improve = 0;
  const double target = opts.polish ? res.tolerance * opts.polish_factor : res.tolerance;
  res.history.reserve(static_cast<std::size_t>(opts.max_iters));

  auto done = [&] { return opts.polish ? best_e <= target : best_f <= res.tolerance; };
  for (int it = 0; it < opts.max_iters && !done(); ++it) {
    Eigen::VectorXd xn = y - (2.0 / L) * Gy;
    project_to_simplex(std::span<double>(xn.data(), static_cast<std::size_t>(m)));
    Eigen::VectorXd Gxn = G * xn;
    const double fn = xn.dot(Gxn);
    if (!std::isfinite(fn)) throw NumericError("solve_weights: non-finite residual");
    const double en = node_energy(Gxn);

    const bool restart = (y - xn).dot(xn - x) > 0.0;
    if (restart) {
      t = 1.0;
      y = xn;
      Gy = Gxn;
      ++res.restarts;
    } else {
      const double tn = 0.5 * (1.0 + std::sqrt(1.0 + 4.0 * t * t));
      const double mom = (t - 1.0) / tn;
      y = xn + mom * (xn - x);
      Gy = Gxn + mom * (Gxn - Gx);
      t = tn;
    }
    x.swap(xn);
    Gx.swap(Gxn);
    res.iterations = it + 1;

    if (en < best_e) {
      // Count only meaningful progress toward stalling.
      since_improve = en < best_e * (1.0 - 1e-3) ? 0 : since_improve + 1;
      best_e = en;
      best_f = fn;
      best = x;
    } else {
      ++since_improve;
    }
    best_f_seen = std::min(best_f_seen, fn);
    res.history.push_back(best_f_seen);
    if (best_f <= res.tolerance && since_improve >= opts.patience) break;
  }

  res.weights.assign(best.data(), best.data() + m);
  res.residual = std::max(best_f, 0.0);
  res.converged = best_f <= res.tolerance;
  return res;
}

double rule_residual(const ManifoldSpec& spec, const std::vector<Point>& nodes,
                     const std::vector<double>& weights, int D, int threads) {
  if (weights.size() != nodes.size()) throw ParameterError("rule_residual: size mismatch");
  std::vector<double> row(nodes.size());
  parallel_for(
      nodes.size(),
      [&](std::size_t begin, std::size_t end) {
        std::vector<double> u(nodes.size()), v(nodes.size());
        for (std::size_t i = begin; i < end; ++i) {
          for (std::size_t j = 0; j < nodes.size(); ++j) u[j] = addition_argument(spec, nodes[i], nodes[j]);
          reproducing_kernel_batch(spec, D, u, v);
          double s = 0.0;
          for (std::size_t j = 0; j < nodes.size(); ++j) s += (v[j] - 1.0) * weights[j];
          row[i] = weights[i] * s;
        }
      },
      threads);
  return std::accumulate(row.begin(), row.end(), 0.0);
}

CubatureRule build_rule(const ManifoldSpec& spec, const std::vector<Point>& nodes, int D, int n,
                        const SolverOptions& opts, std::uint64_t seed) {
  if (nodes.empty()) throw ParameterError("build_rule: no nodes");
  if (n < 1) throw ParameterError("build_rule: n must be >= 1");
  CubatureRule rule;
  rule.spec = spec;
  rule.nodes = nodes;
  rule.degree = D;
  rule.n = n;
  rule.seed = seed;

  SolverResult sol;
  if (D == 0) {
    sol.weights.assign(nodes.size(), 1.0 / static_cast<double>(nodes.size()));
    sol.converged = true;
  } else {
    const Eigen::MatrixXd G = gram_matrix(spec, nodes, D, opts.threads);
    sol = solve_weights(G, opts);
  }
  double sum = 0.0;
  for (double& w : sol.weights) {
    if (w < -1e-14) throw NumericError("build_rule: weight below -1e-14 after solve");
    w = std::max(w, 0.0);
    sum += w;
  }
  for (double& w : sol.weights) w /= sum;

  rule.weights = std::move(sol.weights);
  rule.residual = sol.residual;
  rule.tolerance = sol.tolerance;
  rule.converged = sol.converged;
  rule.iterations = sol.iterations;
  const double scale = std::pow(static_cast<double>(n), spec.d - 1);
  rule.weight_max_scaled = *std::max_element(rule.weights.begin(), rule.weights.end()) * scale;
  return rule;
}

CubatureRule build_rule(const Covering& cov, int D, int n, const SolverOptions& opts) {
  return build_rule(cov.spec, cov.nodes, D, n, opts, cov.seed);
}

ExactnessReport verify_exactness(const CubatureRule& rule, int trials, std::uint64_t seed, int threads) {
  const auto& spec = rule.spec;
  ExactnessReport rep;
  rep.trials = trials;
  const double diag = rule.degree >= 1 ? reproducing_kernel(spec, rule.degree, 1.0) - 1.0 : 0.0;
  // The stored residual is λᵀGλ evaluated in floating point, which carries an
  // absolute error of order eps·diag(G); likewise Σλf(ω) carries one of order
  // eps·Σλ|f(ω)|. Both enter the Cauchy–Schwarz bound as allowances.
  constexpr double kRound = 64.0 * std::numeric_limits<double>::epsilon();
  const double sres = std::sqrt(std::max(rule.residual, 0.0) + kRound * diag);
  auto abs_dot = [&](const std::vector<double>& vals) {
    double acc = 0.0;
    for (std::size_t j = 0; j < vals.size(); ++j) acc += rule.weights[j] * std::abs(vals[j]);
    return acc;
  };
  std::vector<double> ek(static_cast<std::size_t>(trials)), er(ek.size());
  std::vector<char> ok(ek.size(), 1);
  parallel_for(
      ek.size(),
      [&](std::size_t begin, std::size_t end) {
        std::vector<double> u(rule.nodes.size()), v(rule.nodes.size());
        for (std::size_t t = begin; t < end; ++t) {
          Rng rng = make_rng(seed, t);
          const Point x = sample_uniform(spec, rng);
          for (std::size_t j = 0; j < u.size(); ++j) u[j] = addition_argument(spec, rule.nodes[j], x);
          reproducing_kernel_batch(spec, rule.degree, u, v);
          const double q = std::inner_product(v.begin(), v.end(), rule.weights.begin(), 0.0);
          ek[t] = std::abs(q - 1.0);
          if (ek[t] > sres * std::sqrt(diag) + kRound * abs_dot(v) + 1e-12) ok[t] = 0;

          // Random zonal sum with exact integral Σ coeffs.
          std::normal_distribution<double> normal;
          std::vector<Point> centers;
          std::vector<double> coeffs;
          for (int c = 0; c < 4; ++c) {
            centers.push_back(sample_uniform(spec, rng));
            coeffs.push_back(normal(rng));
          }
          const ZonalSum f(spec, rule.degree, centers, coeffs);
          const auto vals = zonal_eval_batch(f, rule.nodes, 1);
          const double qf = std::inner_product(vals.begin(), vals.end(), rule.weights.begin(), 0.0);
          const double I = integral(f);
          er[t] = std::abs(qf - I);
          const double tail = std::sqrt(std::max(0.0, l2_inner(f, f, 1) - I * I));
          if (er[t] > sres * tail + kRound * (abs_dot(vals) + std::abs(I)) + 1e-12) ok[t] = 0;
        }
      },
      threads);
  for (std::size_t t = 0; t < ek.size(); ++t) {
    rep.max_error_kernel = std::max(rep.max_error_kernel, ek[t]);
    rep.max_error_random = std::max(rep.max_error_random, er[t]);
    rep.bound_holds = rep.bound_holds && ok[t];
  }
  rep.max_error = std::max(rep.max_error_kernel, rep.max_error_random);
  return rep;
}

WeightBoundReport weight_bound_report(const CubatureRule& rule, int n, int bins) {
  if (n < 1 || bins < 1) throw ParameterError("weight_bound_report: n and bins must be >= 1");
  WeightBoundReport rep;
  rep.n = n;
  const double scale = std::pow(static_cast<double>(n), rule.spec.d - 1);
  std::vector<double> s(rule.weights.size());
  for (std::size_t i = 0; i < s.size(); ++i) {
    s[i] = rule.weights[i] * scale;
    if (rule.weights[i] < 0.0) ++rep.negative;
  }
  rep.max_scaled = *std::max_element(s.begin(), s.end());
  rep.min_scaled = *std::min_element(s.begin(), s.end());
  rep.mean_scaled = std::accumulate(s.begin(), s.end(), 0.0) / static_cast<double>(s.size());
  rep.bin_edges.resize(static_cast<std::size_t>(bins) + 1);
  rep.bin_counts.assign(static_cast<std::size_t>(bins), 0);
  const double top = rep.max_scaled > 0.0 ? rep.max_scaled : 1.0;
  for (int b = 0; b <= bins; ++b) rep.bin_edges[b] = top * b / bins;
  for (double v : s) {
    const int b = std::clamp(static_cast<int>(v / top * bins), 0, bins - 1);
    ++rep.bin_counts[b];
  }
  return rep;
}

}  // namespace ctphs

#include "ctphs/mzlab.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <sstream>

#include "ctphs/error.hpp"
#include "ctphs/jacobi.hpp"
#include "ctphs/parallel.hpp"

namespace ctphs {
namespace {

constexpr double kPi = std::numbers::pi;

using BatchEval = std::function<std::vector<double>(std::span<const Point>)>;

// Dense sampling, then hill-climbing from the best samples with a
// shrinking step. Returns (estimate, best raw sample).
std::pair<double, double> sup_search(const ManifoldSpec& spec, const BatchEval& eval, double step0,
                                     std::uint64_t seed, const NormOptions& opts) {
  Rng rng = make_rng(seed, 0);
  std::vector<Point> pts;
  pts.reserve(opts.sup_samples);
  for (std::size_t i = 0; i < opts.sup_samples; ++i) pts.push_back(sample_uniform(spec, rng));
  const auto vals = eval(pts);
  std::vector<std::size_t> order(vals.size());
  std::iota(order.begin(), order.end(), 0);
  const auto top = std::min<std::size_t>(static_cast<std::size_t>(opts.refine_starts), order.size());
  std::partial_sort(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(top), order.end(),
                    [&](std::size_t a, std::size_t b) { return std::abs(vals[a]) > std::abs(vals[b]); });
  const double sampled = order.empty() ? 0.0 : std::abs(vals[order[0]]);
  double best = sampled;
  for (std::size_t s = 0; s < top; ++s) {
    Point x = pts[order[s]];
    double fx = std::abs(vals[order[s]]);
    double step = step0;
    Rng local = make_rng(seed, s + 1);
    for (int it = 0; it < opts.refine_steps; ++it) {
      Point cand = point_at_distance(spec, x, std::min(step, kPi), local);
      const double fc = std::abs(eval(std::span<const Point>(&cand, 1))[0]);
      if (fc > fx) {
        x = std::move(cand);
        fx = fc;
      } else {
        step *= 0.7;
      }
    }
    best = std::max(best, fx);
  }
  return {best, sampled};
}

double slope_fit(const std::vector<double>& x, const std::vector<double>& y, double* intercept, double* r2) {
  const double n = static_cast<double>(x.size());
  const double mx = std::accumulate(x.begin(), x.end(), 0.0) / n;
  const double my = std::accumulate(y.begin(), y.end(), 0.0) / n;
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
    syy += (y[i] - my) * (y[i] - my);
  }
  const double slope = sxy / sxx;
  *intercept = my - slope * mx;
  *r2 = syy > 0.0 ? (sxy * sxy) / (sxx * syy) : 1.0;
  return slope;
}

double smooth_step(double x) noexcept {
  if (x <= 0.0) return 0.0;
  if (x >= 1.0) return 1.0;
  const double a = std::exp(-1.0 / x), b = std::exp(-1.0 / (1.0 - x));
  return a / (a + b);
}

}  // namespace

const char* norm_method_name(NormMethod m) noexcept {
  switch (m) {
    case NormMethod::ExactSpectralL2: return "exact-spectral-l2";
    case NormMethod::MonteCarlo: return "monte-carlo";
    case NormMethod::FineQuadrature: return "fine-quadrature";
    case NormMethod::DenseSampleSup: return "dense-sample-sup";
  }
  return "unknown";
}

ZonalSum random_poly(const ManifoldSpec& spec, int n, int centers_count, std::uint64_t seed) {
  if (centers_count < 1) throw ParameterError("random_poly: centers_count must be >= 1");
  if (n < 0) throw ParameterError("random_poly: negative degree");
  Rng rng = make_rng(seed);
  std::normal_distribution<double> normal;
  std::vector<Point> centers;
  std::vector<double> coeffs;
  centers.reserve(static_cast<std::size_t>(centers_count));
  for (int j = 0; j < centers_count; ++j) {
    centers.push_back(sample_uniform(spec, rng));
    coeffs.push_back(normal(rng));
  }
  return ZonalSum(spec, n, std::move(centers), std::move(coeffs));
}

NormEstimate sup_norm(const ManifoldSpec& spec, const std::function<double(const Point&)>& g,
                      std::uint64_t seed, const NormOptions& opts) {
  BatchEval eval = [&](std::span<const Point> xs) {
    std::vector<double> out(xs.size());
    parallel_for(
        xs.size(),
        [&](std::size_t b, std::size_t e) {
          for (std::size_t i = b; i < e; ++i) out[i] = g(xs[i]);
        },
        xs.size() > 64 ? opts.threads : 1);
    return out;
  };
  const auto [best, sampled] = sup_search(spec, eval, 0.1, seed, opts);
  NormEstimate est;
  est.p = kInf;
  est.method = NormMethod::DenseSampleSup;
  est.value = best;
  est.stderr_or_bound = sampled;
  est.samples = opts.sup_samples;
  return est;
}

NormEstimate continuous_norm(const ZonalSum& f, double p, std::uint64_t seed, const NormOptions& opts) {
  if (!(p > 0.0)) throw ParameterError("continuous_norm: p must be positive");
  NormEstimate est;
  est.p = p;
  const auto& spec = f.spec();
  if (p == 2.0) {
    est.method = NormMethod::ExactSpectralL2;
    est.value = l2_norm(f, opts.threads);
    return est;
  }
  if (std::isinf(p)) {
    BatchEval eval = [&](std::span<const Point> xs) {
      return zonal_eval_batch(f, xs, xs.size() > 64 ? opts.threads : 1);
    };
    const double step0 = kPi / (2.0 * (spec.epsilon * f.degree() + 1));
    const auto [best, sampled] = sup_search(spec, eval, step0, seed, opts);
    est.method = NormMethod::DenseSampleSup;
    est.value = best;
    est.stderr_or_bound = sampled;
    est.samples = opts.sup_samples;
    return est;
  }
  est.method = NormMethod::MonteCarlo;
  double s1 = 0.0, s2 = 0.0;
  std::size_t n = 0;
  for (std::uint64_t batch = 0;; ++batch) {
    Rng rng = make_rng(seed, batch);
    std::vector<Point> pts;
    pts.reserve(opts.batch);
    for (std::size_t i = 0; i < opts.batch; ++i) pts.push_back(sample_uniform(spec, rng));
    const auto vals = zonal_eval_batch(f, pts, opts.threads);
    for (double v : vals) {
      const double a = std::pow(std::abs(v), p);
      s1 += a;
      s2 += a * a;
    }
    n += vals.size();
    const double mean = s1 / static_cast<double>(n);
    const double var = std::max(0.0, s2 / static_cast<double>(n) - mean * mean);
    const double se_mean = std::sqrt(var / static_cast<double>(n));
    est.value = std::pow(mean, 1.0 / p);
    est.stderr_or_bound = mean > 0.0 ? est.value * se_mean / (p * mean) : 0.0;
    est.samples = n;
    if (est.stderr_or_bound <= opts.rel_stderr * est.value) break;
    if (n >= opts.max_samples) {
      est.capped = true;
      break;
    }
  }
  return est;
}

double discrete_norm(std::span<const double> values, std::span<const double> weights, int n, int d,
                     double p, double t) {
  if (!(p > 0.0)) throw ParameterError("discrete_norm: p must be positive");
  if (!(t >= 0.0 && t <= std::min(p, 1.0))) throw ParameterError("discrete_norm: t must lie in [0, min(p, 1)]");
  if (values.size() != weights.size()) throw ParameterError("discrete_norm: size mismatch");
  const double scale = std::pow(static_cast<double>(n), d - 1);
  auto weight_pow = [&](double lam) { return t == 0.0 ? 1.0 : std::pow(scale * lam, t); };
  if (std::isinf(p)) {
    double m = 0.0;
    for (std::size_t i = 0; i < values.size(); ++i) m = std::max(m, weight_pow(weights[i]) * std::abs(values[i]));
    return m;
  }
  double s = 0.0;
  for (std::size_t i = 0; i < values.size(); ++i) s += weight_pow(weights[i]) * std::pow(std::abs(values[i]), p);
  return std::pow(s / scale, 1.0 / p);
}

double discrete_norm(const ZonalSum& f, const CubatureRule& rule, int n, double p, double t) {
  const auto vals = un_operator(f, rule.nodes);
  return discrete_norm(vals, rule.weights, n, rule.spec.d, p, t);
}

ExperimentReport mz_report(const std::map<int, CubatureRule>& rules, const std::vector<double>& p_list,
                           const std::vector<double>& t_list, int trials, std::uint64_t seed,
                           const MzOptions& opts) {
  if (trials < 1) throw ParameterError("mz_report: trials must be >= 1");
  ExperimentReport rep;
  rep.experiment = "mz";
  rep.key_columns = {"n", "p", "t"};
  rep.provenance["seed"] = seed;
  rep.provenance["trials"] = trials;
  rep.provenance["centers"] = opts.centers;
  rep.provenance["mc_rel_stderr"] = opts.norm.rel_stderr;
  rep.provenance["mc_max_samples"] = opts.norm.max_samples;
  rep.provenance["sup_samples"] = opts.norm.sup_samples;

  for (const auto& [n, rule] : rules) {
    // Resolved (p, t) pairs in input order.
    std::vector<std::pair<double, double>> pairs;
    for (double p : p_list) {
      for (double t : t_list) {
        const double tt = t == kTMax ? std::min(p, 1.0) : t;
        if (tt < 0.0 || tt > std::min(p, 1.0)) continue;
        if (std::find(pairs.begin(), pairs.end(), std::make_pair(p, tt)) == pairs.end()) pairs.emplace_back(p, tt);
      }
    }
    std::vector<std::vector<double>> ratio(pairs.size(), std::vector<double>(static_cast<std::size_t>(trials)));
    std::vector<char> capped(static_cast<std::size_t>(trials), 0);
    NormOptions inner = opts.norm;
    inner.threads = 1;
    parallel_for(
        static_cast<std::size_t>(trials),
        [&](std::size_t b, std::size_t e) {
          for (std::size_t tr = b; tr < e; ++tr) {
            const std::uint64_t s = mix_seed(mix_seed(seed, static_cast<std::uint64_t>(n)), tr);
            const ZonalSum f = random_poly(rule.spec, n, opts.centers, s);
            const auto vals = un_operator(f, rule.nodes, 1);
            std::map<double, double> cont;
            for (std::size_t k = 0; k < pairs.size(); ++k) {
              const double p = pairs[k].first;
              if (!cont.count(p)) {
                const auto est = continuous_norm(f, p, mix_seed(s, 17), inner);
                cont[p] = est.value;
                if (est.capped) capped[tr] = 1;
              }
              ratio[k][tr] = discrete_norm(vals, rule.weights, n, rule.spec.d, p, pairs[k].second) / cont[p];
            }
          }
        },
        opts.threads);
    for (std::size_t k = 0; k < pairs.size(); ++k) {
      const auto& r = ratio[k];
      const double lo = *std::min_element(r.begin(), r.end());
      const double hi = *std::max_element(r.begin(), r.end());
      const double mean = std::accumulate(r.begin(), r.end(), 0.0) / static_cast<double>(r.size());
      const std::vector<double> key{static_cast<double>(n), pairs[k].first, pairs[k].second};
      rep.add(key, "min", lo);
      rep.add(key, "max", hi);
      rep.add(key, "mean", mean);
      rep.add(key, "band", hi / lo);
    }
    rep.provenance["mc_capped_trials"][std::to_string(n)] =
        std::count(capped.begin(), capped.end(), static_cast<char>(1));
  }
  return rep;
}

double oscillation_sum(const ZonalSum& f, const Covering& cov, double p, std::uint64_t seed,
                       const OscillationOptions& opts) {
  const auto& spec = cov.spec;
  const double r = cov.r;
  const double vol = ball_measure(spec, r);
  const auto& nodes = cov.nodes;
  std::vector<double> term(nodes.size());
  parallel_for(
      nodes.size(),
      [&](std::size_t b, std::size_t e) {
        std::vector<Point> pts(static_cast<std::size_t>(opts.ball_samples));
        for (std::size_t i = b; i < e; ++i) {
          Rng rng = make_rng(seed, i);
          const Point& w = nodes[i];
          const double fw = zonal_eval_per_k(f, w);
          for (auto& x : pts) x = sample_in_ball(spec, w, r, rng);
          const auto vals = zonal_eval_batch(f, pts, 1);
          std::size_t arg = 0;
          double best = -1.0;
          for (std::size_t j = 0; j < vals.size(); ++j) {
            const double dv = std::abs(vals[j] - fw);
            if (dv > best) {
              best = dv;
              arg = j;
            }
          }
          Point x = pts[arg];
          double step = 0.25 * r;
          for (int it = 0; it < opts.refine_steps; ++it) {
            Point c = point_at_distance(spec, x, step, rng);
            if (distance(spec, c, w) <= r) {
              const double dv = std::abs(zonal_eval_per_k(f, c) - fw);
              if (dv > best) {
                best = dv;
                x = std::move(c);
                continue;
              }
            }
            step *= 0.7;
          }
          term[i] = vol * std::pow(best, p);
        }
      },
      opts.threads);
  return std::pow(std::accumulate(term.begin(), term.end(), 0.0), 1.0 / p);
}

OscillationResult oscillation_check(const Covering& cov, int n, double p, int trials, std::uint64_t seed,
                                    const OscillationOptions& opts) {
  if (!(p >= 1.0) || std::isinf(p)) throw ParameterError("oscillation_check: need 1 <= p < inf");
  if (n < 1 || trials < 1) throw ParameterError("oscillation_check: n and trials must be >= 1");
  OscillationResult res;
  res.delta = n * cov.r;
  res.n = n;
  res.p = p;
  res.multiplicity = std::max(1, cov.multiplicity_observed);
  for (int tr = 0; tr < trials; ++tr) {
    const std::uint64_t s = mix_seed(seed, static_cast<std::uint64_t>(tr));
    const ZonalSum f = random_poly(cov.spec, 4 * n, opts.centers, s);
    const double lhs = oscillation_sum(f, cov, p, mix_seed(s, 1), opts);
    NormOptions no = opts.norm;
    if (no.threads == 0) no.threads = opts.threads;
    const double norm = continuous_norm(f, p, mix_seed(s, 2), no).value;
    res.lhs.push_back(lhs);
    res.norms.push_back(norm);
    res.constants.push_back(lhs / (std::pow(res.multiplicity, 1.0 / p) * res.delta * norm));
  }
  res.max_constant = *std::max_element(res.constants.begin(), res.constants.end());
  res.mean_constant =
      std::accumulate(res.constants.begin(), res.constants.end(), 0.0) / static_cast<double>(trials);
  return res;
}

std::vector<double> un_operator(const ZonalSum& f, std::span<const Point> nodes, int threads) {
  return zonal_eval_batch(f, nodes, threads);
}

ZonalSum t_operator(const ManifoldSpec& spec, std::span<const double> u, std::span<const double> w,
                    const std::vector<Point>& centers, int N, const Cutoff& eta) {
  if (u.size() != w.size() || u.size() != centers.size()) throw ParameterError("t_operator: length mismatch");
  if (N < 1) throw ParameterError("t_operator: N must be >= 1");
  std::vector<double> coeffs(u.size());
  for (std::size_t j = 0; j < u.size(); ++j) coeffs[j] = w[j] * u[j];
  std::vector<double> mult(static_cast<std::size_t>(2 * N) + 1);
  for (int k = 0; k <= 2 * N; ++k) mult[k] = eta(static_cast<double>(k) / N);
  return ZonalSum(spec, 2 * N, centers, std::move(coeffs)).scale_spectral(mult);
}

TNorms t_operator_norms(const CubatureRule& rule, int N, std::uint64_t seed, int threads) {
  const auto& spec = rule.spec;
  const auto& nodes = rule.nodes;
  const std::size_t m = nodes.size();
  TNorms out;
  out.N = N;
  const KernelSpec ks{N, Cutoff::canonical()};
  out.q1 = l1_kernel_norm(spec, ks);

  std::vector<double> kw(static_cast<std::size_t>(2 * N) + 1), k2(kw.size());
  for (int k = 0; k <= 2 * N; ++k) {
    const double e = eta_eval(static_cast<double>(k) / N);
    kw[k] = e * addition_coeff(spec, k);
    k2[k] = e * kw[k];
  }

  // q = ∞: sup_x Σ_j w_j |K(x, t_j)|.
  auto lebesgue = [&](std::span<const Point> xs) {
    std::vector<double> out_v(xs.size());
    parallel_for(
        xs.size(),
        [&](std::size_t b, std::size_t e) {
          std::vector<double> u(m), v(m);
          for (std::size_t i = b; i < e; ++i) {
            for (std::size_t j = 0; j < m; ++j) u[j] = addition_argument(spec, xs[i], nodes[j]);
            zonal_profile_batch(spec, kw, u, v);
            double s = 0.0;
            for (std::size_t j = 0; j < m; ++j) s += rule.weights[j] * std::abs(v[j]);
            out_v[i] = s;
          }
        },
        xs.size() > 8 ? threads : 1);
    return out_v;
  };
  NormOptions so;
  so.sup_samples = 4096;
  so.threads = threads;
  out.qinf = sup_search(spec, lebesgue, kPi / (4.0 * N), mix_seed(seed, 3), so).first;

  // q = 2: largest eigenvalue of W^{1/2} M W^{1/2}, M_ij = <K(., t_i), K(., t_j)>.
  Eigen::MatrixXd M(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(m));
  parallel_for(
      m,
      [&](std::size_t b, std::size_t e) {
        std::vector<double> u(m), v(m);
        for (std::size_t i = b; i < e; ++i) {
          for (std::size_t j = 0; j < m; ++j) u[j] = addition_argument(spec, nodes[i], nodes[j]);
          zonal_profile_batch(spec, k2, u, v);
          const double si = std::sqrt(rule.weights[i]);
          for (std::size_t j = 0; j < m; ++j) {
            M(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(i)) = si * v[j] * std::sqrt(rule.weights[j]);
          }
        }
      },
      threads);
  Eigen::VectorXd q = Eigen::VectorXd::Ones(static_cast<Eigen::Index>(m)).normalized();
  double lam = 0.0;
  for (int it = 0; it < 200; ++it) {
    Eigen::VectorXd z = M * q;
    const double next = q.dot(z);
    const double nz = z.norm();
    if (!(nz > 0.0)) break;
    q = z / nz;
    if (it > 10 && std::abs(next - lam) <= 1e-12 * next) {
      lam = next;
      break;
    }
    lam = next;
  }
  out.q2 = std::sqrt(std::max(lam, 0.0));
  return out;
}

double tu_identity_error(const ZonalSum& f, const CubatureRule& rule, int N, std::uint64_t seed,
                         int samples, int threads) {
  const auto u = un_operator(f, rule.nodes, threads);
  const ZonalSum g = t_operator(rule.spec, u, rule.weights, rule.nodes, N);
  Rng rng = make_rng(seed);
  std::vector<Point> pts;
  pts.reserve(static_cast<std::size_t>(samples));
  for (int i = 0; i < samples; ++i) pts.push_back(sample_uniform(rule.spec, rng));
  const auto fv = zonal_eval_batch(f, pts, threads);
  const auto gv = zonal_eval_batch(g, pts, threads);
  double s = 0.0;
  for (std::size_t i = 0; i < fv.size(); ++i) s += (fv[i] - gv[i]) * (fv[i] - gv[i]);
  return std::sqrt(s / samples) / l2_norm(f, threads);
}

RateFit fit_rate(const std::vector<double>& N, const std::vector<double>& err) {
  if (N.size() != err.size() || N.size() < 3) throw ParameterError("fit_rate: need >= 3 matching points");
  RateFit fit;
  fit.degenerate = std::all_of(err.begin(), err.end(), [](double e) { return e <= 1e-14; });
  for (std::size_t i = 0; i < N.size(); ++i) {
    fit.x.push_back(std::log(N[i]));
    fit.y.push_back(std::log(std::max(err[i], 1e-300)));
  }
  fit.slope = slope_fit(fit.x, fit.y, &fit.intercept, &fit.r2);
  return fit;
}

RateFit approx_rate(const ManifoldSpec& spec, double r, double p, const std::vector<int>& N_list,
                    std::uint64_t seed, const RateOptions& opts) {
  if (!(r > 0.0)) throw ParameterError("approx_rate: r must be positive");
  if (N_list.size() < 3 || !std::is_sorted(N_list.begin(), N_list.end()) || N_list.front() < 1) {
    throw ParameterError("approx_rate: N_list must be ascending, positive, length >= 3");
  }
  const int M = 4 * N_list.back();
  const ZonalSum g = random_poly(spec, M, opts.centers, seed);
  std::vector<double> mult(static_cast<std::size_t>(M) + 1, 1.0);
  for (int k = 0; k <= M; ++k) {
    if (opts.profile == SpectrumProfile::ScaleBalanced) {
      mult[k] = 1.0 / std::sqrt(harmonic_dimension(spec, k) * (k + 1.0));
    }
    if (k >= 1) mult[k] *= std::pow(laplace_eigenvalue(spec, k), -0.5 * r);
  }
  const ZonalSum f = g.scale_spectral(mult);
  std::vector<double> xs, errs;
  for (int N : N_list) {
    std::vector<double> tail(static_cast<std::size_t>(M) + 1);
    for (int k = 0; k <= M; ++k) tail[k] = 1.0 - eta_eval(static_cast<double>(k) / N);
    const ZonalSum e = f.scale_spectral(tail);
    double err = 0.0;
    if (p == 2.0) {
      err = l2_norm(e, opts.threads);
    } else {
      NormOptions no = opts.norm;
      if (no.threads == 0) no.threads = opts.threads;
      err = continuous_norm(e, p, mix_seed(seed, static_cast<std::uint64_t>(N)), no).value;
    }
    xs.push_back(N);
    errs.push_back(err);
  }
  return fit_rate(xs, errs);
}

double bump_profile(double s) noexcept {
  return smooth_step(6.0 * (s - 0.5)) * smooth_step(4.0 * (1.0 - s));
}

double BumpFixture::eval(std::size_t i, const Point& x) const {
  return bump_profile(m * distance(spec, x, centers.at(i)));
}

double radial_laplacian_bump(const ManifoldSpec& spec, double m, double theta) {
  const double h = 1e-4 / m;
  auto g = [m](double t) { return bump_profile(m * t); };
  const double g0 = g(theta), gp = g(theta + h), gm = g(theta - h);
  const double d2 = (gp - 2.0 * g0 + gm) / (h * h);
  const double d1 = (gp - gm) / (2.0 * h);
  double dlog = 0.0;
  if (spec.a != 0) dlog += 0.5 * spec.a / std::tan(0.5 * theta);
  if (spec.b != 0) dlog += spec.b / std::tan(theta);
  return d2 + dlog * d1;
}

BumpFixture bump_fixture(const ManifoldSpec& spec, double m, int count, std::uint64_t seed,
                         int proposal_budget) {
  if (!(m >= 1.0)) throw ParameterError("bump_fixture: m must be >= 1");
  if (count < 1) throw ParameterError("bump_fixture: count must be >= 1");
  BumpFixture fx;
  fx.spec = spec;
  fx.m = m;
  Rng rng = make_rng(seed);
  const double sep = 4.0 / m;
  int proposals = 0;
  while (static_cast<int>(fx.centers.size()) < count) {
    if (proposals++ >= proposal_budget) {
      std::ostringstream diag;
      diag << "{\"placed\":" << fx.centers.size() << ",\"requested\":" << count
           << ",\"proposals\":" << proposal_budget << "}";
      throw BudgetExceeded("bump_fixture: cannot place separated centers", diag.str());
    }
    Point p = sample_uniform(spec, rng);
    bool ok = true;
    for (const auto& c : fx.centers) {
      if (distance(spec, p, c) <= sep) {
        ok = false;
        break;
      }
    }
    if (ok) fx.centers.push_back(std::move(p));
  }
  fx.min_center_distance = kPi;
  for (std::size_t i = 0; i < fx.centers.size(); ++i) {
    for (std::size_t j = i + 1; j < fx.centers.size(); ++j) {
      fx.min_center_distance = std::min(fx.min_center_distance, distance(spec, fx.centers[i], fx.centers[j]));
    }
  }
  const double lo = 0.5 / m, hi = 1.0 / m;
  auto phi = [m](double t) { return bump_profile(m * t); };
  fx.norm1 = radial_integrate(spec, phi, lo, hi, 1e-12);
  fx.norm2 = std::sqrt(radial_integrate(spec, [&](double t) { return phi(t) * phi(t); }, lo, hi, 1e-12));
  fx.norm1_scaled = fx.norm1 * std::pow(m, spec.d - 1);
  fx.norm2_scaled = fx.norm2 * std::pow(m, 0.5 * (spec.d - 1));
  const int grid = 2000;
  for (int i = 0; i <= grid; ++i) {
    const double th = lo + (hi - lo) * i / grid;
    fx.laplacian_scaled = std::max(fx.laplacian_scaled, std::abs(radial_laplacian_bump(spec, m, th)) / (m * m));
  }
  return fx;
}

}  // namespace ctphs

#include "ctphs/jacobi.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <ostream>

#include "ctphs/error.hpp"

namespace ctphs {
namespace {

struct Step {
  double c1, c2, c3, c4;  // P_n = ((c1 t + c2) P_{n-1} - c3 P_{n-2}) / c4
};

inline Step step(double a, double b, int n) {
  const double s = 2.0 * n + a + b;
  return {(s - 1.0) * s * (s - 2.0), (s - 1.0) * (a * a - b * b),
          2.0 * (n + a - 1.0) * (n + b - 1.0) * s, 2.0 * n * (n + a + b) * (s - 2.0)};
}

inline double p1(double a, double b, double t) { return 0.5 * ((a + b + 2.0) * t + a - b); }

}  // namespace

double jacobi_eval(const JacobiParams& p, int k, double t) {
  if (k <= 0) return k == 0 ? 1.0 : 0.0;
  double prev = 1.0, cur = p1(p.a1, p.b1, t);
  for (int n = 2; n <= k; ++n) {
    const Step s = step(p.a1, p.b1, n);
    const double next = ((s.c1 * t + s.c2) * cur - s.c3 * prev) / s.c4;
    prev = cur;
    cur = next;
  }
  return cur;
}

void jacobi_sequence(const JacobiParams& p, int K, double t, std::span<double> out) {
  if (K < 0) return;
  out[0] = 1.0;
  if (K == 0) return;
  out[1] = p1(p.a1, p.b1, t);
  for (int n = 2; n <= K; ++n) {
    const Step s = step(p.a1, p.b1, n);
    out[n] = ((s.c1 * t + s.c2) * out[n - 1] - s.c3 * out[n - 2]) / s.c4;
  }
}

void jacobi_eval_batch(const JacobiParams& p, int k, std::span<const double> t, std::span<double> out) {
  const std::size_t m = t.size();
  if (k <= 0) {
    std::fill(out.begin(), out.begin() + static_cast<std::ptrdiff_t>(m), k == 0 ? 1.0 : 0.0);
    return;
  }
  std::vector<double> prev(m, 1.0);
  for (std::size_t j = 0; j < m; ++j) out[j] = p1(p.a1, p.b1, t[j]);
  for (int n = 2; n <= k; ++n) {
    const Step s = step(p.a1, p.b1, n);
    const double inv = 1.0 / s.c4;
    for (std::size_t j = 0; j < m; ++j) {
      const double next = ((s.c1 * t[j] + s.c2) * out[j] - s.c3 * prev[j]) * inv;
      prev[j] = out[j];
      out[j] = next;
    }
  }
}

double jacobi_deriv(const JacobiParams& p, int k, double t) {
  if (k <= 0) return 0.0;
  return 0.5 * (k + p.a1 + p.b1 + 1.0) * jacobi_eval({p.a1 + 1.0, p.b1 + 1.0}, k - 1, t);
}

double jacobi_deriv_n(const JacobiParams& p, int k, int i, double t) {
  if (i < 0) throw ParameterError("jacobi_deriv_n: negative derivative order");
  if (i == 0) return jacobi_eval(p, k, t);
  if (k < i) return 0.0;
  const double s = k + p.a1 + p.b1 + 1.0;
  const double scale = std::exp(std::lgamma(s + i) - std::lgamma(s) - i * std::numbers::ln2);
  return scale * jacobi_eval({p.a1 + i, p.b1 + i}, k - i, t);
}

double addition_coeff(double alpha, double beta, int k) {
  if (k < 0) throw ParameterError("addition_coeff: negative degree");
  const double ab = alpha + beta;
  const double lg = std::lgamma(beta + 1.0) + std::lgamma(k + ab + 1.0) - std::lgamma(ab + 2.0) -
                    std::lgamma(k + beta + 1.0);
  return (2.0 * k + ab + 1.0) * std::exp(lg);
}

double harmonic_dimension(const ManifoldSpec& spec, int k) {
  const int n = spec.epsilon * k;
  const double p1 = std::exp(std::lgamma(n + spec.alpha + 1.0) - std::lgamma(n + 1.0) -
                             std::lgamma(spec.alpha + 1.0));
  return std::round(addition_coeff(spec, n) * p1);
}

double poly_space_dimension(const ManifoldSpec& spec, int D) {
  double s = 0.0;
  for (int k = 0; k <= D; ++k) s += harmonic_dimension(spec, k);
  return s;
}

double dirichlet_closed_form(const ManifoldSpec& spec, int D, double t) {
  if (D < 0) throw ParameterError("dirichlet_closed_form: negative degree");
  const double a = spec.alpha, b = spec.beta;
  const double scale = std::exp(std::lgamma(b + 1.0) - std::lgamma(a + b + 2.0) +
                                std::lgamma(D + a + b + 2.0) - std::lgamma(D + b + 1.0));
  return scale * jacobi_eval({a + 1.0, b}, D, t);
}

double reproducing_kernel(const ManifoldSpec& spec, int D, double u) {
  if (spec.epsilon == 1) return dirichlet_closed_form(spec, D, u);
  return 0.5 * (dirichlet_closed_form(spec, 2 * D, u) + dirichlet_closed_form(spec, 2 * D, -u));
}

void reproducing_kernel_batch(const ManifoldSpec& spec, int D, std::span<const double> u,
                              std::span<double> out) {
  if (D < 0) throw ParameterError("reproducing_kernel: negative degree");
  const double a = spec.alpha, b = spec.beta;
  const int deg = spec.epsilon * D;
  const double scale = std::exp(std::lgamma(b + 1.0) - std::lgamma(a + b + 2.0) +
                                std::lgamma(deg + a + b + 2.0) - std::lgamma(deg + b + 1.0));
  const JacobiParams shifted{a + 1.0, b};
  jacobi_eval_batch(shifted, deg, u, out);
  if (spec.epsilon == 2) {
    std::vector<double> neg(u.begin(), u.end());
    for (double& v : neg) v = -v;
    std::vector<double> tmp(neg.size());
    jacobi_eval_batch(shifted, deg, neg, tmp);
    for (std::size_t j = 0; j < u.size(); ++j) out[j] = 0.5 * (out[j] + tmp[j]);
  }
  for (std::size_t j = 0; j < u.size(); ++j) out[j] *= scale;
}

JacobiBoundReport jacobi_bound_check(const JacobiParams& p, int k_max, int grid) {
  if (!(p.a1 > -0.5 && p.b1 > -0.5)) {
    throw ParameterError("jacobi_bound_check: parameters must exceed -1/2");
  }
  if (k_max < 1 || grid < 2) throw ParameterError("jacobi_bound_check: need k_max >= 1, grid >= 2");
  constexpr double kPi = std::numbers::pi;
  constexpr double kFloor = 2.220446049250313e-16;
  JacobiBoundReport rep;
  rep.params = p;
  rep.k_max = k_max;
  rep.grid = grid;
  std::vector<double> theta(static_cast<std::size_t>(grid) + 1), t(theta.size());
  for (int i = 0; i <= grid; ++i) {
    theta[i] = kPi * i / grid;
    t[i] = std::cos(theta[i]);
  }
  std::vector<double> prev(t.size(), 1.0), cur(t.size());
  for (std::size_t j = 0; j < t.size(); ++j) cur[j] = p1(p.a1, p.b1, t[j]);
  for (int k = 1; k <= k_max; ++k) {
    if (k >= 2) {
      const Step s = step(p.a1, p.b1, k);
      for (std::size_t j = 0; j < t.size(); ++j) {
        const double next = ((s.c1 * t[j] + s.c2) * cur[j] - s.c3 * prev[j]) / s.c4;
        prev[j] = cur[j];
        cur[j] = next;
      }
    }
    JacobiBoundRow best{k, 0.0, 0.0};
    for (std::size_t j = 0; j < t.size(); ++j) {
      const bool left = theta[j] <= 0.5 * kPi;
      const double par = left ? p.a1 : p.b1;
      const double th = left ? theta[j] : kPi - theta[j];
      double env = std::pow(static_cast<double>(k), par);
      if (th > 0.0) env = std::min(env, std::pow(static_cast<double>(k), -0.5) * std::pow(th, -par - 0.5));
      env = std::max(env, kFloor);
      const double ratio = std::abs(cur[j]) / env;
      if (ratio > best.ratio) best = {k, theta[j], ratio};
      if (j == 0) rep.theta0_constant = std::max(rep.theta0_constant, ratio);
    }
    rep.rows.push_back(best);
    if (best.ratio > rep.implied_constant) {
      rep.implied_constant = best.ratio;
      rep.argmax_k = k;
      rep.argmax_theta = best.theta;
    }
  }
  return rep;
}

void JacobiBoundReport::write_csv(std::ostream& os) const {
  os << "k,theta,ratio\n";
  os.precision(17);
  for (const auto& r : rows) os << r.k << ',' << r.theta << ',' << r.ratio << '\n';
}

}  // namespace ctphs

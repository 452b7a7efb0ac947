#include "ctphs/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include "ctphs/error.hpp"
#include "ctphs/jacobi.hpp"
#include "ctphs/parallel.hpp"
#include "ctphs/quadrature.hpp"

namespace ctphs {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr std::size_t kChunk = 256;

// out[j] = Σ_k w[k] P_{stride k}^{(a,b)}(u[j]) by the forward recurrence,
// processed in cache-sized chunks of arguments.
void weighted_jacobi_sum(double a, double b, int stride, std::span<const double> w,
                         std::span<const double> u, std::span<double> out) {
  const int K = static_cast<int>(w.size()) - 1;
  const std::size_t m = u.size();
  if (K < 0) {
    std::fill(out.begin(), out.begin() + static_cast<std::ptrdiff_t>(m), 0.0);
    return;
  }
  const int top = stride * K;
  // Recurrence coefficients are shared by every chunk.
  std::vector<double> c1(top + 1), c2(top + 1), c3(top + 1);
  for (int n = 2; n <= top; ++n) {
    const double s = 2.0 * n + a + b;
    const double c4 = 2.0 * n * (n + a + b) * (s - 2.0);
    c1[n] = (s - 1.0) * s * (s - 2.0) / c4;
    c2[n] = (s - 1.0) * (a * a - b * b) / c4;
    c3[n] = 2.0 * (n + a - 1.0) * (n + b - 1.0) * s / c4;
  }
  double prev[kChunk], cur[kChunk], acc[kChunk];
  for (std::size_t j0 = 0; j0 < m; j0 += kChunk) {
    const std::size_t len = std::min(kChunk, m - j0);
    const double* x = u.data() + j0;
    for (std::size_t j = 0; j < len; ++j) {
      prev[j] = 1.0;
      cur[j] = 0.5 * ((a + b + 2.0) * x[j] + a - b);
      acc[j] = w[0];
    }
    if (top >= 1 && stride == 1) {
      for (std::size_t j = 0; j < len; ++j) acc[j] += w[1] * cur[j];
    }
    for (int n = 2; n <= top; ++n) {
      const double e1 = c1[n], e2 = c2[n], e3 = c3[n];
      for (std::size_t j = 0; j < len; ++j) {
        const double next = (e1 * x[j] + e2) * cur[j] - e3 * prev[j];
        prev[j] = cur[j];
        cur[j] = next;
      }
      if (n % stride == 0) {
        const double wk = w[n / stride];
        if (wk != 0.0) {
          for (std::size_t j = 0; j < len; ++j) acc[j] += wk * cur[j];
        }
      }
    }
    std::copy(acc, acc + len, out.data() + j0);
  }
}

void require_eps1(const ManifoldSpec& spec, const char* op) {
  if (spec.epsilon != 1) {
    throw UseLiftError(std::string(op) +
                       ": K_{N,eta} is defined for epsilon = 1; evaluate real projective kernels "
                       "as even functions on the sphere of the same d");
  }
}

std::vector<double> kernel_weights(const ManifoldSpec& spec, const KernelSpec& ks) {
  if (ks.N < 1) throw ParameterError("kernel: N must be >= 1");
  std::vector<double> w(static_cast<std::size_t>(2 * ks.N) + 1);
  for (int k = 0; k <= 2 * ks.N; ++k) w[k] = ks.eta(static_cast<double>(k) / ks.N) * addition_coeff(spec, k);
  return w;
}

double lsq_slope(const std::vector<double>& x, const std::vector<double>& y) {
  const double n = static_cast<double>(x.size());
  const double mx = std::accumulate(x.begin(), x.end(), 0.0) / n;
  const double my = std::accumulate(y.begin(), y.end(), 0.0) / n;
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
  }
  return sxy / sxx;
}

}  // namespace

double eta_eval(double u) noexcept {
  if (u <= 1.0) return 1.0;
  if (u >= 2.0) return 0.0;
  const double f1 = std::exp(-1.0 / (2.0 - u));
  const double f2 = std::exp(-1.0 / (u - 1.0));
  return f1 / (f1 + f2);
}

double Cutoff::operator()(double u) const {
  switch (type_) {
    case Type::Canonical: return eta_eval(u);
    case Type::Hard: return u <= 1.0 ? 1.0 : 0.0;
    case Type::Custom: return fn_(u);
  }
  return 0.0;
}

void zonal_profile_batch(const ManifoldSpec& spec, std::span<const double> w,
                         std::span<const double> u, std::span<double> out) {
  weighted_jacobi_sum(spec.alpha, spec.beta, spec.epsilon, w, u, out);
}

double zonal_profile(const ManifoldSpec& spec, std::span<const double> w, double u) {
  double out = 0.0;
  zonal_profile_batch(spec, w, std::span<const double>(&u, 1), std::span<double>(&out, 1));
  return out;
}

double kernel_eval(const ManifoldSpec& spec, const KernelSpec& ks, double u) {
  require_eps1(spec, "kernel_eval");
  const auto w = kernel_weights(spec, ks);
  return zonal_profile(spec, w, u);
}

void kernel_deriv_batch(const ManifoldSpec& spec, const KernelSpec& ks, int i,
                        std::span<const double> u, std::span<double> out) {
  require_eps1(spec, "kernel_deriv_eval");
  if (i < 0) throw ParameterError("kernel_deriv_eval: negative order");
  const auto w = kernel_weights(spec, ks);
  const int top = 2 * ks.N;
  if (i > top) {
    std::fill(out.begin(), out.begin() + static_cast<std::ptrdiff_t>(u.size()), 0.0);
    return;
  }
  // d^i/du^i P_k^{(α,β)} = Γ(k+α+β+1+i) / (2^i Γ(k+α+β+1)) P_{k-i}^{(α+i,β+i)}.
  std::vector<double> shifted(static_cast<std::size_t>(top - i) + 1);
  const double ab = spec.alpha + spec.beta;
  for (int k = i; k <= top; ++k) {
    const double g = std::exp(std::lgamma(k + ab + 1.0 + i) - std::lgamma(k + ab + 1.0) -
                              i * std::numbers::ln2);
    shifted[k - i] = w[k] * g;
  }
  weighted_jacobi_sum(spec.alpha + i, spec.beta + i, 1, shifted, u, out);
}

double kernel_deriv_eval(const ManifoldSpec& spec, const KernelSpec& ks, int i, double u) {
  double out = 0.0;
  kernel_deriv_batch(spec, ks, i, std::span<const double>(&u, 1), std::span<double>(&out, 1));
  return out;
}

KernelDecayReport kernel_decay_profile(const ManifoldSpec& spec, const KernelSpec& ks, int ell,
                                       int order, int grid) {
  if (ell < 0 || order < 0 || grid < 16) throw ParameterError("kernel_decay_profile: bad arguments");
  KernelDecayReport rep;
  rep.N = ks.N;
  rep.ell = ell;
  rep.order = order;
  rep.eta = ks.eta.name();
  const double N = ks.N;
  const double lo = 1.0 / N;
  std::vector<double> theta(static_cast<std::size_t>(grid)), u(theta.size()), val(theta.size());
  const double step = std::log(kPi / lo) / (grid - 1);
  for (int j = 0; j < grid; ++j) {
    theta[j] = j == grid - 1 ? kPi : lo * std::exp(step * j);
    u[j] = std::cos(theta[j]);
  }
  kernel_deriv_batch(spec, ks, order, u, val);
  rep.value_at_one = std::abs(kernel_deriv_eval(spec, ks, order, 1.0));
  const double scale = std::pow(N, spec.d - 1 + 2 * order);
  rep.rows.reserve(theta.size());
  for (int j = 0; j < grid; ++j) {
    const double v = std::abs(val[j]);
    const double ratio = v / (scale * std::pow(N * theta[j], -ell));
    rep.rows.push_back({theta[j], v, ratio});
    if (ratio > rep.implied_constant) {
      rep.implied_constant = ratio;
      rep.argmax_theta = theta[j];
    }
  }
  // Upper envelope in the tail: local maxima of |K^{(i)}| on the grid.
  const double floor = 1e-13 * rep.value_at_one;
  std::vector<double> lx, ly;
  for (int j = 1; j < grid; ++j) {
    if (theta[j] < 0.25 * kPi) continue;
    const double v = rep.rows[j].value;
    const bool peak = v >= rep.rows[j - 1].value && (j == grid - 1 || v >= rep.rows[j + 1].value);
    if (!peak || v <= floor) continue;
    lx.push_back(std::log(N * theta[j]));
    ly.push_back(std::log(v));
  }
  rep.tail_points = static_cast<int>(lx.size());
  rep.tail_slope = lx.size() >= 3 ? lsq_slope(lx, ly) : std::nan("");
  return rep;
}

double l1_kernel_norm(const ManifoldSpec& spec, const KernelSpec& ks) {
  require_eps1(spec, "l1_kernel_norm");
  const auto w = kernel_weights(spec, ks);
  // Cells far shorter than the oscillation length; a cell whose endpoints
  // differ in sign is split at the root, so every piece is smooth and an
  // 8-point Gauss rule is essentially exact on it.
  const int cells = 64 * ks.N + 64;
  std::vector<double> edge(static_cast<std::size_t>(cells) + 1), uedge(edge.size()), kedge(edge.size());
  for (int c = 0; c <= cells; ++c) {
    edge[c] = kPi * c / cells;
    uedge[c] = std::cos(edge[c]);
  }
  zonal_profile_batch(spec, w, uedge, kedge);

  std::vector<double> cuts{0.0};
  for (int c = 0; c < cells; ++c) {
    if (kedge[c] * kedge[c + 1] < 0.0) {
      double lo = edge[c], hi = edge[c + 1], flo = kedge[c];
      for (int it = 0; it < 60 && hi - lo > 1e-15; ++it) {
        const double mid = 0.5 * (lo + hi);
        const double fm = zonal_profile(spec, w, std::cos(mid));
        if ((fm < 0.0) == (flo < 0.0)) {
          lo = mid;
          flo = fm;
        } else {
          hi = mid;
        }
      }
      cuts.push_back(0.5 * (lo + hi));
    }
    cuts.push_back(edge[c + 1]);
  }

  const QuadratureRule gl = gauss_legendre(8, 0.0, 1.0);
  std::vector<double> theta, weight;
  theta.reserve(cuts.size() * 8);
  weight.reserve(cuts.size() * 8);
  for (std::size_t p = 0; p + 1 < cuts.size(); ++p) {
    const double a = cuts[p], h = cuts[p + 1] - a;
    if (h <= 0.0) continue;
    for (std::size_t q = 0; q < gl.nodes.size(); ++q) {
      theta.push_back(a + h * gl.nodes[q]);
      weight.push_back(h * gl.weights[q]);
    }
  }
  std::vector<double> u(theta.size()), kv(theta.size());
  for (std::size_t i = 0; i < theta.size(); ++i) u[i] = std::cos(theta[i]);
  zonal_profile_batch(spec, w, u, kv);
  double total = 0.0;
  for (std::size_t i = 0; i < theta.size(); ++i) total += weight[i] * std::abs(kv[i]) * radial_density(spec, theta[i]);
  return total;
}

ZonalSum::ZonalSum(ManifoldSpec spec, int degree, std::vector<Point> centers,
                   std::vector<double> coeffs, std::vector<double> spectral)
    : spec_(spec),
      degree_(degree),
      centers_(std::make_shared<const std::vector<Point>>(std::move(centers))),
      coeffs_(std::make_shared<const std::vector<double>>(std::move(coeffs))),
      spectral_(std::move(spectral)) {
  finish();
}

ZonalSum::ZonalSum(ManifoldSpec spec, int degree, std::shared_ptr<const std::vector<Point>> centers,
                   std::shared_ptr<const std::vector<double>> coeffs, std::vector<double> spectral)
    : spec_(spec), degree_(degree), centers_(std::move(centers)), coeffs_(std::move(coeffs)),
      spectral_(std::move(spectral)) {
  finish();
}

void ZonalSum::finish() {
  if (degree_ < 0) throw ParameterError("ZonalSum: negative degree");
  if (centers_->empty()) throw ParameterError("ZonalSum: at least one center is required");
  if (centers_->size() != coeffs_->size()) {
    throw ParameterError("ZonalSum: centers and coeffs differ in length");
  }
  const auto n = static_cast<std::size_t>(spec_.ambient_dim());
  for (const auto& c : *centers_) {
    if (c.coords.size() != n) throw ParameterError("ZonalSum: center dimension does not match spec");
  }
  if (spectral_.empty()) spectral_.assign(static_cast<std::size_t>(degree_) + 1, 1.0);
  if (spectral_.size() != static_cast<std::size_t>(degree_) + 1) {
    throw ParameterError("ZonalSum: spectral multipliers must have degree + 1 entries");
  }
  weights_.resize(spectral_.size());
  unit_ = true;
  for (int k = 0; k <= degree_; ++k) {
    weights_[k] = spectral_[k] * addition_coeff(spec_, spec_.epsilon * k);
    unit_ = unit_ && spectral_[k] == 1.0;
  }
}

ZonalSum ZonalSum::with_spectral(std::vector<double> spectral) const {
  const int degree = std::max(0, static_cast<int>(spectral.size()) - 1);
  return ZonalSum(spec_, degree, centers_, coeffs_, std::move(spectral));
}

ZonalSum ZonalSum::with_coeffs(std::vector<double> coeffs) const {
  return ZonalSum(spec_, degree_, centers_, std::make_shared<const std::vector<double>>(std::move(coeffs)),
                  spectral_);
}

ZonalSum ZonalSum::scale_spectral(const std::vector<double>& mult) const {
  std::vector<double> m(spectral_);
  for (std::size_t k = 0; k < m.size(); ++k) m[k] *= k < mult.size() ? mult[k] : 0.0;
  std::size_t last = m.size();
  while (last > 1 && m[last - 1] == 0.0) --last;
  m.resize(last);
  return with_spectral(std::move(m));
}

double zonal_eval(const ZonalSum& f, const Point& x) {
  if (!f.unit_spectral()) return zonal_eval_per_k(f, x);
  const auto& spec = f.spec();
  double s = 0.0;
  for (std::size_t j = 0; j < f.size(); ++j) {
    s += f.coeffs()[j] * reproducing_kernel(spec, f.degree(), addition_argument(spec, x, f.centers()[j]));
  }
  return s;
}

double zonal_eval_per_k(const ZonalSum& f, const Point& x) {
  const auto& spec = f.spec();
  std::vector<double> u(f.size()), v(f.size());
  for (std::size_t j = 0; j < f.size(); ++j) u[j] = addition_argument(spec, x, f.centers()[j]);
  zonal_profile_batch(spec, f.profile_weights(), u, v);
  return std::inner_product(v.begin(), v.end(), f.coeffs().begin(), 0.0);
}

std::vector<double> zonal_eval_batch(const ZonalSum& f, std::span<const Point> xs, int threads) {
  std::vector<double> out(xs.size());
  const auto& spec = f.spec();
  parallel_for(
      xs.size(),
      [&](std::size_t begin, std::size_t end) {
        std::vector<double> u(f.size()), v(f.size());
        for (std::size_t i = begin; i < end; ++i) {
          for (std::size_t j = 0; j < f.size(); ++j) u[j] = addition_argument(spec, xs[i], f.centers()[j]);
          zonal_profile_batch(spec, f.profile_weights(), u, v);
          out[i] = std::inner_product(v.begin(), v.end(), f.coeffs().begin(), 0.0);
        }
      },
      threads);
  return out;
}

double l2_inner(const ZonalSum& f, const ZonalSum& g, int threads) {
  if (!(f.spec() == g.spec())) throw ParameterError("l2_inner: functions live on different spaces");
  const auto& spec = f.spec();
  const int D = std::min(f.degree(), g.degree());
  // ∫ Z_k(x, y) Z_l(x, z) dσ(x) = δ_{kl} Z_k(y, z).
  std::vector<double> w(static_cast<std::size_t>(D) + 1);
  for (int k = 0; k <= D; ++k) {
    w[k] = f.spectral()[k] * g.spectral()[k] * addition_coeff(spec, spec.epsilon * k);
  }
  std::vector<double> row_sum(f.size());
  parallel_for(
      f.size(),
      [&](std::size_t begin, std::size_t end) {
        std::vector<double> u(g.size()), v(g.size());
        for (std::size_t i = begin; i < end; ++i) {
          for (std::size_t j = 0; j < g.size(); ++j) u[j] = addition_argument(spec, f.centers()[i], g.centers()[j]);
          zonal_profile_batch(spec, w, u, v);
          row_sum[i] = f.coeffs()[i] * std::inner_product(v.begin(), v.end(), g.coeffs().begin(), 0.0);
        }
      },
      threads);
  return std::accumulate(row_sum.begin(), row_sum.end(), 0.0);
}

double l2_norm(const ZonalSum& f, int threads) { return std::sqrt(std::max(0.0, l2_inner(f, f, threads))); }

double integral(const ZonalSum& f) {
  return f.spectral()[0] * std::accumulate(f.coeffs().begin(), f.coeffs().end(), 0.0);
}

ZonalSum yk_project(const ZonalSum& f, int k) {
  std::vector<double> mult(static_cast<std::size_t>(f.degree()) + 1, 0.0);
  if (k >= 0 && k <= f.degree()) mult[k] = 1.0;
  return f.scale_spectral(mult);
}

ZonalSum vn_apply(const ZonalSum& f, int N, const Cutoff& eta) {
  if (N < 1) throw ParameterError("vn_apply: N must be >= 1");
  std::vector<double> mult(static_cast<std::size_t>(f.degree()) + 1);
  for (int k = 0; k <= f.degree(); ++k) mult[k] = eta(static_cast<double>(k) / N);
  return f.scale_spectral(mult);
}

double laplace_eigenvalue(const ManifoldSpec& spec, int k) noexcept {
  const double ek = static_cast<double>(spec.epsilon) * k;
  return ek * (ek + spec.alpha + spec.beta + 1.0);
}

ZonalSum frac_laplacian(const ZonalSum& f, double r) {
  if (!(r > 0.0)) throw ParameterError("frac_laplacian: r must be positive");
  std::vector<double> mult(static_cast<std::size_t>(f.degree()) + 1);
  for (int k = 0; k <= f.degree(); ++k) mult[k] = std::pow(laplace_eigenvalue(f.spec(), k), r);
  return f.scale_spectral(mult);
}

double cesaro_number(double delta, int j) {
  if (!(delta > -1.0)) throw ParameterError("cesaro_number: delta must exceed -1");
  return std::exp(std::lgamma(j + delta + 1.0) - std::lgamma(delta + 1.0) - std::lgamma(j + 1.0));
}

ZonalSum cesaro_apply(const ZonalSum& f, double delta, int K) {
  if (K < 0) throw ParameterError("cesaro_apply: K must be >= 0");
  const double ak = cesaro_number(delta, K);
  std::vector<double> mult(static_cast<std::size_t>(f.degree()) + 1, 0.0);
  for (int j = 0; j <= std::min(K, f.degree()); ++j) mult[j] = cesaro_number(delta, K - j) / ak;
  return f.scale_spectral(mult);
}

}  // namespace ctphs

#pragma once

#include <functional>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "ctphs/manifold.hpp"

namespace ctphs {

/// Canonical smooth cutoff: 1 on [0,1], 0 on [2,∞), and
/// f(2-u) / (f(2-u) + f(u-1)) in between with f(s) = exp(-1/s).
double eta_eval(double u) noexcept;

/// A spectral cutoff η. Every report records `name()`.
class Cutoff {
 public:
  enum class Type { Canonical, Hard, Custom };

  static Cutoff canonical() { return Cutoff(Type::Canonical, "canonical-exp", {}); }
  /// Indicator of [0, 1]; turns K_N into the Dirichlet kernel of degree N.
  static Cutoff hard() { return Cutoff(Type::Hard, "hard", {}); }
  static Cutoff custom(std::string name, std::function<double(double)> fn) {
    return Cutoff(Type::Custom, std::move(name), std::move(fn));
  }

  double operator()(double u) const;
  Type type() const noexcept { return type_; }
  const std::string& name() const noexcept { return name_; }

 private:
  Cutoff(Type t, std::string name, std::function<double(double)> fn)
      : type_(t), name_(std::move(name)), fn_(std::move(fn)) {}
  Type type_;
  std::string name_;
  std::function<double(double)> fn_;
};

struct KernelSpec {
  int N = 1;
  Cutoff eta = Cutoff::canonical();
};

/// Weighted Jacobi sum Σ_{k=0}^{D} w_k P_{εk}^{(α,β)}(u) at each u.
/// The workhorse behind kernels, zonal sums and Gram matrices.
void zonal_profile_batch(const ManifoldSpec& spec, std::span<const double> w,
                         std::span<const double> u, std::span<double> out);
double zonal_profile(const ManifoldSpec& spec, std::span<const double> w, double u);

/// K_{N,η}(u) = Σ_{k=0}^{2N} η(k/N) c_k P_k^{(α,β)}(u). Throws UseLiftError
/// for real projective spaces.
double kernel_eval(const ManifoldSpec& spec, const KernelSpec& ks, double u);
/// i-th derivative in u, termwise.
double kernel_deriv_eval(const ManifoldSpec& spec, const KernelSpec& ks, int i, double u);
void kernel_deriv_batch(const ManifoldSpec& spec, const KernelSpec& ks, int i,
                        std::span<const double> u, std::span<double> out);

struct KernelDecayRow {
  double theta = 0.0;
  double value = 0.0;  // |K^{(i)}(cos θ)|
  double ratio = 0.0;  // value / (N^{d-1+2i} (Nθ)^{-ℓ})
};

struct KernelDecayReport {
  int N = 0;
  int ell = 0;
  int order = 0;
  std::string eta;
  double value_at_one = 0.0;
  /// max ratio over θ ∈ [1/N, π].
  double implied_constant = 0.0;
  double argmax_theta = 0.0;
  /// Least-squares slope of log(peak |K^{(i)}|) against log(Nθ) over the
  /// tail window Nθ ∈ [πN/4, πN]; peaks below 1e-13·|K^{(i)}(1)| are dropped.
  double tail_slope = 0.0;
  int tail_points = 0;
  std::vector<KernelDecayRow> rows;
};

/// Scans `grid` log-spaced θ in [1/N, π].
KernelDecayReport kernel_decay_profile(const ManifoldSpec& spec, const KernelSpec& ks, int ell,
                                       int order, int grid = 8192);

/// ∫_0^π |K_{N,η}(cos θ)| α(θ) dθ.
double l1_kernel_norm(const ManifoldSpec& spec, const KernelSpec& ks);

/// f(x) = Σ_j coeffs_j Σ_{k=0}^{D} m_k c_{εk} P_{εk}(cos(d(x, y_j)/ε)).
///
/// Immutable; centers are shared between derived sums so spectral operators
/// are cheap.
class ZonalSum {
 public:
  ZonalSum(ManifoldSpec spec, int degree, std::vector<Point> centers, std::vector<double> coeffs,
           std::vector<double> spectral = {});

  const ManifoldSpec& spec() const noexcept { return spec_; }
  int degree() const noexcept { return degree_; }
  const std::vector<Point>& centers() const noexcept { return *centers_; }
  const std::vector<double>& coeffs() const noexcept { return *coeffs_; }
  /// m_k for k = 0..degree.
  const std::vector<double>& spectral() const noexcept { return spectral_; }
  /// m_k c_{εk}: the Jacobi weights of the radial profile.
  const std::vector<double>& profile_weights() const noexcept { return weights_; }
  bool unit_spectral() const noexcept { return unit_; }
  std::size_t size() const noexcept { return centers_->size(); }

  /// Same centers and coefficients, new multipliers (and degree).
  ZonalSum with_spectral(std::vector<double> spectral) const;
  ZonalSum with_coeffs(std::vector<double> coeffs) const;
  /// Multiplies m_k by mult[k]; degree shrinks to the last nonzero index.
  ZonalSum scale_spectral(const std::vector<double>& mult) const;

 private:
  ZonalSum(ManifoldSpec spec, int degree, std::shared_ptr<const std::vector<Point>> centers,
           std::shared_ptr<const std::vector<double>> coeffs, std::vector<double> spectral);
  void finish();

  ManifoldSpec spec_;
  int degree_ = 0;
  std::shared_ptr<const std::vector<Point>> centers_;
  std::shared_ptr<const std::vector<double>> coeffs_;
  std::vector<double> spectral_;
  std::vector<double> weights_;
  bool unit_ = true;
};

/// Uses the closed-form reproducing kernel when all m_k = 1.
double zonal_eval(const ZonalSum& f, const Point& x);
/// Always sums degree by degree.
double zonal_eval_per_k(const ZonalSum& f, const Point& x);
std::vector<double> zonal_eval_batch(const ZonalSum& f, std::span<const Point> xs, int threads = 0);

/// Exact L² inner product from the reproducing property of each H_k.
double l2_inner(const ZonalSum& f, const ZonalSum& g, int threads = 0);
double l2_norm(const ZonalSum& f, int threads = 0);
/// Exact ∫ f dσ (the k = 0 component).
double integral(const ZonalSum& f);

ZonalSum yk_project(const ZonalSum& f, int k);
/// V_{N,η}: multiplies m_k by η(k/N).
ZonalSum vn_apply(const ZonalSum& f, int N, const Cutoff& eta = Cutoff::canonical());
/// (-Δ)^r: multiplies m_k by (εk(εk+α+β+1))^r. Throws ParameterError for r <= 0.
ZonalSum frac_laplacian(const ZonalSum& f, double r);
/// Laplacian eigenvalue magnitude εk(εk+α+β+1).
double laplace_eigenvalue(const ManifoldSpec& spec, int k) noexcept;
/// σ_K^δ: multiplies m_j by A_{K-j}^δ / A_K^δ for j <= K, zero beyond.
ZonalSum cesaro_apply(const ZonalSum& f, double delta, int K);
/// A_j^δ = Γ(j+δ+1) / (Γ(δ+1) Γ(j+1)).
double cesaro_number(double delta, int j);

}  // namespace ctphs

#pragma once

#include <iosfwd>
#include <span>
#include <vector>

#include "ctphs/manifold.hpp"

namespace ctphs {

/// Jacobi parameters (a1, b1), both > -1.
struct JacobiParams {
  double a1 = 0.0;
  double b1 = 0.0;
};

/// Jacobi parameters (alpha, beta) of the zonal harmonic analysis on spec.
inline JacobiParams jacobi_params(const ManifoldSpec& spec) noexcept { return {spec.alpha, spec.beta}; }

/// P_k^{(a1,b1)}(t) normalized by P_k(1) = Γ(k+a1+1) / (Γ(k+1) Γ(a1+1)),
/// evaluated by the forward three-term recurrence.
double jacobi_eval(const JacobiParams& p, int k, double t);

/// Writes P_0(t), ..., P_K(t) to out (size K+1).
void jacobi_sequence(const JacobiParams& p, int K, double t, std::span<double> out);

/// P_k at many arguments; vectorizes the recurrence across t.
void jacobi_eval_batch(const JacobiParams& p, int k, std::span<const double> t, std::span<double> out);

/// d/dt P_k(t) = (k+a1+b1+1)/2 · P_{k-1}^{(a1+1,b1+1)}(t); zero for k = 0.
double jacobi_deriv(const JacobiParams& p, int k, double t);

/// i-th derivative of P_k.
double jacobi_deriv_n(const JacobiParams& p, int k, int i, double t);

/// Addition-formula coefficient
///   c_k = Γ(β+1)(2k+α+β+1)Γ(k+α+β+1) / (Γ(α+β+2)Γ(k+β+1)).
double addition_coeff(double alpha, double beta, int k);
inline double addition_coeff(const ManifoldSpec& spec, int k) { return addition_coeff(spec.alpha, spec.beta, k); }

/// dim H_k = c_{εk} P_{εk}(1), the multiplicity of the k-th eigenspace.
double harmonic_dimension(const ManifoldSpec& spec, int k);
/// dim Π_D = Σ_{k ≤ D} dim H_k.
double poly_space_dimension(const ManifoldSpec& spec, int D);

/// Σ_{k=0}^{D} c_k P_k^{(α,β)}(t) via the closed form
/// [Γ(β+1)/Γ(α+β+2)] [Γ(D+α+β+2)/Γ(D+β+1)] P_D^{(α+1,β)}(t).
double dirichlet_closed_form(const ManifoldSpec& spec, int D, double t);

/// Reproducing kernel of Π_D at u = cos(d/ε): Σ_{k ≤ D} c_{εk} P_{εk}(u).
/// For ε = 2 only even Jacobi degrees enter, which is the even part of the
/// degree-2D Dirichlet sum.
double reproducing_kernel(const ManifoldSpec& spec, int D, double u);
void reproducing_kernel_batch(const ManifoldSpec& spec, int D, std::span<const double> u,
                              std::span<double> out);

struct JacobiBoundRow {
  int k = 0;
  double theta = 0.0;
  double ratio = 0.0;
};

/// Empirical constant in |P_k(cos θ)| ≤ C min{k^{a1}, k^{-1/2} θ^{-a1-1/2}}
/// on [0, π/2] (and the mirrored envelope with b1 on [π/2, π]).
struct JacobiBoundReport {
  JacobiParams params;
  int k_max = 0;
  int grid = 0;
  double implied_constant = 0.0;
  int argmax_k = 0;
  double argmax_theta = 0.0;
  /// max_k |P_k(1)| / k^{a1}.
  double theta0_constant = 0.0;
  /// One row per k at the θ attaining the largest ratio.
  std::vector<JacobiBoundRow> rows;

  void write_csv(std::ostream& os) const;
};

/// Scans k = 1..k_max over grid+1 equispaced θ in [0, π]. Throws
/// ParameterError unless both parameters exceed -1/2.
JacobiBoundReport jacobi_bound_check(const JacobiParams& p, int k_max, int grid);

}  // namespace ctphs

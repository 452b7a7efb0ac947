#pragma once

#include <cstdint>
#include <functional>
#include <limits>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "ctphs/covering.hpp"
#include "ctphs/cubature.hpp"
#include "ctphs/kernels.hpp"
#include "ctphs/report.hpp"

namespace ctphs {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

enum class NormMethod { ExactSpectralL2, MonteCarlo, FineQuadrature, DenseSampleSup };
const char* norm_method_name(NormMethod m) noexcept;

struct NormEstimate {
  double value = 0.0;
  double p = 2.0;
  NormMethod method = NormMethod::ExactSpectralL2;
  /// Standard error (MonteCarlo), zero for exact values; for sup estimates
  /// the largest sampled value before refinement.
  double stderr_or_bound = 0.0;
  std::size_t samples = 0;
  /// MonteCarlo stopped at max_samples before reaching the target stderr.
  bool capped = false;
};

struct NormOptions {
  double rel_stderr = 0.005;
  std::size_t batch = 4096;
  std::size_t max_samples = 1000000;
  /// Dense sample count for p = ∞, then hill-climbing from the best points.
  std::size_t sup_samples = 10000;
  int refine_starts = 8;
  int refine_steps = 60;
  int threads = 0;
};

/// Degree-n zonal sum with uniformly drawn centers and standard normal
/// coefficients; unit multipliers.
ZonalSum random_poly(const ManifoldSpec& spec, int n, int centers_count, std::uint64_t seed);

/// p = 2 exact (Gram identity); other finite p by adaptive Monte Carlo;
/// p = ∞ by dense sampling plus local refinement (a lower estimate).
NormEstimate continuous_norm(const ZonalSum& f, double p, std::uint64_t seed = 0,
                             const NormOptions& opts = {});

/// Sup estimate of |g| for an arbitrary function on the space.
NormEstimate sup_norm(const ManifoldSpec& spec, const std::function<double(const Point&)>& g,
                      std::uint64_t seed, const NormOptions& opts = {});

/// ((1/n^{d-1}) Σ_ω (n^{d-1} λ_ω)^t |f(ω)|^p)^{1/p}, max-form at p = ∞, with
/// 0^0 = 1. Throws ParameterError unless 0 <= t <= min(p, 1).
double discrete_norm(std::span<const double> values, std::span<const double> weights, int n, int d,
                     double p, double t);
double discrete_norm(const ZonalSum& f, const CubatureRule& rule, int n, double p, double t);

/// Sentinel in a t-list meaning "t = min(p, 1)".
inline constexpr double kTMax = -1.0;

struct MzOptions {
  /// Centers per random test function.
  int centers = 12;
  NormOptions norm;
  int threads = 0;
};

/// For each rule (keyed by n), each p and t: ratio discrete/continuous over
/// `trials` random f ∈ Π_n. Rows (n, p, t) × {min, max, mean, band}.
ExperimentReport mz_report(const std::map<int, CubatureRule>& rules, const std::vector<double>& p_list,
                           const std::vector<double>& t_list, int trials, std::uint64_t seed,
                           const MzOptions& opts = {});

struct OscillationOptions {
  int centers = 8;
  /// Uniform samples per ball before hill-climbing refinement.
  int ball_samples = 64;
  int refine_steps = 24;
  NormOptions norm;
  int threads = 0;
};

struct OscillationResult {
  double delta = 0.0;
  int n = 0;
  double p = 1.0;
  int multiplicity = 0;
  std::vector<double> lhs;
  std::vector<double> norms;
  /// LHS / (a^{1/p} δ ‖f‖_p) per trial.
  std::vector<double> constants;
  double max_constant = 0.0;
  double mean_constant = 0.0;
};

/// Oscillation sum (Σ_ω |B(ω, δ/n)| max_{B(ω,δ/n)} |f - f(ω)|^p)^{1/p} for
/// random f ∈ Π_{4n}; δ = n · covering.r.
OscillationResult oscillation_check(const Covering& covering, int n, double p, int trials,
                                    std::uint64_t seed, const OscillationOptions& opts = {});
/// Same sum for one function (exposed for tests).
double oscillation_sum(const ZonalSum& f, const Covering& covering, double p, std::uint64_t seed,
                       const OscillationOptions& opts = {});

/// U_N f = (f(t_1), ..., f(t_m)).
std::vector<double> un_operator(const ZonalSum& f, std::span<const Point> nodes, int threads = 0);

/// T(u) = Σ_j w_j u_j K_{N,η}(cos d(·, t_j)) as a degree-2N zonal sum.
ZonalSum t_operator(const ManifoldSpec& spec, std::span<const double> u, std::span<const double> w,
                    const std::vector<Point>& centers, int N, const Cutoff& eta = Cutoff::canonical());

struct TNorms {
  int N = 0;
  /// ‖T‖ from ℓ_{q,w} to L_q at q = 1 (exact), q = 2 (power iteration on
  /// the exact kernel Gram) and q = ∞ (dense-sample sup of Σ w_j |K|).
  double q1 = 0.0;
  double q2 = 0.0;
  double qinf = 0.0;
};

TNorms t_operator_norms(const CubatureRule& rule, int N, std::uint64_t seed, int threads = 0);

/// ‖f - T U_N f‖_2 / ‖f‖_2 with the numerator from `samples` uniform points.
double tu_identity_error(const ZonalSum& f, const CubatureRule& rule, int N, std::uint64_t seed,
                         int samples = 4096, int threads = 0);

struct RateFit {
  std::vector<double> x;  // log N
  std::vector<double> y;  // log error
  double slope = 0.0;
  double intercept = 0.0;
  double r2 = 0.0;
  bool degenerate = false;
};

/// Least squares; flags degenerate when all errors are <= 1e-14.
RateFit fit_rate(const std::vector<double>& N, const std::vector<double>& err);

enum class SpectrumProfile {
  /// Per-degree energy ∝ 1/(k+1) before smoothing: errors follow N^{-r}.
  ScaleBalanced,
  /// Raw random zonal sum (energy ∝ dim H_k): errors follow N^{-r+(d-1)/2}.
  White,
};

struct RateOptions {
  SpectrumProfile profile = SpectrumProfile::ScaleBalanced;
  int centers = 16;
  NormOptions norm;
  int threads = 0;
};

/// f = g with multipliers λ_k^{-r/2} (k >= 1), g random of degree 4 max N;
/// error ‖f - V_N f‖_p (exact at p = 2) fitted against N.
RateFit approx_rate(const ManifoldSpec& spec, double r, double p, const std::vector<int>& N_list,
                    std::uint64_t seed, const RateOptions& opts = {});

/// φ on [0, ∞): supported in [1/2, 1], equal to 1 on [2/3, 3/4].
double bump_profile(double s) noexcept;

struct BumpFixture {
  ManifoldSpec spec;
  double m = 1.0;
  std::vector<Point> centers;
  double min_center_distance = 0.0;
  /// ‖φ_i‖_p for p = 1, 2 and their m^{(d-1)/p}-scaled values.
  double norm1 = 0.0;
  double norm2 = 0.0;
  double norm1_scaled = 0.0;
  double norm2_scaled = 0.0;
  /// max over θ of |Δ_θ φ(mθ)| / m².
  double laplacian_scaled = 0.0;

  /// φ_i(x) = φ(m d(x, x_i)).
  double eval(std::size_t i, const Point& x) const;
};

/// Radial Laplacian Δ_θ g = g'' + (log α)' g' of g(θ) = φ(mθ) by central
/// differences with h = 1e-4/m.
double radial_laplacian_bump(const ManifoldSpec& spec, double m, double theta);

/// `count` centers with pairwise distance > 4/m, drawn greedily. Throws
/// BudgetExceeded if they cannot be placed within the proposal budget.
BumpFixture bump_fixture(const ManifoldSpec& spec, double m, int count, std::uint64_t seed,
                         int proposal_budget = 100000);

}  // namespace ctphs

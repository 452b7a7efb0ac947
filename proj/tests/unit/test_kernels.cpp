#include <doctest.h>

#include <cmath>

#include "ctphs/error.hpp"
#include "ctphs/jacobi.hpp"
#include "ctphs/kernels.hpp"
#include "ctphs/mzlab.hpp"
#include "oracles.hpp"

using namespace ctphs;
using oracle::kPi;

TEST_CASE("canonical cutoff") {
  CHECK(eta_eval(0.0) == 1.0);
  CHECK(eta_eval(0.7) == 1.0);
  CHECK(eta_eval(1.0) == 1.0);
  CHECK(eta_eval(1.5) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(eta_eval(2.0) == 0.0);
  CHECK(eta_eval(3.0) == 0.0);
  double prev = 1.0;
  for (int i = 0; i <= 3000; ++i) {
    const double v = eta_eval(i / 1000.0);
    CHECK(v <= prev);
    CHECK(v >= 0.0);
    prev = v;
  }
  // Finite-difference derivatives of order 1..4 converge under step refinement
  // (a kink or jump would make the order-k estimate blow up like h^{1-k}).
  auto max_fd = [](int order, double h) {
    double mx = 0.0;
    for (int i = 0; i <= 800; ++i) {
      const double u = 0.9 + 1.2 * i / 800;
      double s = 0.0;
      for (int j = 0; j <= order; ++j) {
        s += (j % 2 ? -1.0 : 1.0) * oracle::binom(order, j) * eta_eval(u + (0.5 * order - j) * h);
      }
      mx = std::max(mx, std::abs(s) / std::pow(h, order));
    }
    return mx;
  };
  for (int order = 1; order <= 4; ++order) {
    CAPTURE(order);
    const double coarse = max_fd(order, 4e-3), fine = max_fd(order, 2e-3);
    CHECK(std::isfinite(fine));
    CHECK(fine == doctest::Approx(coarse).epsilon(0.1));
  }
  CHECK(Cutoff::hard()(1.0) == 1.0);
  CHECK(Cutoff::hard()(1.01) == 0.0);
  CHECK(Cutoff::custom("half", [](double) { return 0.5; })(7.0) == 0.5);
}

TEST_CASE("kernel_eval") {
  const auto s = make_spec(Kind::Sphere, 3);
  const KernelSpec k1{1, Cutoff::canonical()};
  for (double u : {-1.0, 0.0, 0.4, 1.0}) CHECK(kernel_eval(s, k1, u) == doctest::Approx(1 + 3 * u).epsilon(1e-13));
  for (double u : {-1.0, 0.3, 1.0}) CHECK(kernel_deriv_eval(s, k1, 1, u) == doctest::Approx(3.0));
  CHECK_THROWS_AS(kernel_eval(make_spec(Kind::RealProjective, 3), k1, 0.1), UseLiftError);

  // Hard cutoff reproduces the Dirichlet kernel of degree N.
  for (const auto& sp : {s, make_spec(Kind::ComplexProjective, 5), make_spec(Kind::QuaternionProjective, 9)}) {
    for (double u : {-0.8, 0.1, 0.95}) {
      CHECK(kernel_eval(sp, {12, Cutoff::hard()}, u) ==
            doctest::Approx(dirichlet_closed_form(sp, 12, u)).epsilon(1e-10));
    }
  }
  // K(1) = Σ η(k/N) dim H_k, and K(1)/N^{d-1} stays in a stable bracket.
  std::vector<double> ratios;
  for (int N : {32, 64, 128}) {
    double ref = 0.0;
    for (int k = 0; k <= 2 * N; ++k) ref += eta_eval(static_cast<double>(k) / N) * harmonic_dimension(s, k);
    const double v = kernel_eval(s, {N, Cutoff::canonical()}, 1.0);
    CHECK(v == doctest::Approx(ref).epsilon(1e-11));
    ratios.push_back(v / (N * N));
  }
  CHECK(ratios[2] / ratios[0] == doctest::Approx(1.0).epsilon(0.05));
}

TEST_CASE("kernel derivative agrees with finite differences") {
  for (const auto& sp : {make_spec(Kind::Sphere, 3), make_spec(Kind::ComplexProjective, 5)}) {
    for (int N : {4, 16, 64}) {
      const KernelSpec ks{N, Cutoff::canonical()};
      for (double u : {-0.9, -0.2, 0.3, 0.8}) {
        const double h = 1e-6;
        const double fd = oracle::fd([&](double x) { return kernel_eval(sp, ks, x); }, u, h);
        const double d = kernel_deriv_eval(sp, ks, 1, u);
        CHECK(std::abs(fd - d) <= 1e-5 * std::max(std::abs(d), kernel_eval(sp, ks, 1.0) * 1e-3));
        const double fd2 = oracle::fd([&](double x) { return kernel_deriv_eval(sp, ks, 1, x); }, u, 1e-5);
        CHECK(kernel_deriv_eval(sp, ks, 2, u) == doctest::Approx(fd2).epsilon(1e-4).scale(std::abs(fd2) + 1.0));
      }
      CHECK(kernel_deriv_eval(sp, ks, 0, 0.3) == kernel_eval(sp, ks, 0.3));
    }
  }
}

TEST_CASE("kernel decay profile") {
  const auto s = make_spec(Kind::Sphere, 3);
  const auto r64 = kernel_decay_profile(s, {64, Cutoff::canonical()}, 4, 0);
  CHECK(r64.tail_points >= 3);
  CHECK(r64.tail_slope <= -3.5);
  CHECK(std::isfinite(r64.implied_constant));
  const auto r1 = kernel_decay_profile(s, {32, Cutoff::canonical()}, 4, 1);
  CHECK(std::isfinite(r1.implied_constant));
  CHECK(r1.implied_constant > 0.0);
  CHECK(r64.eta == "canonical-exp");
}

TEST_CASE("L1 kernel norm") {
  const auto s = make_spec(Kind::Sphere, 3);
  const double ref = oracle::integrate([](double t) { return std::abs(1 + 3 * std::cos(t)) * std::sin(t) / 2; }, 0.0,
                                       std::acos(-1.0 / 3)) +
                     oracle::integrate([](double t) { return std::abs(1 + 3 * std::cos(t)) * std::sin(t) / 2; },
                                       std::acos(-1.0 / 3), kPi);
  CHECK(l1_kernel_norm(s, {1, Cutoff::canonical()}) == doctest::Approx(ref).epsilon(1e-8));
  const double n8 = l1_kernel_norm(s, {8, Cutoff::canonical()});
  double sup = 0.0;
  for (int N : {8, 16, 32, 64, 128, 256}) sup = std::max(sup, l1_kernel_norm(s, {N, Cutoff::canonical()}));
  CHECK(sup <= 2.0 * n8);
  // The hard cutoff's Lebesgue constant keeps growing (contrast, expected unbounded).
  const double h8 = l1_kernel_norm(s, {8, Cutoff::hard()});
  const double h64 = l1_kernel_norm(s, {64, Cutoff::hard()});
  CHECK(h64 > 1.5 * h8);
}

namespace {

ZonalSum make_poly(const ManifoldSpec& s, int D, int m, std::uint64_t seed) { return random_poly(s, D, m, seed); }

std::vector<Point> probes(const ManifoldSpec& s, int n, std::uint64_t seed) {
  Rng rng = make_rng(seed);
  std::vector<Point> v;
  for (int i = 0; i < n; ++i) v.push_back(sample_uniform(s, rng));
  return v;
}

const std::vector<ManifoldSpec>& zspecs() {
  static const std::vector<ManifoldSpec> v{make_spec(Kind::Sphere, 3), make_spec(Kind::RealProjective, 3),
                                           make_spec(Kind::ComplexProjective, 5), make_spec(Kind::QuaternionProjective, 9)};
  return v;
}

}  // namespace

TEST_CASE("ZonalSum construction and direct evaluation") {
  const auto s = make_spec(Kind::Sphere, 3);
  const Point y = make_point(s, {0, 0, 1});
  const ZonalSum f(s, 1, {y}, {1.0});
  for (const auto& x : probes(s, 20, 1)) {
    CHECK(zonal_eval(f, x) == doctest::Approx(1 + 3 * std::cos(distance(s, x, y))).epsilon(1e-13));
  }
  const ZonalSum z(s, 5, {y, y}, {0.0, 0.0});
  for (const auto& x : probes(s, 5, 2)) CHECK(zonal_eval(z, x) == 0.0);
  CHECK_THROWS_AS(ZonalSum(s, 2, {y}, {1.0, 2.0}), ParameterError);
  CHECK_THROWS_AS(ZonalSum(s, 2, {}, {}), ParameterError);
  CHECK_THROWS_AS(ZonalSum(s, 2, {y}, {1.0}, {1.0}), ParameterError);
}

TEST_CASE("fast path and per-degree path agree") {
  for (const auto& s : zspecs()) {
    Rng rng = make_rng(9);
    for (int i = 0; i < 100; ++i) {
      const int D = 1 + static_cast<int>(rng() % 100);
      const ZonalSum f = make_poly(s, D, 3, rng());
      const Point x = sample_uniform(s, rng);
      const double a = zonal_eval(f, x), b = zonal_eval_per_k(f, x);
      CHECK(std::abs(a - b) <= 1e-10 * std::max(1.0, reproducing_kernel(s, D, 1.0)));
    }
  }
}

TEST_CASE("spectral projections") {
  for (const auto& s : zspecs()) {
    CAPTURE(kind_name(s.kind));
    const ZonalSum f = make_poly(s, 10, 4, 77);
    const auto xs = probes(s, 50, 3);
    std::vector<double> sum(xs.size(), 0.0);
    for (int k = 0; k <= 10; ++k) {
      const auto v = zonal_eval_batch(yk_project(f, k), xs);
      for (std::size_t i = 0; i < xs.size(); ++i) sum[i] += v[i];
    }
    const auto fv = zonal_eval_batch(f, xs);
    for (std::size_t i = 0; i < xs.size(); ++i) CHECK(std::abs(sum[i] - fv[i]) <= 1e-12 * reproducing_kernel(s, 10, 1.0));

    // Idempotent and spectrally consistent.
    const ZonalSum y3 = yk_project(f, 3);
    const ZonalSum y33 = yk_project(y3, 3);
    for (const auto& x : xs) {
      double direct = 0.0;
      for (std::size_t j = 0; j < f.size(); ++j) {
        direct += f.coeffs()[j] * addition_coeff(s, 3 * s.epsilon) *
                  jacobi_eval({s.alpha, s.beta}, 3 * s.epsilon, addition_argument(s, x, f.centers()[j]));
      }
      CHECK(zonal_eval(y3, x) == doctest::Approx(direct).epsilon(1e-12).scale(1.0));
      CHECK(zonal_eval(y33, x) == doctest::Approx(zonal_eval(y3, x)).epsilon(1e-12).scale(1.0));
    }
    // Orthogonality of components in the exact L² geometry.
    const double nf = l2_inner(f, f);
    for (int k = 0; k <= 10; ++k) {
      for (int m = 0; m < k; ++m) CHECK(std::abs(l2_inner(yk_project(f, k), yk_project(f, m))) <= 1e-10 * nf);
    }
    CHECK(yk_project(f, 11).degree() == 0);
    CHECK(integral(yk_project(f, 11)) == 0.0);
  }
}

TEST_CASE("exact inner product matches quadrature of the radial profile") {
  const auto s = make_spec(Kind::Sphere, 3);
  const Point o = make_point(s, {0, 0, 1});
  const ZonalSum f(s, 1, {o}, {1.0});
  const double ref = oracle::integrate([](double t) { return std::pow(1 + 3 * std::cos(t), 2) * std::sin(t) / 2; }, 0, kPi);
  CHECK(l2_inner(f, f) == doctest::Approx(ref).epsilon(1e-12));
  const auto cp = make_spec(Kind::ComplexProjective, 5);
  const Point oc = sample_uniform(cp, 4);
  const ZonalSum g(cp, 3, {oc}, {1.0});
  const double C = 1.0 / oracle::radial_mass(cp.a, cp.b);
  const double refc = oracle::integrate(
      [&](double t) {
        const double v = reproducing_kernel(cp, 3, std::cos(t));
        return v * v * C * std::pow(std::sin(t / 2), cp.a) * std::pow(std::sin(t), cp.b);
      },
      0, kPi);
  CHECK(l2_inner(g, g) == doctest::Approx(refc).epsilon(1e-10));
  // Reproducing property: ||Z_D(., o)||² = Z_D(o, o) = dim Π_D.
  CHECK(l2_inner(g, g) == doctest::Approx(poly_space_dimension(cp, 3)).epsilon(1e-12));
}

TEST_CASE("V_N reproduces Π_N and contracts L²") {
  for (const auto& s : zspecs()) {
    const auto xs = probes(s, 20, 8);
    for (int trial = 0; trial < 10; ++trial) {
      const int N = 4 + trial;
      const ZonalSum f = make_poly(s, N, 3, 100 + trial);
      const ZonalSum g = vn_apply(f, N);
      const auto a = zonal_eval_batch(f, xs), b = zonal_eval_batch(g, xs);
      for (std::size_t i = 0; i < xs.size(); ++i) CHECK(std::abs(a[i] - b[i]) <= 1e-12 * std::max(1.0, std::abs(a[i])));
    }
    const ZonalSum f = make_poly(s, 20, 5, 3);
    CHECK(l2_norm(vn_apply(f, 6)) <= l2_norm(f) * (1 + 1e-12));
    const ZonalSum big = vn_apply(f, 40);
    CHECK(big.unit_spectral());
  }
}

TEST_CASE("fractional Laplacian") {
  const auto s = make_spec(Kind::Sphere, 3);
  const ZonalSum f = make_poly(s, 8, 3, 5);
  const ZonalSum c = yk_project(f, 0);
  CHECK(frac_laplacian(c, 1.0).spectral()[0] == 0.0);
  const ZonalSum L = frac_laplacian(f, 0.75);
  for (int k = 0; k <= 8; ++k) CHECK(L.spectral()[k] == doctest::Approx(std::pow(k * (k + 1.0), 0.75)));
  const ZonalSum a = frac_laplacian(frac_laplacian(f, 0.3), 0.9), b = frac_laplacian(f, 1.2);
  for (int k = 0; k <= 8; ++k) CHECK(a.spectral()[k] == doctest::Approx(b.spectral()[k]).epsilon(1e-12));
  CHECK_THROWS_AS(frac_laplacian(f, 0.0), ParameterError);
  const auto rp = make_spec(Kind::RealProjective, 3);
  CHECK(laplace_eigenvalue(rp, 2) == doctest::Approx(4.0 * 5.0));
}

TEST_CASE("Cesaro means") {
  for (double d : {0.0, 0.5, 1.0, 2.5}) CHECK(cesaro_number(d, 0) == doctest::Approx(1.0));
  const auto s = make_spec(Kind::Sphere, 3);
  const ZonalSum f = make_poly(s, 10, 3, 6);
  const ZonalSum z = cesaro_apply(f, 0.0, 6);
  CHECK(z.degree() == 6);
  for (int j = 0; j <= 6; ++j) CHECK(z.spectral()[j] == doctest::Approx(1.0));
  const ZonalSum c = cesaro_apply(f, 1.0, 4);
  for (int j = 0; j <= 4; ++j) CHECK(c.spectral()[j] == doctest::Approx((4.0 - j + 1) / 5.0));
}

TEST_CASE("Cesaro means are uniformly bounded above the critical index") {
  // ‖σ_K^δ‖_{∞→∞} equals the L¹ norm of the Cesàro kernel Σ_j (A_{K-j}/A_K) c_j P_j,
  // which is the sup of ‖σ_K f‖∞/‖f‖∞ over f.
  const auto s = make_spec(Kind::Sphere, 3);
  const Point o = make_point(s, {0, 0, 1});
  auto lebesgue = [&](double delta, int K) {
    const ZonalSum g = cesaro_apply(ZonalSum(s, K, {o}, {1.0}), delta, K);
    const auto& w = g.profile_weights();
    double total = 0.0;
    const int panels = 4 * K;
    for (int p = 0; p < panels; ++p) {
      total += oracle::integrate(
          [&](double t) { return std::abs(zonal_profile(s, w, std::cos(t))) * std::sin(t) / 2; },
          kPi * p / panels, kPi * (p + 1) / panels, 1e-10);
    }
    return total;
  };
  std::vector<double> r;
  for (int K : {16, 32, 64, 128}) r.push_back(lebesgue((s.d - 1) / 2.0, K));
  const double hi = *std::max_element(r.begin(), r.end()), lo = *std::min_element(r.begin(), r.end());
  CHECK(hi <= 1.25 * lo);
  CHECK(lebesgue(0.0, 128) > 1.5 * lebesgue(0.0, 16));
}

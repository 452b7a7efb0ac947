#include <doctest.h>

#include <cmath>
#include <sstream>

#include "ctphs/error.hpp"
#include "ctphs/jacobi.hpp"
#include "ctphs/quadrature.hpp"
#include "oracles.hpp"

using namespace ctphs;

namespace {

std::vector<ManifoldSpec> specs() {
  return {make_spec(Kind::Sphere, 3), make_spec(Kind::Sphere, 4), make_spec(Kind::Sphere, 6),
          make_spec(Kind::RealProjective, 3), make_spec(Kind::RealProjective, 4),
          make_spec(Kind::ComplexProjective, 5), make_spec(Kind::ComplexProjective, 9),
          make_spec(Kind::QuaternionProjective, 9), make_spec(Kind::QuaternionProjective, 13),
          make_spec(Kind::CayleyPlane, 17)};
}

}  // namespace

TEST_CASE("jacobi_eval: trivial cases and Legendre") {
  CHECK(jacobi_eval({0.3, 1.7}, 0, 0.2) == 1.0);
  for (double t : {-1.0, -0.3, 0.0, 0.55, 1.0}) CHECK(jacobi_eval({0, 0}, 1, t) == doctest::Approx(t));
  // P_2 Legendre.
  CHECK(jacobi_eval({0, 0}, 2, 0.4) == doctest::Approx(0.5 * (3 * 0.16 - 1)).epsilon(1e-14));
}

TEST_CASE("jacobi_eval matches the explicit sum for small k") {
  for (double a : {-0.5, 0.0, 0.5, 1.0, 3.5}) {
    for (double b : {-0.5, 0.0, 1.0, 2.5}) {
      for (int k = 0; k <= 3; ++k) {
        for (double t : {-1.0, -0.6, 0.1, 0.9, 1.0}) {
          CHECK(std::abs(jacobi_eval({a, b}, k, t) - oracle::jacobi_explicit(a, b, k, t)) <= 1e-12 * (1 + std::abs(oracle::jacobi_explicit(a, b, k, t))));
        }
      }
      for (int k : {7, 15, 25}) {
        const double ref = oracle::jacobi_explicit(a, b, k, 0.37);
        CHECK(jacobi_eval({a, b}, k, 0.37) == doctest::Approx(ref).epsilon(1e-9).scale(1.0));
      }
    }
  }
}

TEST_CASE("normalization P_k(1) = Γ(k+a+1)/(Γ(k+1)Γ(a+1))") {
  for (double a : {-0.5, 0.0, 0.5, 1.0, 2.0, 7.0}) {
    for (double b : {-0.5, 0.0, 1.0, 3.0}) {
      for (int k = 0; k <= 200; ++k) {
        const double ref = std::exp(std::lgamma(k + a + 1) - std::lgamma(k + 1.0) - std::lgamma(a + 1));
        if (!(std::abs(jacobi_eval({a, b}, k, 1.0) / ref - 1.0) <= 1e-12)) FAIL("normalization k=" << k);
      }
    }
  }
}

TEST_CASE("orthogonality under the Jacobi weight") {
  // Gauss–Legendre in θ with t = cos θ: weight (1-t)^a (1+t)^b dt becomes analytic.
  const auto rule = gauss_legendre(512, 0.0, oracle::kPi);
  for (auto [a, b] : {std::pair{0.0, 0.0}, {0.5, 0.5}, {1.0, 0.0}, {2.0, 1.0}, {7.0, 3.0}, {0.5, -0.5}}) {
    std::vector<std::vector<double>> P(51, std::vector<double>(rule.nodes.size()));
    std::vector<double> w(rule.nodes.size());
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
      const double th = rule.nodes[i], t = std::cos(th);
      std::vector<double> seq(51);
      jacobi_sequence({a, b}, 50, t, seq);
      for (int k = 0; k <= 50; ++k) P[k][i] = seq[k];
      w[i] = rule.weights[i] * std::pow(1 - t, a) * std::pow(1 + t, b) * std::sin(th);
    }
    auto ip = [&](int k, int m) {
      double s = 0;
      for (std::size_t i = 0; i < w.size(); ++i) s += w[i] * P[k][i] * P[m][i];
      return s;
    };
    double worst = 0;
    for (int k = 0; k <= 50; ++k) {
      const double diag = ip(k, k);
      for (int m = 0; m < k; ++m) worst = std::max(worst, std::abs(ip(k, m)) / diag);
    }
    CAPTURE(a);
    CAPTURE(b);
    CHECK(worst <= 1e-9);
  }
}

TEST_CASE("batch and sequence agree with single evaluation") {
  const JacobiParams p{1.5, 0.5};
  std::vector<double> t{-1, -0.5, 0, 0.25, 0.99, 1}, out(t.size()), seq(41);
  jacobi_eval_batch(p, 40, t, out);
  for (std::size_t i = 0; i < t.size(); ++i) {
    jacobi_sequence(p, 40, t[i], seq);
    CHECK(out[i] == doctest::Approx(jacobi_eval(p, 40, t[i])).epsilon(1e-14));
    CHECK(seq[40] == doctest::Approx(out[i]).epsilon(1e-14));
  }
}

TEST_CASE("jacobi_deriv") {
  CHECK(jacobi_deriv({0, 0}, 0, 0.3) == 0.0);
  for (double t : {-0.9, 0.0, 0.7}) CHECK(jacobi_deriv({0, 0}, 1, t) == doctest::Approx(1.0));
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> U(-0.95, 0.95), A(-0.5, 4.0);
  std::uniform_int_distribution<int> K(1, 50);
  for (int i = 0; i < 100; ++i) {
    const JacobiParams p{A(rng), A(rng)};
    const int k = K(rng);
    const double t = U(rng);
    const double fd = oracle::fd([&](double x) { return jacobi_eval(p, k, x); }, t, 1e-6);
    const double d = jacobi_deriv(p, k, t);
    CHECK(std::abs(fd - d) <= 1e-5 * std::max(1.0, std::abs(d)));
  }
  // Higher derivatives by repeated finite differences of the first.
  const JacobiParams p{1.0, 0.0};
  for (int i = 1; i <= 3; ++i) {
    const double fd = oracle::fd([&](double x) { return jacobi_deriv_n(p, 12, i - 1, x); }, 0.3, 1e-5);
    CHECK(jacobi_deriv_n(p, 12, i, 0.3) == doctest::Approx(fd).epsilon(1e-6));
  }
  CHECK(jacobi_deriv_n(p, 2, 3, 0.1) == 0.0);
}

TEST_CASE("addition coefficients") {
  for (const auto& s : specs()) {
    CHECK(addition_coeff(s, 0) == doctest::Approx(1.0).epsilon(1e-14));
    for (int k = 0; k <= 10000; ++k) {
      if (!(addition_coeff(s, k) > 0.0 && std::isfinite(addition_coeff(s, k)))) FAIL("positivity at k=" << k);
    }
  }
  const auto s2 = make_spec(Kind::Sphere, 3);
  for (int k = 0; k < 50; ++k) CHECK(addition_coeff(s2, k) == doctest::Approx(2 * k + 1).epsilon(1e-13));
  CHECK(harmonic_dimension(s2, 7) == 15.0);
  // S^3: dim H_k = (k+1)^2; P^2(R): dim H_k = 4k+1.
  CHECK(harmonic_dimension(make_spec(Kind::Sphere, 4), 5) == 36.0);
  CHECK(harmonic_dimension(make_spec(Kind::RealProjective, 3), 5) == 21.0);
  // P^2(C): dim H_k = (k+1)^3 ... for CP^2 it is (k+1)^2(2k+2)/2 = (k+1)^3.
  CHECK(harmonic_dimension(make_spec(Kind::ComplexProjective, 5), 3) == 64.0);
  CHECK(poly_space_dimension(s2, 32) == 33.0 * 33.0);

  // dim H_k ≍ k^{d-2}. Over k ∈ [16, 256] the slope is within 5% for d <= 9;
  // larger d are still preasymptotic there, so their slope is checked further out.
  for (const auto& s : specs()) {
    CAPTURE(s.d);
    const int lo = s.d <= 9 ? 16 : 512, hi = s.d <= 9 ? 256 : 8192;
    std::vector<double> k, dim;
    for (int j = lo; j <= hi; j *= 2) {
      k.push_back(j);
      dim.push_back(harmonic_dimension(s, j));
    }
    CHECK(oracle::loglog_slope(k, dim) == doctest::Approx(s.d - 2).epsilon(0.05));
  }
}

TEST_CASE("Dirichlet closed form") {
  const auto s2 = make_spec(Kind::Sphere, 3);
  for (double t : {-1.0, -0.2, 0.5, 1.0}) {
    CHECK(dirichlet_closed_form(s2, 1, t) == doctest::Approx(1 + 3 * t).epsilon(1e-14));
    CHECK(dirichlet_closed_form(s2, 0, t) == doctest::Approx(1.0));
  }
  for (const auto& s : specs()) {
    CAPTURE(s.d);
    double worst = 0.0;
    for (int D = 0; D <= 100; D += (D < 10 ? 1 : 7)) {
      for (int i = 0; i <= 40; ++i) {
        const double t = std::cos(oracle::kPi * i / 40);
        double sum = 0.0, scale = 0.0;
        for (int k = 0; k <= D; ++k) {
          const double term = addition_coeff(s, k) * jacobi_eval({s.alpha, s.beta}, k, t);
          sum += term;
          scale += std::abs(term);
        }
        worst = std::max(worst, std::abs(dirichlet_closed_form(s, D, t) - sum) / scale);
      }
    }
    CHECK(worst <= 1e-10);
  }
}

TEST_CASE("Dirichlet closed form is a degree-D polynomial") {
  const auto s = make_spec(Kind::ComplexProjective, 5);
  for (int D : {3, 10, 25}) {
    // Chebyshev interpolation at D+1 nodes, checked on a finer grid (barycentric form).
    const int n = D + 1;
    std::vector<double> x(n), f(n), w(n);
    for (int j = 0; j < n; ++j) {
      x[j] = std::cos((2 * j + 1) * oracle::kPi / (2 * n));
      f[j] = dirichlet_closed_form(s, D, x[j]);
      w[j] = (j % 2 ? -1.0 : 1.0) * std::sin((2 * j + 1) * oracle::kPi / (2 * n));
    }
    const double scale = dirichlet_closed_form(s, D, 1.0);
    for (int i = 0; i <= 200; ++i) {
      const double t = -1.0 + 2.0 * i / 200 + 1e-7;
      double num = 0, den = 0;
      for (int j = 0; j < n; ++j) {
        num += w[j] / (t - x[j]) * f[j];
        den += w[j] / (t - x[j]);
      }
      CHECK(std::abs(num / den - dirichlet_closed_form(s, D, t)) <= 1e-9 * scale);
    }
  }
}

TEST_CASE("reproducing kernel uses even degrees for real projective spaces") {
  const auto rp = make_spec(Kind::RealProjective, 4);
  for (double u : {-0.4, 0.2, 0.8}) {
    double direct = 0;
    for (int k = 0; k <= 6; ++k) direct += addition_coeff(rp, 2 * k) * jacobi_eval({rp.alpha, rp.beta}, 2 * k, u);
    CHECK(reproducing_kernel(rp, 6, u) == doctest::Approx(direct).epsilon(1e-12));
  }
  std::vector<double> u{-1, -0.3, 0.4, 1}, out(4);
  reproducing_kernel_batch(rp, 6, u, out);
  for (int i = 0; i < 4; ++i) CHECK(out[i] == doctest::Approx(reproducing_kernel(rp, 6, u[i])).epsilon(1e-13));
  // Value at u = 1 is dim Π_D.
  CHECK(reproducing_kernel(rp, 6, 1.0) == doctest::Approx(poly_space_dimension(rp, 6)).epsilon(1e-12));
}

TEST_CASE("Jacobi bound check") {
  const auto r128 = jacobi_bound_check({0, 0}, 128, 2000);
  const auto r256 = jacobi_bound_check({0, 0}, 256, 2000);
  CHECK(std::isfinite(r256.implied_constant));
  CHECK(r256.implied_constant <= 2.0 * r128.implied_constant);
  CHECK(r256.implied_constant >= 0.5 * r128.implied_constant);
  CHECK(r256.theta0_constant == doctest::Approx(1.0));  // |P_k(1)| = 1 = k^0
  CHECK(r256.rows.front().k == 1);
  CHECK(std::isfinite(r256.rows.front().ratio));
  const auto r = jacobi_bound_check({1.0, 0.5}, 64, 500);
  CHECK(r.theta0_constant <= 2.0 + 1e-12);  // (k+1)/k at k = 1
  std::ostringstream os;
  r.write_csv(os);
  CHECK(os.str().rfind("k,theta,ratio\n", 0) == 0);
  CHECK_THROWS_AS(jacobi_bound_check({-0.7, 0.0}, 10, 10), ParameterError);
}

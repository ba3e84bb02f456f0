#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "ncdirac/specfun.hpp"

using namespace ncdirac;
using namespace ncdirac::specfun;

namespace {

// Direct series sum_k (-1)^k C(n+a, n-k) x^k / k!.
double laguerre_series(int n, double a, double x) {
  double sum = 0.0;
  for (int k = 0; k <= n; ++k) {
    const double binom = std::exp(std::lgamma(n + a + 1.0) - std::lgamma(n - k + 1.0) - std::lgamma(a + k + 1.0));
    sum += (k % 2 ? -1.0 : 1.0) * binom * std::pow(x, k) / std::tgamma(k + 1.0);
  }
  return sum;
}

}  // namespace

TEST(Gamma, TrivialValues) {
  EXPECT_DOUBLE_EQ(gamma_real(1.0), 1.0);
  EXPECT_NEAR(gamma_real(0.5), 1.7724538509055159, 1e-15);
}

TEST(Gamma, RecursionFromReferenceValue) {
  const double gamma_1_2 = 0.91816874239976061064;  // Gamma(1.2)
  const double expected = 3.2 * 2.2 * 1.2 * gamma_1_2;
  EXPECT_NEAR(gamma_real(4.2) / expected, 1.0, 1e-13);
}

TEST(Gamma, NonPositiveArgumentThrows) {
  EXPECT_THROW(gamma_real(0.0), DomainError);
  EXPECT_THROW(gamma_real(-1.5), DomainError);
}

TEST(Laguerre, LowOrders) {
  EXPECT_DOUBLE_EQ(laguerre_general(0, 2.7, 13.0), 1.0);
  EXPECT_DOUBLE_EQ(laguerre_general(1, 1.5, 0.3), 1.0 + 1.5 - 0.3);
}

TEST(Laguerre, MatchesSeries) {
  EXPECT_NEAR(laguerre_general(3, 1.5, 2.0), laguerre_series(3, 1.5, 2.0), 1e-13);
  for (int n : {2, 5, 9}) {
    for (double a : {-0.5, 0.99, 3.2}) {
      for (double x : {0.1, 1.7, 8.0}) {
        const double ref = laguerre_series(n, a, x);
        EXPECT_NEAR(laguerre_general(n, a, x), ref, 1e-10 * std::max(1.0, std::abs(ref))) << n << " " << a << " " << x;
      }
    }
  }
}

TEST(Laguerre, RejectsBadIndices) {
  EXPECT_THROW(laguerre_general(-1, 0.0, 1.0), DomainError);
  EXPECT_THROW(laguerre_general(2, -1.0, 1.0), DomainError);
}

TEST(SphericalHarmonic, ClosedForms) {
  const double y00 = 1.0 / std::sqrt(4.0 * std::numbers::pi);
  EXPECT_NEAR(std::abs(spherical_harmonic(0, 0, 0.4, 1.1) - complex(y00, 0.0)), 0.0, 1e-15);
  const double t = 0.7;
  const complex y10 = spherical_harmonic(1, 0, t, 2.0);
  EXPECT_NEAR(y10.real(), std::sqrt(3.0 / (4.0 * std::numbers::pi)) * std::cos(t), 1e-15);
  EXPECT_NEAR(y10.imag(), 0.0, 1e-15);
  // Condon-Shortley: Y11 = -sqrt(3/8pi) sin(t) e^{i phi}
  const complex y11 = spherical_harmonic(1, 1, t, 0.0);
  EXPECT_NEAR(y11.real(), -std::sqrt(3.0 / (8.0 * std::numbers::pi)) * std::sin(t), 1e-15);
}

TEST(SphericalHarmonic, OrthonormalOnSphere) {
  const SphereRule sphere(32, 64);
  const auto overlap = [&](int l1, int m1, int l2, int m2) {
    return sphere.integrate([&](double t, double p) {
      return std::conj(spherical_harmonic(l1, m1, t, p)) * spherical_harmonic(l2, m2, t, p);
    });
  };
  EXPECT_NEAR(std::abs(overlap(1, 1, 1, 0)), 0.0, 1e-14);
  EXPECT_NEAR(overlap(1, 1, 1, 1).real(), 1.0, 1e-13);
  EXPECT_NEAR(overlap(3, -2, 3, -2).real(), 1.0, 1e-13);
  EXPECT_NEAR(std::abs(overlap(2, 1, 3, 1)), 0.0, 1e-14);
}

TEST(SphericalHarmonic, RejectsLargeM) { EXPECT_THROW(spherical_harmonic(1, 2, 0.1, 0.1), DomainError); }

TEST(SpinorHarmonic, SingleTermForS) {
  const auto [up, down] = spinor_coefficients(kHalf, 0, kHalf);
  EXPECT_DOUBLE_EQ(up, 1.0);
  EXPECT_DOUBLE_EQ(down, 0.0);
  const auto omega = spinor_harmonic(kHalf, 0, kHalf, 0.3, 0.9);
  EXPECT_NEAR(std::abs(omega[0] - spherical_harmonic(0, 0, 0.3, 0.9)), 0.0, 1e-15);
  EXPECT_EQ(omega[1], complex(0.0, 0.0));
}

TEST(SpinorHarmonic, TwoBranchCoefficients) {
  const auto [up, down] = spinor_coefficients(kHalf, 1, kHalf);
  EXPECT_NEAR(up, -std::sqrt(1.0 / 3.0), 1e-15);
  EXPECT_NEAR(down, std::sqrt(2.0 / 3.0), 1e-15);
}

TEST(SpinorHarmonic, Normalized) {
  const SphereRule sphere(32, 64);
  const auto j = HalfInteger::from_twice(3);
  const double norm = sphere.integrate([&](double t, double p) {
    const auto o = spinor_harmonic(j, 1, kHalf, t, p);
    return std::norm(o[0]) + std::norm(o[1]);
  });
  EXPECT_NEAR(norm, 1.0, 1e-13);
}

TEST(SpinorHarmonic, InconsistentPairThrows) {
  EXPECT_THROW(spinor_harmonic(HalfInteger::from_twice(5), 0, kHalf, 0.1, 0.1), DomainError);
  EXPECT_THROW(spinor_harmonic(kHalf, 0, HalfInteger::from_twice(3), 0.1, 0.1), DomainError);
}

TEST(SpinorHarmonic, ComponentsAreLzEigenfunctions) {
  for (int tj : {1, 3, 5}) {
    const auto j = HalfInteger::from_twice(tj);
    for (int l : {(tj - 1) / 2, (tj + 1) / 2}) {
      for (int tm = -tj; tm <= tj; tm += 2) {
        const auto m = HalfInteger::from_twice(tm);
        const auto psi = [&](double t, double p) { return spinor_harmonic(j, l, m, t, p); };
        for (double t : {0.4, 1.3, 2.5}) {
          const double p = 0.8;
          const auto v = psi(t, p);
          const auto lz = apply_lz(psi, t, p);
          EXPECT_NEAR(std::abs(lz[0] - (m.value() - 0.5) * v[0]), 0.0, 1e-8);
          EXPECT_NEAR(std::abs(lz[1] - (m.value() + 0.5) * v[1]), 0.0, 1e-8);
        }
      }
    }
  }
}

TEST(GaussLaguerre, AnalyticSmallRules) {
  const auto one = gauss_laguerre(1);
  ASSERT_EQ(one.size(), 1u);
  EXPECT_NEAR(one.nodes[0], 1.0, 1e-14);
  EXPECT_NEAR(one.weights[0], 1.0, 1e-14);
  const auto two = gauss_laguerre(2);
  EXPECT_NEAR(two.nodes[0], 2.0 - std::sqrt(2.0), 1e-14);
  EXPECT_NEAR(two.nodes[1], 2.0 + std::sqrt(2.0), 1e-14);
  EXPECT_EQ(two.kind, QuadratureKind::gauss_laguerre);
}

TEST(GaussLaguerre, FactorialMoments) {
  const auto rule = gauss_laguerre(40);
  EXPECT_NEAR(rule.integrate([](double x) { return std::pow(x, 5); }), 120.0, 120.0 * 1e-12);
  const auto small = gauss_laguerre(12);
  for (int k = 0; k <= 23; ++k) {
    const double exact = std::tgamma(k + 1.0);
    EXPECT_NEAR(small.integrate([&](double x) { return std::pow(x, k); }) / exact, 1.0, 1e-11) << k;
  }
}

TEST(GaussLaguerre, RuleInvariants) {
  for (int n : {1, 5, 80, kMaxLaguerreOrder}) {
    const auto rule = gauss_laguerre(n);
    double total = 0.0;
    for (std::size_t i = 0; i < rule.size(); ++i) {
      EXPECT_GT(rule.weights[i], 0.0);
      if (i > 0) {
        EXPECT_GT(rule.nodes[i], rule.nodes[i - 1]);
      }
      total += rule.weights[i];
    }
    EXPECT_NEAR(total, 1.0, 1e-11) << n;
  }
}

TEST(GaussLaguerre, GeneralizedWeight) {
  const double a = 0.37;
  const auto rule = gauss_laguerre(30, a);
  for (int k = 0; k < 10; ++k) {
    const double exact = std::tgamma(a + k + 1.0);
    EXPECT_NEAR(rule.integrate([&](double x) { return std::pow(x, k); }) / exact, 1.0, 1e-12) << k;
  }
}

TEST(GaussLaguerre, AdaptiveReportsConvergence) {
  const auto res = integrate_laguerre_adaptive([](double x) { return std::cos(x); }, 0.0);
  EXPECT_NEAR(res.value, 0.5, 1e-11);
  EXPECT_LE(res.self_error, 1e-10);
}

TEST(GaussLegendre, IntegratesPolynomials) {
  const auto rule = gauss_legendre(8);
  EXPECT_NEAR(rule.integrate([](double x) { return x * x; }), 2.0 / 3.0, 1e-14);
  EXPECT_NEAR(rule.integrate([](double x) { return std::pow(x, 14); }), 2.0 / 15.0, 1e-14);
}

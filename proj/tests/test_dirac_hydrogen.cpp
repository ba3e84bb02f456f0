#include <gtest/gtest.h>

#include <cmath>

#include "ncdirac/dirac_hydrogen.hpp"

using namespace ncdirac;

namespace {

const PhysicalConstants kC{};

HalfInteger half(int twice) { return HalfInteger::from_twice(twice); }

// Dirac binding expanded to alpha^4: m (alpha^2/2N^2 + alpha^4/(2N^4) (N/(j+1/2) - 3/4)).
double sommerfeld_binding(int n, double j, const PhysicalConstants& c) {
  const double a2 = c.alpha * c.alpha;
  return c.m_e * (a2 / (2.0 * n * n) + a2 * a2 / (2.0 * std::pow(n, 4)) * (n / (j + 0.5) - 0.75));
}

}  // namespace

TEST(MakeState, GroundState) {
  const auto s = make_state(0, -1, kHalf);
  EXPECT_EQ(s.l, 0);
  EXPECT_EQ(s.j, kHalf);
  EXPECT_DOUBLE_EQ(s.nu, std::sqrt(1.0 - kC.alpha * kC.alpha));
  EXPECT_EQ(s.principal(), 1);
}

TEST(MakeState, TwoPHalf) {
  const auto s = make_state(1, 1, kHalf);
  EXPECT_EQ(s.l, 1);
  EXPECT_EQ(s.j, kHalf);
  EXPECT_EQ(s.principal(), 2);
  EXPECT_EQ(level_of_state(s).label(), "2P1/2");
}

TEST(MakeState, RejectsUnphysicalNumbers) {
  EXPECT_THROW(make_state(0, 0, kHalf), ValidationError);
  EXPECT_THROW(make_state(-1, -1, kHalf), ValidationError);
  EXPECT_THROW(make_state(0, -1, half(3)), ValidationError);
  // n_r = 0 with kappa > 0 has no normalizable solution; 2P3/2 is (0, -2).
  EXPECT_THROW(make_state(0, 2, half(3)), ValidationError);
  EXPECT_NO_THROW(make_state(0, -2, half(3)));
  PhysicalConstants bad;
  bad.alpha = 1.2;
  EXPECT_THROW(make_state(0, -1, kHalf, bad), ValidationError);
}

TEST(Energy, GroundStateCollapses) {
  const double e = dirac_energy(make_state(0, -1, kHalf));
  EXPECT_NEAR(e / (kC.m_e * std::sqrt(1.0 - kC.alpha * kC.alpha)), 1.0, 1e-12);
}

TEST(Energy, SmallAlphaLimit) {
  PhysicalConstants c;
  c.alpha = 1e-7;
  EXPECT_NEAR(dirac_energy(1, 1, c) / c.m_e, 1.0, 1e-13);
}

TEST(Energy, DecreasesWithAlpha) {
  PhysicalConstants weak;
  weak.alpha = 0.005;
  EXPECT_GT(dirac_energy(1, 1, weak), dirac_energy(1, 1, kC));
}

TEST(Energy, SommerfeldExpansionToAlpha4) {
  const double bound = kC.m_e * std::pow(kC.alpha, 6);
  for (int n = 1; n <= 3; ++n) {
    for (int l = 0; l < n; ++l) {
      for (int tj : {2 * l - 1, 2 * l + 1}) {
        if (tj < 1) continue;
        const auto lv = make_level(n, l, half(tj));
        const double binding = kC.m_e - dirac_energy(lv.n_r, lv.kappa, kC);
        EXPECT_LT(std::abs(binding - sommerfeld_binding(n, 0.5 * tj, kC)), bound) << lv.label();
      }
    }
  }
}

TEST(Energy, TwoPHalfBinding) {
  const double binding = kC.m_e - dirac_energy(make_state(1, 1, kHalf));
  const double a2 = kC.alpha * kC.alpha;
  EXPECT_NEAR(binding, kC.m_e * (a2 / 8.0 + 5.0 * a2 * a2 / 128.0), kC.m_e * std::pow(kC.alpha, 6));
}

TEST(Energy, KappaDegeneracy) {
  for (int n_r = 1; n_r <= 4; ++n_r) {
    for (int k = 1; k <= 3; ++k) {
      const double a = dirac_energy(n_r, k, kC);
      const double b = dirac_energy(n_r, -k, kC);
      EXPECT_NEAR(a / b, 1.0, 1e-12);
    }
  }
}

TEST(Energy, NonrelativisticConsistency) {
  for (int n = 1; n <= 5; ++n) {
    const double eps = -kC.alpha * kC.alpha * kC.m_e / (2.0 * n * n);
    for (int k = 1; k <= n; ++k) {
      const double e = dirac_energy(n - k, -k, kC);
      EXPECT_LE(std::abs(e - kC.m_e - eps) / (kC.m_e * std::pow(kC.alpha, 4)), 1.0);
    }
  }
}

TEST(Energy, IncreasesWithPrincipal) {
  for (int k : {-1, 1, -2, 2, 3}) {
    double previous = 0.0;
    for (int n_r = (k > 0 ? 1 : 0); n_r <= 6; ++n_r) {
      const double e = dirac_energy(n_r, k, kC);
      EXPECT_GT(e, previous);
      EXPECT_LT(e, kC.m_e);
      previous = e;
    }
  }
}

TEST(Radial, GroundStateNormMatchesClosedForm) {
  // 1S: f = C f2 x^{nu-1} e^{-x/2}, g = C g2 x^{nu-1} e^{-x/2}, so
  // C^2 (f2^2 + g2^2) Gamma(2 nu + 1) / scale^3 = 1.
  const auto s = make_state(0, -1, kHalf);
  const auto k = radial_coefficients(s);
  const double scale = s.radial_scale();
  const double expected = std::sqrt(std::pow(scale, 3) / ((k.f2 * k.f2 + k.g2 * k.g2) * std::tgamma(2.0 * s.nu + 1.0)));
  EXPECT_NEAR(normalization_constant(s) / expected, 1.0, 1e-12);
}

TEST(Radial, GroundStateConstantRatio) {
  const auto s = make_state(0, -1, kHalf);
  const DiracOrbital orb(s);
  const auto [f1, g1] = orb(1e-4);
  const auto [f2, g2] = orb(3e-3);
  EXPECT_NEAR(g1 / f1, g2 / f2, 1e-12);
}

TEST(Radial, NormalizationAcrossStates) {
  for (int n_r = 0; n_r <= 5; ++n_r) {
    for (int k = -3; k <= 3; ++k) {
      if (k == 0 || (n_r == 0 && k > 0)) continue;
      const auto s = make_state(n_r, k, kHalf);
      const DiracOrbital orb(s);
      const double c = normalization_constant(orb, s.radial_scale(), s.nu - 1.0);
      EXPECT_NEAR(c, 1.0, 1e-9) << n_r << " " << k;
    }
  }
}

TEST(Radial, ScalingDoublesNormIntegral) {
  const auto s = make_state(1, -2, kHalf);
  const DiracOrbital orb(s);
  const auto doubled = [&](double r) {
    const auto [f, g] = orb(r);
    return std::pair{2.0 * f, 2.0 * g};
  };
  EXPECT_NEAR(normalization_constant(doubled, s.radial_scale(), s.nu - 1.0), 0.5, 1e-10);
}

// G = r f, F = r g satisfy G' + kappa G/r - (E + m + alpha/r) F = 0 and
// F' - kappa F/r + (E - m + alpha/r) G = 0.
TEST(Radial, SatisfiesDiracRadialEquations) {
  for (int n_r = 0; n_r <= 3; ++n_r) {
    for (int k = -3; k <= 3; ++k) {
      if (k == 0 || (n_r == 0 && k > 0)) continue;
      const auto s = make_state(n_r, k, kHalf);
      const DiracOrbital orb(s);
      const double m = kC.m_e, e = s.energy, a = kC.alpha;
      const auto gf = [&](double r) {
        const auto [f, g] = orb(r);
        return std::pair{r * f, r * g};
      };
      for (double x : {0.3, 1.1, 2.9, 6.0}) {
        const double r = x / s.radial_scale();
        const double h = 1e-4 * r;
        const auto [gp2, fp2] = gf(r + 2 * h);
        const auto [gp1, fp1] = gf(r + h);
        const auto [gm1, fm1] = gf(r - h);
        const auto [gm2, fm2] = gf(r - 2 * h);
        const auto [g0, f0] = gf(r);
        const double dg = (-gp2 + 8 * gp1 - 8 * gm1 + gm2) / (12 * h);
        const double df = (-fp2 + 8 * fp1 - 8 * fm1 + fm2) / (12 * h);
        const double t1 = k * g0 / r, t2 = (e + m + a / r) * f0;
        const double u1 = k * f0 / r, u2 = (e - m + a / r) * g0;
        const double scale1 = std::abs(dg) + std::abs(t1) + std::abs(t2);
        const double scale2 = std::abs(df) + std::abs(u1) + std::abs(u2);
        EXPECT_LT(std::abs(dg + t1 - t2), 1e-7 * scale1) << n_r << " " << k << " " << x;
        EXPECT_LT(std::abs(df - u1 + u2), 1e-7 * scale2) << n_r << " " << k << " " << x;
      }
    }
  }
}

TEST(Radial, DecaysExponentially) {
  const auto s = make_state(2, 1, kHalf);
  const DiracOrbital orb(s);
  const double r = 80.0 / s.radial_scale();
  const auto [f, g] = orb(r);
  EXPECT_LT(std::abs(f) + std::abs(g), 1e-10 * std::abs(orb(1.0 / s.radial_scale()).first));
}

TEST(Radial, NonPositiveRadiusThrows) {
  const auto s = make_state(0, -1, kHalf);
  EXPECT_THROW(radial_fg(s, 0.0), DomainError);
  EXPECT_THROW(radial_fg(s, -1.0), DomainError);
}

TEST(Labels, ParseAndMap) {
  const auto p32 = parse_level("2P3/2");
  EXPECT_EQ(p32.n_r, 0);
  EXPECT_EQ(p32.kappa, -2);
  EXPECT_EQ(p32.reference_kappa(), 2);
  const auto p12 = parse_level("2P_1/2");
  EXPECT_EQ(p12.n_r, 1);
  EXPECT_EQ(p12.kappa, 1);
  EXPECT_EQ(parse_level("3d5/2").label(), "3D5/2");
  EXPECT_EQ(parse_level("1S1/2").reference_kappa(), -1);
}

TEST(Labels, Errors) {
  EXPECT_THROW(parse_level("2Q1/2"), ParseError);
  EXPECT_THROW(parse_level("P1/2"), ParseError);
  EXPECT_THROW(parse_level("2P1"), ParseError);
  EXPECT_THROW(parse_level("2P2/2"), ParseError);
  EXPECT_THROW(parse_level("1P1/2"), ValidationError);
  EXPECT_THROW(parse_level("2S3/2"), ValidationError);
}

TEST(Potential, CoulombWithoutTheta) {
  const auto p = deformed_potential({0.3, -0.2, 0.5}, ThetaTensor{}, kC);
  const double r = std::sqrt(0.09 + 0.04 + 0.25);
  EXPECT_NEAR(p.a0, -kC.charge() / r, 1e-15);
  EXPECT_EQ(p.a[0], 0.0);
  EXPECT_EQ(p.a[1], 0.0);
  EXPECT_EQ(p.a[2], 0.0);
}

TEST(Potential, VectorPartAlongZ) {
  const double theta = 1e-3;
  const double x = 0.4, y = -0.7;
  const auto p = deformed_potential({x, y, 0.0}, ThetaTensor::along_z({theta}), kC);
  const double r = std::hypot(x, y);
  const double k = std::pow(kC.charge(), 3) * theta / (4.0 * std::pow(r, 4));
  EXPECT_NEAR(p.a[0], k * y, 1e-15);
  EXPECT_NEAR(p.a[1], -k * x, 1e-15);
  EXPECT_EQ(p.a[2], 0.0);
  EXPECT_NEAR(p.a0, -kC.charge() / r, 1e-15);
}

TEST(Potential, SingularAtOrigin) {
  EXPECT_THROW(deformed_potential({0.0, 0.0, 0.0}, ThetaTensor{}, kC), SingularityError);
}

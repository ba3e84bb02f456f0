#pragma once

// Nonrelativistic hydrogen: Schrodinger states, inverse-power radial
// moments, the expectation values entering the O(1/c^2) Hamiltonian with the
// theta terms, the fine-structure correction and its theta analog.
//
// Natural units throughout (hbar = c = 1, e^2 = alpha, a0 = 1/(m alpha)).

#include <cmath>
#include <optional>
#include <string>

#include "ncdirac/dirac_hydrogen.hpp"
#include "ncdirac/errors.hpp"
#include "ncdirac/nc_shift.hpp"
#include "ncdirac/specfun.hpp"

namespace ncdirac {

struct SchrodingerState {
  int n = 1;
  int l = 0;
  HalfInteger j = kHalf;
  HalfInteger m_j = kHalf;
  /// +1 for j = l + 1/2, -1 for j = l - 1/2.
  int branch = 1;
  double a0 = 0.0;
  PhysicalConstants constants;
};

inline double bohr_radius(const PhysicalConstants& c) { return 1.0 / (c.m_e * c.alpha); }

inline SchrodingerState make_schrodinger_state(int n, int l, HalfInteger j, HalfInteger m_j,
                                               const PhysicalConstants& c = {}) {
  c.validate();
  if (n < 1) throw ValidationError("n must be >= 1");
  if (l < 0 || l >= n) throw ValidationError("need 0 <= l < n");
  if (j.twice() != 2 * l + 1 && j.twice() != 2 * l - 1) throw ValidationError("j must be l +/- 1/2");
  if (j.twice() < 1) throw ValidationError("j must be positive");
  if (!m_j.is_half_odd() || std::abs(m_j.twice()) > j.twice()) throw ValidationError("need |m_j| <= j");
  return {n, l, j, m_j, j.twice() == 2 * l + 1 ? 1 : -1, bohr_radius(c), c};
}

inline double schrodinger_energy(int n, const PhysicalConstants& c = {}) {
  if (n < 1) throw DomainError("schrodinger_energy: n must be >= 1");
  return -c.alpha * c.alpha * c.m_e / (2.0 * n * n);
}

namespace detail {

inline void check_nl(int n, int l) {
  if (n < 1 || l < 0 || l >= n) throw DomainError("radial function needs 0 <= l < n");
}

/// Squared normalization (2/n^2)^2 (n-l-1)! / (a0^3 (n+l)!).
inline double radial_norm_sq(int n, int l, double a0) {
  const double log_ratio = std::lgamma(n - l) - std::lgamma(n + l + 1.0);
  return 4.0 / (std::pow(n, 4) * a0 * a0 * a0) * std::exp(log_ratio);
}

}  // namespace detail

/// R_nl(r) normalized with the modern associated Laguerre L^{2l+1}_{n-l-1}.
inline double radial_R(int n, int l, double r, const PhysicalConstants& c = {}) {
  detail::check_nl(n, l);
  if (!(r > 0.0)) throw DomainError("radial_R: r must be positive");
  const double a0 = bohr_radius(c);
  const double x = 2.0 * r / (n * a0);
  return std::sqrt(detail::radial_norm_sq(n, l, a0)) * std::pow(x, l) * std::exp(-0.5 * x) *
         specfun::laguerre_general(n - l - 1, 2.0 * l + 1.0, x);
}

inline double radial_R_derivative(int n, int l, double r, const PhysicalConstants& c = {}) {
  detail::check_nl(n, l);
  if (!(r > 0.0)) throw DomainError("radial_R_derivative: r must be positive");
  const double a0 = bohr_radius(c);
  const double dxdr = 2.0 / (n * a0);
  const double x = dxdr * r;
  const int k = n - l - 1;
  const double lag = specfun::laguerre_general(k, 2.0 * l + 1.0, x);
  const double dlag = k > 0 ? -specfun::laguerre_general(k - 1, 2.0 * l + 2.0, x) : 0.0;
  const double bracket = (l - 0.5 * x) * lag + x * dlag;
  return std::sqrt(detail::radial_norm_sq(n, l, a0)) * dxdr * std::pow(x, l - 1) * std::exp(-0.5 * x) * bracket;
}

// ---------------------------------------------------------------------------
// <r^-k>

inline bool moment_diverges(int l, int k) { return k >= 2 * l + 3; }

/// Closed forms for k = 3, 4, 5.
inline double r_inverse_moment(int n, int l, int k, const PhysicalConstants& c = {}) {
  detail::check_nl(n, l);
  if (k < 3 || k > 5) throw DomainError("r_inverse_moment: k must be 3, 4 or 5");
  const double a0 = bohr_radius(c);
  const double nn = n;
  const double ll = l;
  const double n3 = nn * nn * nn;
  switch (k) {
    case 3:
      if (l == 0) throw DivergenceError("<r^-3> diverges for l = 0; use s_state_shift");
      return 1.0 / (std::pow(a0, 3) * n3 * ll * (ll + 0.5) * (ll + 1.0));
    case 4:
      if (l == 0) throw DivergenceError("<r^-4> diverges for l = 0; use s_state_shift");
      return 2.0 / (std::pow(a0, 4) * n3 * (2 * ll + 3) * (2 * ll - 1) * (ll + 0.5)) *
             (-1.0 / (nn * nn) + 3.0 / (ll * (ll + 1)));
    default: {
      if (l <= 1) throw DivergenceError("<r^-5> diverges for l <= 1");
      const double inner = -2.0 / (nn * nn * ll * (ll + 1)) +
                           5.0 / ((2 * ll + 3) * (ll - 0.5)) * (-1.0 / (nn * nn) + 3.0 / (ll * (ll + 1)));
      return inner / (3.0 * std::pow(a0, 5) * n3 * (ll + 2) * (ll - 1) * (ll + 0.5));
    }
  }
}

/// Integral of R^2 r^{2-k} dr by generalized Gauss-Laguerre in x = 2r/(n a0).
inline double r_inverse_moment_quadrature(int n, int l, int k, const PhysicalConstants& c = {},
                                          int order = specfun::kDefaultLaguerreOrder) {
  detail::check_nl(n, l);
  const double weight = 2.0 * l + 2.0 - k;
  if (!(weight > -1.0)) {
    throw DivergenceError("integral of R^2 r^(2-k) is not integrable at r = 0 for l = " + std::to_string(l) +
                          ", k = " + std::to_string(k));
  }
  const double a0 = bohr_radius(c);
  const double dxdr = 2.0 / (n * a0);
  const auto rule = specfun::gauss_laguerre(order, weight);
  const double integral = rule.integrate([&](double x) {
    const double lag = specfun::laguerre_general(n - l - 1, 2.0 * l + 1.0, x);
    return lag * lag;
  });
  return detail::radial_norm_sq(n, l, a0) * std::pow(dxdr, k - 3) * integral;
}

/// <p^2> = integral of (R'^2 + l(l+1) R^2 / r^2) r^2 dr, by quadrature.
inline double kinetic_p2_quadrature(int n, int l, const PhysicalConstants& c = {},
                                    int order = specfun::kDefaultLaguerreOrder) {
  detail::check_nl(n, l);
  const double a0 = bohr_radius(c);
  const double dxdr = 2.0 / (n * a0);
  const int k = n - l - 1;
  const auto rule = specfun::gauss_laguerre(order, 2.0 * l);
  const double integral = rule.integrate([&](double x) {
    const double lag = specfun::laguerre_general(k, 2.0 * l + 1.0, x);
    const double dlag = k > 0 ? -specfun::laguerre_general(k - 1, 2.0 * l + 2.0, x) : 0.0;
    const double b = (l - 0.5 * x) * lag + x * dlag;
    return b * b + l * (l + 1.0) * lag * lag;
  });
  return detail::radial_norm_sq(n, l, a0) * integral / dxdr;
}

// ---------------------------------------------------------------------------
// Expectation values

/// Orbital and spin z-projections over Omega_{j l m_j}: <L_z> = m_j (1 -/+ 1/(2l+1)),
/// <S_z> = +/- m_j / (2l+1), upper sign for j = l + 1/2.
inline double lz_factor(const SchrodingerState& s) { return 1.0 - s.branch / (2.0 * s.l + 1.0); }
inline double expectation_Lz(const SchrodingerState& s) { return s.m_j.value() * lz_factor(s); }
inline double expectation_Sz(const SchrodingerState& s) { return s.branch * s.m_j.value() / (2.0 * s.l + 1.0); }

/// j(j+1) - l(l+1) - 3/4.
inline double spin_orbit_factor(const SchrodingerState& s) {
  const double j = s.j.value();
  return j * (j + 1.0) - s.l * (s.l + 1.0) - 0.75;
}

/// The bracket A + B multiplying 2 m_j/(2l+1) in <(sigma.r)(theta.r)/r^6>.
inline double angular_ab_sum(const SchrodingerState& s) {
  const double l = s.l;
  const double mj = s.m_j.value();
  const double sgn = s.branch;
  const double a = (l + mj + 0.5) * (l - mj + 0.5) / ((2 * l + 1) * (2 * l + 1));
  const double d = 2.0 * (l + sgn) + 1.0;
  const double b = (l + mj + 0.5 + sgn) * (l - mj + 1.5) / (d * d);
  return a + b;
}

struct ExpectationTable {
  double r3 = 0.0;
  double r4 = 0.0;
  std::optional<double> r5;      ///< empty when <r^-5> diverges
  double p4_as_printed = 0.0;    ///< carries a leading minus sign
  double p4_physical = 0.0;      ///< positive-definite value
  double theta_L_r4 = 0.0;
  double theta_L_r3 = 0.0;
  double sigma_theta_r4 = 0.0;
  double sigma_r_theta_r_r6 = 0.0;
  double sigma_L_r3 = 0.0;
  std::optional<double> theta_L_sigma_L_r5;
  double pi_delta = 0.0;
  double theta_L_p2_r3 = 0.0;
  std::optional<double> theta_L_r5;
};

inline ExpectationTable expectation_table(const SchrodingerState& s, double theta) {
  if (s.l == 0) throw DomainError("expectation_table: l = 0 terms diverge; use s_state_shift");
  const auto& c = s.constants;
  const double alpha = c.alpha;
  const double m = c.m_e;
  const double n = s.n;
  const double l = s.l;
  const double a0 = s.a0;
  const double lz = expectation_Lz(s);
  const double x = spin_orbit_factor(s);
  const double mj = s.m_j.value();

  ExpectationTable t;
  t.r3 = r_inverse_moment(s.n, s.l, 3, c);
  t.r4 = r_inverse_moment(s.n, s.l, 4, c);
  if (!moment_diverges(s.l, 5)) t.r5 = r_inverse_moment(s.n, s.l, 5, c);

  const double p4_mag = 4.0 * m * m * alpha * alpha / (n * n * n * a0 * a0) * (1.0 / (l + 0.5) - 3.0 / (4.0 * n));
  t.p4_as_printed = -p4_mag;
  t.p4_physical = p4_mag;
  t.theta_L_r4 = theta * lz * t.r4;
  t.theta_L_r3 = theta * lz * t.r3;
  t.sigma_theta_r4 = s.branch * theta * 2.0 * mj / (2 * l + 1) * t.r4;
  t.sigma_r_theta_r_r6 = s.branch * theta * 2.0 * mj / (2 * l + 1) * angular_ab_sum(s) * t.r4;
  t.sigma_L_r3 = x * t.r3;
  if (t.r5) {
    t.theta_L_sigma_L_r5 = theta * lz * x * *t.r5;
    t.theta_L_r5 = theta * lz * *t.r5;
  }
  t.pi_delta = 0.0;
  t.theta_L_p2_r3 = 2.0 * theta * m * alpha * lz * (t.r3 / (2.0 * a0 * n * n) + t.r4);
  return t;
}

/// pi <delta(r)> = (alpha m)^3 / n^3 for S states.
inline double pi_delta_expectation(int n, int l, const PhysicalConstants& c = {}) {
  detail::check_nl(n, l);
  if (l != 0) return 0.0;
  const double am = c.alpha * c.m_e;
  return am * am * am / (static_cast<double>(n) * n * n);
}

// ---------------------------------------------------------------------------
// Fine structure

struct FineStructure {
  /// Kinetic and spin-orbit terms with the kinetic sign as written
  /// (positive, from the negative <p^4> entry).
  double as_printed = 0.0;
  /// Same with -<p^4>/(8 m^3) evaluated from the physical <p^4>.
  double sign_corrected = 0.0;
  /// -(alpha^4 m / 2 n^4) (n/(j+1/2) - 3/4).
  double dirac_expansion = 0.0;
  double kinetic_as_printed = 0.0;
  double spin_orbit = 0.0;
};

inline FineStructure fine_structure_shift(int n, int l, HalfInteger j, const PhysicalConstants& c = {}) {
  const auto s = make_schrodinger_state(n, l, j, kHalf, c);
  if (l == 0) throw DomainError("fine_structure_shift: needs l >= 1");
  const double alpha = c.alpha;
  const double m = c.m_e;
  const double nn = n;
  FineStructure fs;
  fs.kinetic_as_printed = alpha * alpha / (2.0 * m) / (nn * nn * nn * s.a0 * s.a0) * (1.0 / (l + 0.5) - 3.0 / (4.0 * nn));
  fs.spin_orbit = alpha / (4.0 * m * m) * spin_orbit_factor(s) * r_inverse_moment(n, l, 3, c);
  fs.as_printed = fs.kinetic_as_printed + fs.spin_orbit;
  fs.sign_corrected = -fs.kinetic_as_printed + fs.spin_orbit;
  fs.dirac_expansion = -std::pow(alpha, 4) * m / (2.0 * std::pow(nn, 4)) * (nn / (j.value() + 0.5) - 0.75);
  return fs;
}

// ---------------------------------------------------------------------------
// theta analog of the hyperfine correction

struct HyperfineTerms {
  double r3_term = 0.0;
  double r4_term = 0.0;
  std::optional<double> r5_term;  ///< empty when <r^-5> diverges (l = 1)
  /// Sum of the finite terms; equals the full shift only if r5_term is set.
  double finite_sum = 0.0;
  std::optional<double> total;
};

struct HyperfineShift {
  std::string state;
  double theta = 0.0;
  bool r5_divergent = false;
  HyperfineTerms as_printed;
  /// Same moments with coefficients rebuilt from the individual theta
  /// operators and their expectation values.
  HyperfineTerms assembled;
};

namespace detail {
inline HyperfineTerms finish(HyperfineTerms t) {
  t.finite_sum = t.r3_term + t.r4_term + t.r5_term.value_or(0.0);
  if (t.r5_term) t.total = t.finite_sum;
  return t;
}
}  // namespace detail

inline HyperfineShift nc_hyperfine_shift(const SchrodingerState& s, double theta) {
  if (s.l == 0) throw DomainError("nc_hyperfine_shift: l = 0 needs the cutoff treatment (s_state_shift)");
  if (!(theta >= 0.0)) throw DomainError("nc_hyperfine_shift: theta must be >= 0");
  const auto& c = s.constants;
  const double alpha = c.alpha;
  const double m = c.m_e;
  const double n = s.n;
  const double tl = 2.0 * s.l + 1.0;
  const double sgn = s.branch;
  const double lam = lz_factor(s);
  const double ab = angular_ab_sum(s);
  const double j = s.j.value();
  const double pref = 0.5 * theta * alpha * s.m_j.value();

  const double r3 = r_inverse_moment(s.n, s.l, 3, c);
  const double r4 = r_inverse_moment(s.n, s.l, 4, c);
  std::optional<double> r5;
  if (!moment_diverges(s.l, 5)) r5 = r_inverse_moment(s.n, s.l, 5, c);
  const double r5_coef = 3.0 / (4.0 * m * m) * lam * (j * (j + 1.0) - s.l * (s.l + 1.0) + 1.25);

  HyperfineShift out;
  out.state = std::to_string(s.n) + "l" + std::to_string(s.l) + " j=" + s.j.str() + " mj=" + s.m_j.str();
  out.theta = theta;
  out.r5_divergent = !r5.has_value();

  HyperfineTerms printed;
  printed.r3_term = pref * (-1.0 + alpha * alpha / (4.0 * n * n)) * lam * r3;
  printed.r4_term = -pref * alpha / (2.0 * m) * ((5.0 + sgn * 6.0 / tl) + sgn * 4.0 / tl * ab) * r4;
  if (r5) printed.r5_term = pref * r5_coef * *r5;
  out.as_printed = detail::finish(printed);

  HyperfineTerms built;
  built.r3_term = pref * (-1.0 - alpha * alpha / (4.0 * n * n)) * lam * r3;
  built.r4_term = -pref * alpha / (2.0 * m) * ((5.0 - sgn * 6.0 / tl) + sgn * 4.0 / tl * ab) * r4;
  if (r5) built.r5_term = pref * r5_coef * *r5;
  out.assembled = detail::finish(built);
  return out;
}

/// Linear combination of expectation-table entries with the theta-dependent
/// operator coefficients of the O(1/c^2) Hamiltonian. Reproduces
/// nc_hyperfine_shift(...).assembled.total when <r^-5> is finite.
inline std::optional<double> hyperfine_from_table(const SchrodingerState& s, const ExpectationTable& t) {
  if (!t.theta_L_sigma_L_r5 || !t.theta_L_r5) return std::nullopt;
  const double alpha = s.constants.alpha;
  const double m = s.constants.m_e;
  return -(alpha * alpha / m) * t.theta_L_r4 - 0.5 * alpha * t.theta_L_r3 +
         alpha * alpha / (8.0 * m) * (t.sigma_theta_r4 - 4.0 * t.sigma_r_theta_r_r6) +
         3.0 * alpha / (8.0 * m * m) * *t.theta_L_sigma_L_r5 - alpha / (8.0 * m * m) * t.theta_L_p2_r3 +
         6.0 * alpha / (8.0 * m * m) * *t.theta_L_r5;
}

// ---------------------------------------------------------------------------
// S states with a short-distance cutoff

inline constexpr double kDefaultLambdaQcd_eV = 2.0e8;
/// Bound scale quoted in the literature for 14 kHz on the 1S Lamb shift.
inline constexpr double kQuoted1SBoundGeV = 5.6;

/// <(sigma.theta)/r^4 - 4 (sigma.r)(theta.r)/r^6> in 1S with the cutoff:
/// (4 theta / 3) alpha^3 m^3 Lambda.
inline double s_state_expectation(double theta, double lambda_qcd = kDefaultLambdaQcd_eV, const PhysicalConstants& c = {}) {
  if (!(theta >= 0.0)) throw DomainError("s_state_expectation: theta must be >= 0");
  if (!(lambda_qcd > 0.0)) throw DomainError("s_state_expectation: cutoff must be positive");
  return 4.0 * theta / 3.0 * std::pow(c.alpha, 3) * std::pow(c.m_e, 3) * lambda_qcd;
}

/// Delta epsilon_theta(1S) = theta alpha^5 m^2 Lambda / 6.
inline double s_state_shift(double theta, double lambda_qcd = kDefaultLambdaQcd_eV, const PhysicalConstants& c = {}) {
  if (!(theta >= 0.0)) throw DomainError("s_state_shift: theta must be >= 0");
  if (!(lambda_qcd > 0.0)) throw DomainError("s_state_shift: cutoff must be positive");
  return theta * std::pow(c.alpha, 5) * c.m_e * c.m_e * lambda_qcd / 6.0;
}

/// (e^4 / 8 m) times the cutoff expectation value.
inline double s_state_shift_assembled(double theta, double lambda_qcd = kDefaultLambdaQcd_eV,
                                      const PhysicalConstants& c = {}) {
  return c.alpha * c.alpha / (8.0 * c.m_e) * s_state_expectation(theta, lambda_qcd, c);
}

inline ThetaBound s_state_bound(double accuracy_hz, double lambda_qcd = kDefaultLambdaQcd_eV,
                                const PhysicalConstants& c = {}, HzConvention conv = HzConvention::two_pi_hbar) {
  return theta_bound(s_state_shift(1.0, lambda_qcd, c), accuracy_hz, c, conv);
}

}  // namespace ncdirac

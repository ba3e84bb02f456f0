#pragma once

/// \file nc_shift.hpp
/// First-order corrections from the space-space noncommutative perturbation
///
///   H_pert = -(e^2 / 2 r^3) theta.L + (e^4 / 4) theta.(alpha x r / r^4),
///
/// with theta along z. Matrix elements factor into radial integrals
///   rho1 = int r^-1 (f^2 + g^2) dr,   rho2 = int r^-1 (f^2 - g^2) dr
/// and angular blocks over the M-subspace of a multiplet.
///
/// For |kappa| = 1 the integrands behave like r^{2 nu - 3} with
/// 2 nu - 3 < -1, so the radial integrals exist only as analytic
/// continuations in the power (Hadamard finite parts). The quadrature below
/// returns that finite part for every state; for |kappa| >= 2 it is the
/// ordinary integral.

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <optional>
#include <string>
#include <vector>

#include "ncdirac/dirac_hydrogen.hpp"
#include "ncdirac/errors.hpp"
#include "ncdirac/specfun.hpp"

namespace ncdirac {

// ---------------------------------------------------------------------------
// Frequency conversion and theta bounds

enum class HzConvention { two_pi_hbar, planck_h };

inline double hz_to_ev(double hz, const PhysicalConstants& c, HzConvention conv = HzConvention::two_pi_hbar) {
  return conv == HzConvention::two_pi_hbar ? 2.0 * std::numbers::pi * c.hbar_eV_s * hz : c.planck_eV_s * hz;
}

struct ThetaBound {
  double theta_eV2 = 0.0;
  /// Lambda with theta_max = Lambda^-2, in GeV.
  double scale_GeV() const { return 1e-9 / std::sqrt(theta_eV2); }
};

/// Largest theta whose shift |coefficient| * theta stays below the energy
/// equivalent of `accuracy_hz`.
inline ThetaBound theta_bound(double coefficient, double accuracy_hz, const PhysicalConstants& c = {},
                              HzConvention conv = HzConvention::two_pi_hbar) {
  if (!(coefficient > 0.0)) throw DomainError("theta_bound: coefficient must be positive");
  if (!(accuracy_hz > 0.0)) throw DomainError("theta_bound: accuracy must be positive");
  return {hz_to_ev(accuracy_hz, c, conv) / coefficient};
}

/// theta given as "(X GeV)^-2" shorthand.
inline double theta_from_scale_GeV(double scale_GeV) {
  if (!(scale_GeV > 0.0)) throw DomainError("scale must be positive");
  const double ev = scale_GeV * 1e9;
  return 1.0 / (ev * ev);
}

// ---------------------------------------------------------------------------
// Perturbation kernels

enum class SpinorComponent { upper, lower };

struct PerturbationTerms {
  /// -(e^2 / 2 r^3) theta L_z on the chosen component of Omega_{jlM}.
  double orbital = 0.0;
  /// Vector V with (e^4/4) theta.(alpha x r / r^4) = alpha.V.
  Vec3 magnetic{0.0, 0.0, 0.0};
};

inline PerturbationTerms h_pert_terms(const RelativisticState& s, ThetaParam theta, const Vec3& position,
                                      SpinorComponent component = SpinorComponent::upper) {
  const double r = std::sqrt(position[0] * position[0] + position[1] * position[1] + position[2] * position[2]);
  if (!(r > 0.0)) throw SingularityError("h_pert_terms: r = 0");
  const double alpha = s.constants.alpha;
  const double m_orbital = component == SpinorComponent::upper ? s.m.value() - 0.5 : s.m.value() + 0.5;
  PerturbationTerms out;
  out.orbital = -alpha / (2.0 * r * r * r) * theta.theta * m_orbital;
  // theta.(alpha x r) = alpha.(r x theta), theta = theta z_hat.
  const double k = 0.25 * alpha * alpha * theta.theta / (r * r * r * r);
  out.magnetic = {k * position[1], -k * position[0], 0.0};
  return out;
}

// ---------------------------------------------------------------------------
// Radial integrals

namespace detail {
inline void require_nonzero(double denom, const char* what) {
  if (denom == 0.0) throw DegeneracyError(std::string(what) + ": vanishing denominator");
}
}  // namespace detail

/// Closed form of rho1 for the (n_r, kappa) level, evaluated as written:
///   (m a)^3 [3 E k (E k - m) - (nu^2 - 1)] / [m^2 nu (4 nu^2 - 1)(nu^2 - 1)].
/// The numerator mixes eV^2 and dimensionless terms; it disagrees with the
/// defining integral and is kept for comparison only.
inline double rho1_closed_form(int n_r, int kappa, const PhysicalConstants& c = {}) {
  const double m = c.m_e;
  const double nu = dirac_nu(kappa, c);
  const double e = dirac_energy(n_r, kappa, c);
  const double ma = m * dirac_a(n_r, kappa, c);
  const double denom = m * m * nu * (4.0 * nu * nu - 1.0) * (nu * nu - 1.0);
  detail::require_nonzero(denom, "rho1_closed_form");
  return ma * ma * ma * (3.0 * e * kappa * (e * kappa - m) - (nu * nu - 1.0)) / denom;
}

/// Closed form of rho2:
///   2 (m a)^3 E / m^2 * (m + 2 m nu^2 - 3 E k) / [nu (4 nu^2 - 1)(nu^2 - 1)].
inline double rho2_closed_form(int n_r, int kappa, const PhysicalConstants& c = {}) {
  const double m = c.m_e;
  const double nu = dirac_nu(kappa, c);
  const double e = dirac_energy(n_r, kappa, c);
  const double ma = m * dirac_a(n_r, kappa, c);
  const double denom = nu * (4.0 * nu * nu - 1.0) * (nu * nu - 1.0);
  detail::require_nonzero(denom, "rho2_closed_form");
  return 2.0 * ma * ma * ma * e / (m * m) * (m + 2.0 * m * nu * nu - 3.0 * e * kappa) / denom;
}

/// Closed form used for the 2S1/2 -> 2P1/2 radial factor: rho2 at kappa = 1,
/// nu1 = sqrt(1 - e^4), E1 = m / sqrt(1 + (e^2 / (1 + nu1))^2).
inline double rho_transition_closed_form(const PhysicalConstants& c = {}) {
  const double m = c.m_e;
  const double alpha = c.alpha;
  const double nu1 = std::sqrt(1.0 - alpha * alpha);
  const double ratio = alpha / (1.0 + nu1);
  const double e1 = m / std::sqrt(1.0 + ratio * ratio);
  const double ma = m * ratio / std::sqrt(1.0 + ratio * ratio);
  const double kappa = 1.0;
  const double denom = nu1 * (4.0 * nu1 * nu1 - 1.0) * (nu1 * nu1 - 1.0);
  detail::require_nonzero(denom, "rho_transition_closed_form");
  return 2.0 * ma * ma * ma * e1 / (m * m) * (m + 2.0 * m * nu1 * nu1 - 3.0 * e1 * kappa) / denom;
}

enum class RadialSign { plus, minus };

/// Finite part of int_0^inf r^-1 (f_a f_b +/- g_a g_b) dr for normalized
/// states a and b.
///
/// With y = (lambda_a + lambda_b) r, lambda = m a, the integrand is
/// N y^{s-1} e^{-y} S(y), s = nu_a + nu_b - 2 and S a polynomial built from
/// the radial brackets. Splitting S(y) = S(0) + y T(y) gives
///   S(0) Gamma(s) + int y^s e^{-y} T(y) dy,
/// where Gamma(s) = Gamma(s+1)/s continues analytically through s < 0 and
/// the remainder is a convergent generalized Gauss-Laguerre integral.
inline specfun::AdaptiveResult radial_inverse_integral(const RelativisticState& a, const RelativisticState& b,
                                                       RadialSign sign,
                                                       int order = specfun::kDefaultLaguerreOrder) {
  const double lam_a = a.constants.m_e * a.a;
  const double lam_b = b.constants.m_e * b.a;
  const double lam = lam_a + lam_b;
  const auto ka = radial_coefficients(a);
  const auto kb = radial_coefficients(b);
  const double ca = normalization_constant(a, order);
  const double cb = normalization_constant(b, order);
  const double sgn = sign == RadialSign::plus ? 1.0 : -1.0;
  const double xa_per_y = 2.0 * lam_a / lam;
  const double xb_per_y = 2.0 * lam_b / lam;

  const auto bracket_product = [&](double y) {
    const auto [pa, qa] = radial_brackets(a, ka, xa_per_y * y);
    const auto [pb, qb] = radial_brackets(b, kb, xb_per_y * y);
    return pa * pb + sgn * qa * qb;
  };
  const double s = a.nu + b.nu - 2.0;
  const double at_zero = bracket_product(0.0);
  const auto remainder = [&](double y) { return (bracket_product(y) - at_zero) / y; };
  const double gamma_s = specfun::gamma_real(s + 1.0) / s;
  const auto tail = specfun::integrate_laguerre_adaptive(remainder, s, order);
  const double prefactor = ca * cb * std::pow(xa_per_y, a.nu - 1.0) * std::pow(xb_per_y, b.nu - 1.0);
  const double value = prefactor * (at_zero * gamma_s + tail.value);
  return {value, tail.order, tail.self_error};
}

inline specfun::AdaptiveResult rho1_quadrature(const RelativisticState& s, int order = specfun::kDefaultLaguerreOrder) {
  return radial_inverse_integral(s, s, RadialSign::plus, order);
}

inline specfun::AdaptiveResult rho2_quadrature(const RelativisticState& s, int order = specfun::kDefaultLaguerreOrder) {
  return radial_inverse_integral(s, s, RadialSign::minus, order);
}

/// Mixed 2S1/2-2P1/2 radial factor int r^-1 (f_2S f_2P - g_2S g_2P) dr.
inline specfun::AdaptiveResult rho_transition_quadrature(const PhysicalConstants& c = {},
                                                         int order = specfun::kDefaultLaguerreOrder) {
  const auto s2 = make_state(1, -1, kHalf, c);
  const auto p2 = make_state(1, 1, kHalf, c);
  return radial_inverse_integral(s2, p2, RadialSign::minus, order);
}

// ---------------------------------------------------------------------------
// Angular blocks

struct AngularBlock {
  std::string label;
  std::vector<HalfInteger> basis;  ///< M values, ascending
  Eigen::MatrixXcd matrix;         ///< in units of theta
  std::vector<double> eigenvalues; ///< ascending; empty if not Hermitian

  bool is_hermitian(double tol = 1e-12) const { return (matrix - matrix.adjoint()).cwiseAbs().maxCoeff() <= tol; }
};

namespace detail {
inline std::vector<HalfInteger> projections(HalfInteger j) {
  std::vector<HalfInteger> out;
  for (int t = -j.twice(); t <= j.twice(); t += 2) out.push_back(HalfInteger::from_twice(t));
  return out;
}

inline void fill_eigenvalues(AngularBlock& block) {
  block.eigenvalues.clear();
  if (block.matrix.size() == 0 || !block.is_hermitian()) return;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(block.matrix, Eigen::EigenvaluesOnly);
  for (Eigen::Index i = 0; i < solver.eigenvalues().size(); ++i) block.eigenvalues.push_back(solver.eigenvalues()[i]);
  std::sort(block.eigenvalues.begin(), block.eigenvalues.end());
}

inline std::string orbital_label(int l, HalfInteger j) {
  static constexpr std::string_view kLetters = "SPDFGHIK";
  return std::string(1, kLetters.at(static_cast<std::size_t>(l))) + j.str();
}
}  // namespace detail

/// theta.L over the (j, l) multiplet with theta along z: diagonal with
/// entries M (1 -/+ 1/(2l+1)), upper sign for j = l + 1/2.
inline AngularBlock angular_Lz_block(HalfInteger j, int l) {
  (void)specfun::spinor_coefficients(j, l, kHalf);  // validates the pair
  AngularBlock block;
  block.label = "theta_L " + detail::orbital_label(l, j);
  block.basis = detail::projections(j);
  const int n = static_cast<int>(block.basis.size());
  block.matrix = Eigen::MatrixXcd::Zero(n, n);
  const double branch = j.twice() == 2 * l + 1 ? -1.0 : 1.0;
  for (int i = 0; i < n; ++i) block.matrix(i, i) = block.basis[i].value() * (1.0 + branch / (2.0 * l + 1.0));
  detail::fill_eigenvalues(block);
  return block;
}

/// theta.L block by sphere quadrature of Omega^dagger (-i d/dphi) Omega.
inline AngularBlock angular_Lz_block_numeric(HalfInteger j, int l, const specfun::SphereRule& sphere = specfun::SphereRule{}) {
  AngularBlock block;
  block.label = "theta_L " + detail::orbital_label(l, j);
  block.basis = detail::projections(j);
  const int n = static_cast<int>(block.basis.size());
  block.matrix = Eigen::MatrixXcd::Zero(n, n);
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      const auto ket = [&](double t, double p) { return specfun::spinor_harmonic(j, l, block.basis[b], t, p); };
      block.matrix(a, b) = sphere.integrate([&](double t, double p) {
        const auto bra = specfun::spinor_harmonic(j, l, block.basis[a], t, p);
        const auto lz = specfun::apply_lz(ket, t, p);
        return std::conj(bra[0]) * lz[0] + std::conj(bra[1]) * lz[1];
      });
    }
  }
  detail::fill_eigenvalues(block);
  return block;
}

/// sigma.(theta_hat x r_hat) between the (j, l_a) and (j, l_b) spinor
/// harmonics, by sphere quadrature. Entries carry the factor -i of the
/// small Dirac component (psi = (f Omega, i g Omega)), which makes the
/// S-P block real.
inline AngularBlock angular_sigma_cross_block(HalfInteger j, int l_a, int l_b,
                                              const specfun::SphereRule& sphere = specfun::SphereRule{}) {
  (void)specfun::spinor_coefficients(j, l_a, kHalf);
  (void)specfun::spinor_coefficients(j, l_b, kHalf);
  AngularBlock block;
  block.label = "sigma_cross " + detail::orbital_label(l_a, j) + "->" + detail::orbital_label(l_b, j);
  block.basis = detail::projections(j);
  const int n = static_cast<int>(block.basis.size());
  block.matrix = Eigen::MatrixXcd::Zero(n, n);
  const specfun::complex minus_i(0.0, -1.0);
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      block.matrix(a, b) = minus_i * sphere.integrate([&](double t, double p) {
        const auto bra = specfun::spinor_harmonic(j, l_a, block.basis[a], t, p);
        const auto ket = specfun::spinor_harmonic(j, l_b, block.basis[b], t, p);
        // z_hat x r_hat = sin(t) (-sin p, cos p, 0); sigma.v has
        // off-diagonals v_x -/+ i v_y = -/+ i sin(t) e^{-/+ i p}.
        const double st = std::sin(t);
        const specfun::complex up_down = specfun::complex(0.0, -1.0) * st * std::polar(1.0, -p);
        const specfun::complex down_up = specfun::complex(0.0, 1.0) * st * std::polar(1.0, p);
        return std::conj(bra[0]) * up_down * ket[1] + std::conj(bra[1]) * down_up * ket[0];
      });
    }
  }
  detail::fill_eigenvalues(block);
  return block;
}

inline AngularBlock angular_sigma_cross_block(const Level& a, const Level& b,
                                              const specfun::SphereRule& sphere = specfun::SphereRule{}) {
  if (a.j != b.j) throw DomainError("angular_sigma_cross_block: levels must share j");
  return angular_sigma_cross_block(a.j, a.l, b.l, sphere);
}

// ---------------------------------------------------------------------------
// Selection rules

enum class SelectionKind { within_level, cross_level };

inline bool selection_allowed(const RelativisticState& a, const RelativisticState& b, SelectionKind kind) {
  const int dl = std::abs(a.l - b.l);
  const int dm_twice = std::abs(a.m.twice() - b.m.twice());
  if (dm_twice > 2) return false;
  return kind == SelectionKind::within_level ? dl == 0 : dl == 1;
}

// ---------------------------------------------------------------------------
// Level shifts

struct ShiftOptions {
  double accuracy_hz = 80.0;
  HzConvention hz_convention = HzConvention::two_pi_hbar;
  int quad_order = specfun::kDefaultLaguerreOrder;
  int sphere_theta = 64;
  int sphere_phi = 128;
};

struct ShiftEntry {
  HalfInteger m;
  double eigenvalue = 0.0;        ///< theta.L eigenvalue per unit theta
  double sigma_diagonal = 0.0;    ///< diagonal sigma-cross entry per unit theta
  double coefficient_closed_form = 0.0;  ///< eV^3: shift = coefficient * theta
  double coefficient_quadrature = 0.0;
  double shift_closed_form = 0.0;  ///< eV
  double shift_quadrature = 0.0;
  std::optional<ThetaBound> bound_closed_form;
  std::optional<ThetaBound> bound_quadrature;
};

struct ShiftReport {
  std::string level;
  double theta = 0.0;
  int closed_form_kappa = 0;
  double rho1_closed_form = 0.0;
  double rho2_closed_form = 0.0;
  double rho1_quadrature = 0.0;
  double rho2_quadrature = 0.0;
  /// Relative disagreement of rho1 closed form vs quadrature.
  double rho1_rel_discrepancy = 0.0;
  double accuracy_hz = 0.0;
  std::vector<ShiftEntry> entries;
};

/// Shift of each M sublevel: -(e^2/2) rho1 lambda + (e^4/4) rho2 Theta2_MM,
/// once with the closed-form radial factors (reference kappa convention) and
/// once with the finite-part quadrature of the physical state.
inline ShiftReport level_shift(const Level& level, double theta, const PhysicalConstants& c = {},
                               const ShiftOptions& opt = {}) {
  if (!(theta >= 0.0)) throw DomainError("level_shift: theta must be >= 0");
  const auto state = level.state(kHalf, c);
  ShiftReport r;
  r.level = level.label();
  r.theta = theta;
  r.accuracy_hz = opt.accuracy_hz;
  r.closed_form_kappa = level.reference_kappa();
  r.rho1_closed_form = rho1_closed_form(level.n_r, r.closed_form_kappa, c);
  r.rho2_closed_form = rho2_closed_form(level.n_r, r.closed_form_kappa, c);
  r.rho1_quadrature = rho1_quadrature(state, opt.quad_order).value;
  r.rho2_quadrature = rho2_quadrature(state, opt.quad_order).value;
  r.rho1_rel_discrepancy = std::abs(r.rho1_closed_form - r.rho1_quadrature) / std::abs(r.rho1_quadrature);

  const specfun::SphereRule sphere(opt.sphere_theta, opt.sphere_phi);
  const auto lz = angular_Lz_block(level.j, level.l);
  const auto sigma = angular_sigma_cross_block(level.j, level.l, level.l, sphere);
  const double e2 = c.alpha;
  const double e4 = c.alpha * c.alpha;
  for (std::size_t i = 0; i < lz.basis.size(); ++i) {
    ShiftEntry e;
    e.m = lz.basis[i];
    e.eigenvalue = lz.matrix(i, i).real();
    e.sigma_diagonal = sigma.matrix(i, i).real();
    e.coefficient_closed_form = -0.5 * e2 * r.rho1_closed_form * e.eigenvalue + 0.25 * e4 * r.rho2_closed_form * e.sigma_diagonal;
    e.coefficient_quadrature = -0.5 * e2 * r.rho1_quadrature * e.eigenvalue + 0.25 * e4 * r.rho2_quadrature * e.sigma_diagonal;
    e.shift_closed_form = e.coefficient_closed_form * theta;
    e.shift_quadrature = e.coefficient_quadrature * theta;
    if (e.coefficient_closed_form != 0.0) {
      e.bound_closed_form = theta_bound(std::abs(e.coefficient_closed_form), opt.accuracy_hz, c, opt.hz_convention);
    }
    if (e.coefficient_quadrature != 0.0) {
      e.bound_quadrature = theta_bound(std::abs(e.coefficient_quadrature), opt.accuracy_hz, c, opt.hz_convention);
    }
    r.entries.push_back(e);
  }
  return r;
}

// ---------------------------------------------------------------------------
// 2S1/2 -> 2P1/2 element of the magnetic-like term

struct TransitionElement {
  double theta = 0.0;
  double angular = 0.0;            ///< |Theta_{2S->2P}| per unit theta
  double rho_closed_form = 0.0;    ///< eV^3
  double rho_quadrature = 0.0;     ///< mixed finite-part integral, eV^3
  double element_closed_form = 0.0;  ///< (e^4/4) Theta rho theta, eV
  double element_quadrature = 0.0;
  /// Splitting between the two M sublevels, 2 * element.
  double splitting_closed_form = 0.0;
};

inline TransitionElement transition_element_2s2p(double theta, const PhysicalConstants& c = {},
                                                 int order = specfun::kDefaultLaguerreOrder,
                                                 const specfun::SphereRule& sphere = specfun::SphereRule{}) {
  if (!(theta >= 0.0)) throw DomainError("transition_element_2s2p: theta must be >= 0");
  TransitionElement t;
  t.theta = theta;
  const auto block = angular_sigma_cross_block(kHalf, 0, 1, sphere);
  t.angular = block.matrix.cwiseAbs().maxCoeff();
  t.rho_closed_form = rho_transition_closed_form(c);
  t.rho_quadrature = rho_transition_quadrature(c, order).value;
  const double e4 = c.alpha * c.alpha;
  t.element_closed_form = 0.25 * e4 * t.angular * t.rho_closed_form * theta;
  t.element_quadrature = 0.25 * e4 * t.angular * t.rho_quadrature * theta;
  t.splitting_closed_form = 2.0 * t.element_closed_form;
  return t;
}

}  // namespace ncdirac

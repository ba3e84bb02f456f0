#pragma once

/// \file dirac_hydrogen.hpp
/// Exact Dirac-Coulomb bound states of hydrogen (Z = 1) in natural units
/// (hbar = c = 1, energies in eV, lengths in eV^-1).
///
/// A state is labelled by the radial number n_r and kappa = -/+(j + 1/2):
/// kappa = -(l+1) for j = l + 1/2 and kappa = l for j = l - 1/2. The
/// energy only depends on n_r and |kappa|,
///
///   E = m (n_r + nu) / sqrt(alpha^2 + (n_r + nu)^2),  nu = sqrt(kappa^2 - alpha^2),
///
/// and the radial components are, with x = 2 m a r and a = sqrt(m^2 - E^2)/m,
///
///   f = C x^{nu-1} e^{-x/2} [f1 x L_{n_r-1}^{2nu+1}(x) + f2 L_{n_r}^{2nu-1}(x)]
///   g = C x^{nu-1} e^{-x/2} [g1 x L_{n_r-1}^{2nu+1}(x) + g2 L_{n_r}^{2nu-1}(x)]
///
/// with f1 = m a alpha / (E kappa - m nu), f2 = kappa - nu,
/// g1 = m a (kappa - nu) / (E kappa - m nu), g2 = alpha. C is fixed
/// numerically so that the integral of (f^2 + g^2) r^2 dr is one.

#include <array>
#include <cctype>
#include <cmath>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "ncdirac/errors.hpp"
#include "ncdirac/half_integer.hpp"
#include "ncdirac/specfun.hpp"

namespace ncdirac {

using Vec3 = std::array<double, 3>;

struct PhysicalConstants {
  double m_e = 510998.95;            ///< electron mass, eV
  double alpha = 7.2973525693e-3;    ///< fine-structure constant, e^2 = alpha
  double hbar_eV_s = 6.582119569e-16;
  double planck_eV_s = 4.135667696e-15;

  double charge() const { return std::sqrt(alpha); }

  void validate() const {
    if (!(alpha > 0.0 && alpha < 1.0)) throw ValidationError("alpha must lie in (0, 1)");
    if (!(m_e > 0.0)) throw ValidationError("electron mass must be positive");
    if (!(hbar_eV_s > 0.0) || !(planck_eV_s > 0.0)) throw ValidationError("hbar and h must be positive");
  }
};

/// Magnitude of the noncommutativity vector theta_i = theta delta_i3, eV^-2.
struct ThetaParam {
  double theta = 0.0;
};

/// Orbital number of a kappa, using kappa = l for j = l - 1/2 and
/// kappa = -(l + 1) for j = l + 1/2.
constexpr int orbital_of_kappa(int kappa) { return kappa > 0 ? kappa : -kappa - 1; }
constexpr HalfInteger total_j_of_kappa(int kappa) { return HalfInteger::from_twice(2 * (kappa > 0 ? kappa : -kappa) - 1); }

/// Apparent angular momentum sqrt(kappa^2 - alpha^2).
inline double dirac_nu(int kappa, const PhysicalConstants& c) {
  const double k2 = static_cast<double>(kappa) * kappa;
  if (!(c.alpha * c.alpha < k2)) throw ValidationError("alpha >= |kappa|: nu is not real");
  return std::sqrt(k2 - c.alpha * c.alpha);
}

/// Energy of the (n_r, kappa) level, including the rest mass.
inline double dirac_energy(int n_r, int kappa, const PhysicalConstants& c) {
  const double s = n_r + dirac_nu(kappa, c);
  return c.m_e * s / std::sqrt(c.alpha * c.alpha + s * s);
}

/// a = sqrt(m^2 - E^2)/m written as alpha / sqrt(alpha^2 + (n_r + nu)^2),
/// which avoids the cancellation in m^2 - E^2.
inline double dirac_a(int n_r, int kappa, const PhysicalConstants& c) {
  const double s = n_r + dirac_nu(kappa, c);
  return c.alpha / std::sqrt(c.alpha * c.alpha + s * s);
}

struct RelativisticState {
  int n_r = 0;
  int kappa = -1;
  HalfInteger j;
  int l = 0;
  HalfInteger m;
  double nu = 0.0;
  double energy = 0.0;
  double a = 0.0;  ///< sqrt(m^2 - E^2) / m
  PhysicalConstants constants;

  int principal() const { return n_r + std::abs(kappa); }
  /// Scale of the Laguerre variable: x = radial_scale() * r.
  double radial_scale() const { return 2.0 * constants.m_e * a; }
};

inline RelativisticState make_state(int n_r, int kappa, HalfInteger m, const PhysicalConstants& c = {}) {
  c.validate();
  if (kappa == 0) throw ValidationError("kappa must be nonzero");
  if (n_r < 0) throw ValidationError("radial quantum number must be >= 0");
  if (n_r == 0 && kappa > 0) {
    throw ValidationError("n_r = 0 with kappa > 0 is not a bound state of the Dirac-Coulomb problem");
  }
  RelativisticState s;
  s.n_r = n_r;
  s.kappa = kappa;
  s.j = total_j_of_kappa(kappa);
  s.l = orbital_of_kappa(kappa);
  if (!m.is_half_odd() || std::abs(m.twice()) > s.j.twice()) {
    throw ValidationError("|M| must be a half-odd integer not exceeding j = " + s.j.str());
  }
  s.m = m;
  s.nu = dirac_nu(kappa, c);
  s.energy = dirac_energy(n_r, kappa, c);
  s.a = dirac_a(n_r, kappa, c);
  s.constants = c;
  if (!(s.energy > 0.0 && s.energy < c.m_e)) throw ValidationError("energy outside (0, m)");
  return s;
}

inline double dirac_energy(const RelativisticState& s) { return dirac_energy(s.n_r, s.kappa, s.constants); }

// ---------------------------------------------------------------------------
// Spectroscopic labels

/// A (N, l, j) multiplet such as 2P3/2.
struct Level {
  int principal = 1;
  int l = 0;
  HalfInteger j = kHalf;
  int n_r = 0;
  int kappa = -1;

  std::string label() const {
    static constexpr std::string_view kLetters = "SPDFGHIK";
    return std::to_string(principal) + kLetters[static_cast<std::size_t>(l)] + j.str();
  }

  /// kappa in the sign convention of the reference closed-form radial
  /// integrals: positive for every l >= 1 multiplet, negative for S. It
  /// equals the physical kappa except for j = l + 1/2 with l >= 1.
  int reference_kappa() const {
    const int mag = (j.twice() + 1) / 2;
    return l >= 1 ? mag : -mag;
  }

  RelativisticState state(HalfInteger m, const PhysicalConstants& c = {}) const {
    return make_state(n_r, kappa, m, c);
  }

  /// M = -j, ..., j.
  std::vector<HalfInteger> projections() const {
    std::vector<HalfInteger> out;
    for (int t = -j.twice(); t <= j.twice(); t += 2) out.push_back(HalfInteger::from_twice(t));
    return out;
  }
};

inline Level make_level(int principal, int l, HalfInteger j) {
  if (principal < 1) throw ValidationError("principal quantum number must be >= 1");
  if (l < 0 || l >= principal) throw ValidationError("need 0 <= l < N");
  if (l > 7) throw ValidationError("orbital letters beyond K are not supported");
  if (j.twice() != 2 * l + 1 && j.twice() != 2 * l - 1) throw ValidationError("j must be l +/- 1/2");
  if (j.twice() < 1) throw ValidationError("j must be positive");
  Level lv;
  lv.principal = principal;
  lv.l = l;
  lv.j = j;
  lv.kappa = j.twice() == 2 * l + 1 ? -(l + 1) : l;
  lv.n_r = principal - std::abs(lv.kappa);
  if (lv.n_r < 0 || (lv.n_r == 0 && lv.kappa > 0)) throw ValidationError("no bound state for " + lv.label());
  return lv;
}

inline Level level_of_state(const RelativisticState& s) { return make_level(s.principal(), s.l, s.j); }

/// Parses "N L j" labels: an integer, one of S P D F G H I K, and a
/// half-odd j written as "1/2" (an optional '_' before j is accepted).
inline Level parse_level(std::string_view text) {
  static constexpr std::string_view kLetters = "SPDFGHIK";
  std::size_t pos = 0;
  int principal = 0;
  while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
    principal = principal * 10 + (text[pos] - '0');
    ++pos;
  }
  if (pos == 0 || pos >= text.size()) throw ParseError("level label '" + std::string(text) + "': expected N, letter, j");
  const char letter = static_cast<char>(std::toupper(static_cast<unsigned char>(text[pos])));
  const auto l = kLetters.find(letter);
  if (l == std::string_view::npos) throw ParseError("level label '" + std::string(text) + "': unknown orbital letter");
  ++pos;
  if (pos < text.size() && text[pos] == '_') ++pos;
  const auto slash = text.find('/', pos);
  if (slash == std::string_view::npos || slash + 2 != text.size() || text[slash + 1] != '2' || slash == pos) {
    throw ParseError("level label '" + std::string(text) + "': j must be written as k/2");
  }
  int twice_j = 0;
  for (std::size_t i = pos; i < slash; ++i) {
    if (!std::isdigit(static_cast<unsigned char>(text[i]))) throw ParseError("level label '" + std::string(text) + "': bad j");
    twice_j = twice_j * 10 + (text[i] - '0');
  }
  if (twice_j % 2 == 0) throw ParseError("level label '" + std::string(text) + "': j must be half-odd");
  try {
    return make_level(principal, static_cast<int>(l), HalfInteger::from_twice(twice_j));
  } catch (const ValidationError& e) {
    throw ValidationError("level label '" + std::string(text) + "': " + e.what());
  }
}

// ---------------------------------------------------------------------------
// Radial functions

struct RadialCoefficients {
  double f1 = 0.0, f2 = 0.0, g1 = 0.0, g2 = 0.0;
};

inline RadialCoefficients radial_coefficients(const RelativisticState& s) {
  const double m = s.constants.m_e;
  RadialCoefficients k;
  k.f2 = s.kappa - s.nu;
  k.g2 = s.constants.alpha;
  if (s.n_r > 0) {
    const double denom = s.energy * s.kappa - m * s.nu;
    k.f1 = m * s.a * s.constants.alpha / denom;
    k.g1 = m * s.a * (s.kappa - s.nu) / denom;
  }
  return k;
}

/// Polynomial brackets (p, q) of f and g at Laguerre variable x, i.e.
/// f = C x^{nu-1} e^{-x/2} p(x). The x L_{n_r-1} term is absent for n_r = 0.
inline std::pair<double, double> radial_brackets(const RelativisticState& s, const RadialCoefficients& k, double x) {
  const double upper = s.n_r > 0 ? x * specfun::laguerre_general(s.n_r - 1, 2.0 * s.nu + 1.0, x) : 0.0;
  const double lower = specfun::laguerre_general(s.n_r, 2.0 * s.nu - 1.0, x);
  return {k.f1 * upper + k.f2 * lower, k.g1 * upper + k.g2 * lower};
}

/// Returns C with C^2 * integral of (f~^2 + g~^2) r^2 dr = 1 for an arbitrary
/// radial pair r -> (f~, g~) whose small-r behaviour is r^{power}
/// (power > -3/2) and which decays like e^{-scale r / 2}.
template <class RadialPair>
double normalization_constant(RadialPair&& fg, double scale, double power, int order = specfun::kDefaultLaguerreOrder) {
  if (!(scale > 0.0)) throw DomainError("normalization_constant: scale must be positive");
  const double weight_exp = 2.0 * power + 2.0;
  const auto integrand = [&](double x) {
    const double r = x / scale;
    const auto [f, g] = fg(r);
    return (f * f + g * g) * std::exp(x - weight_exp * std::log(x)) * r * r / scale;
  };
  const auto res = specfun::integrate_laguerre_adaptive(integrand, weight_exp, order);
  return 1.0 / std::sqrt(res.value);
}

/// Normalization of the bracket form: integral of (f~^2 + g~^2) r^2 dr equals
/// scale^{-3} * integral of x^{2 nu} e^{-x} (p^2 + q^2) dx.
inline double normalization_constant(const RelativisticState& s, int order = specfun::kDefaultLaguerreOrder) {
  const auto k = radial_coefficients(s);
  const auto integrand = [&](double x) {
    const auto [p, q] = radial_brackets(s, k, x);
    return p * p + q * q;
  };
  const auto res = specfun::integrate_laguerre_adaptive(integrand, 2.0 * s.nu, order);
  const double scale = s.radial_scale();
  return std::sqrt(scale * scale * scale / res.value);
}

/// Normalized large and small radial components of one state.
class DiracOrbital {
 public:
  explicit DiracOrbital(const RelativisticState& s, int order = specfun::kDefaultLaguerreOrder)
      : state_(s), coeffs_(radial_coefficients(s)), norm_(normalization_constant(s, order)) {}

  const RelativisticState& state() const { return state_; }
  const RadialCoefficients& coefficients() const { return coeffs_; }
  double norm() const { return norm_; }

  std::pair<double, double> unnormalized(double r) const {
    if (!(r > 0.0)) throw DomainError("radial functions need r > 0");
    const double x = state_.radial_scale() * r;
    const auto [p, q] = radial_brackets(state_, coeffs_, x);
    const double envelope = std::exp((state_.nu - 1.0) * std::log(x) - 0.5 * x);
    return {envelope * p, envelope * q};
  }

  std::pair<double, double> operator()(double r) const {
    const auto [f, g] = unnormalized(r);
    return {norm_ * f, norm_ * g};
  }

 private:
  RelativisticState state_;
  RadialCoefficients coeffs_;
  double norm_;
};

inline std::pair<double, double> radial_fg(const RelativisticState& s, double r) { return DiracOrbital(s)(r); }

// ---------------------------------------------------------------------------
// Deformed Coulomb potential

/// theta^{mu nu} split into its time-space row theta^{0j} and the
/// antisymmetric space-space block theta^{ij}.
struct ThetaTensor {
  Vec3 time_space{0.0, 0.0, 0.0};
  std::array<Vec3, 3> space{};

  /// theta^{ij} = epsilon_{ijk} theta_k.
  static ThetaTensor from_vector(const Vec3& v) {
    ThetaTensor t;
    t.space[0] = {0.0, v[2], -v[1]};
    t.space[1] = {-v[2], 0.0, v[0]};
    t.space[2] = {v[1], -v[0], 0.0};
    return t;
  }
  static ThetaTensor along_z(ThetaParam p) { return from_vector({0.0, 0.0, p.theta}); }
};

struct DeformedPotential {
  double a0 = 0.0;
  Vec3 a{0.0, 0.0, 0.0};
};

/// First-order deformed Coulomb potential,
///   a0 = -e/r - e^3 theta^{0j} x_j / r^4,   a_i = e^3 theta^{ij} x_j / (4 r^4).
inline DeformedPotential deformed_potential(const Vec3& x, const ThetaTensor& theta, const PhysicalConstants& c = {}) {
  const double r = std::sqrt(x[0] * x[0] + x[1] * x[1] + x[2] * x[2]);
  if (!(r > 0.0)) throw SingularityError("deformed_potential: r = 0");
  const double e = c.charge();
  const double e3_r4 = e * e * e / (r * r * r * r);
  DeformedPotential out;
  double time_space = 0.0;
  for (int j = 0; j < 3; ++j) time_space += theta.time_space[j] * x[j];
  out.a0 = -e / r - e3_r4 * time_space;
  for (int i = 0; i < 3; ++i) {
    double s = 0.0;
    for (int j = 0; j < 3; ++j) s += theta.space[i][j] * x[j];
    out.a[i] = 0.25 * e3_r4 * s;
  }
  return out;
}

}  // namespace ncdirac

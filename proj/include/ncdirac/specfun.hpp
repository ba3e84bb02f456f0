#pragma once

/// \file specfun.hpp
/// Special functions and quadrature rules shared by the radial and angular
/// code: Gamma, generalized Laguerre polynomials of real order, spherical and
/// spinor spherical harmonics, Gauss-Laguerre and Gauss-Legendre rules.

#include <Eigen/Eigenvalues>

#include <array>
#include <cmath>
#include <complex>
#include <numbers>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

#include "ncdirac/errors.hpp"
#include "ncdirac/half_integer.hpp"

namespace ncdirac::specfun {

using complex = std::complex<double>;
using Spinor = std::array<complex, 2>;

inline double gamma_real(double x) {
  if (!(x > 0.0)) throw DomainError("gamma_real: argument must be positive, got " + std::to_string(x));
  return std::tgamma(x);
}

/// Generalized Laguerre polynomial L_n^a(x) by the forward three-term
/// recurrence (n+1) L_{n+1} = (2n+1+a-x) L_n - (n+a) L_{n-1}.
inline double laguerre_general(int n, double a, double x) {
  if (n < 0) throw DomainError("laguerre_general: negative degree");
  if (!(a > -1.0)) throw DomainError("laguerre_general: order must exceed -1");
  double prev = 1.0;
  if (n == 0) return prev;
  double cur = 1.0 + a - x;
  for (int k = 1; k < n; ++k) {
    const double next = ((2.0 * k + 1.0 + a - x) * cur - (k + a) * prev) / (k + 1.0);
    prev = cur;
    cur = next;
  }
  return cur;
}

/// Orthonormal Y_lm with the Condon-Shortley phase.
inline complex spherical_harmonic(int l, int m, double theta, double phi) {
  if (l < 0 || std::abs(m) > l) {
    throw DomainError("spherical_harmonic: need |m| <= l, got l=" + std::to_string(l) +
                      " m=" + std::to_string(m));
  }
  const int am = std::abs(m);
  // std::sph_legendre already carries (-1)^m.
  const double radial = std::sph_legendre(static_cast<unsigned>(l), static_cast<unsigned>(am), theta);
  const complex y = radial * std::polar(1.0, am * phi);
  if (m >= 0) return y;
  return (am % 2 == 0 ? 1.0 : -1.0) * std::conj(y);
}

/// Clebsch weights of the two components of Omega_{jlM}: the upper component
/// multiplies Y_{l,M-1/2}, the lower Y_{l,M+1/2}. For j = l + 1/2 they are
/// (sqrt((j+M)/2j), sqrt((j-M)/2j)); for j = l - 1/2 they are
/// (-sqrt((j-M+1)/(2j+2)), sqrt((j+M+1)/(2j+2))).
inline std::pair<double, double> spinor_coefficients(HalfInteger j, int l, HalfInteger m) {
  if (!j.is_half_odd() || j.twice() < 1 || !m.is_half_odd()) {
    throw DomainError("spinor_harmonic: j and M must be positive/any half-odd integers");
  }
  if (std::abs(m.twice()) > j.twice()) throw DomainError("spinor_harmonic: |M| > j");
  const double jv = j.value();
  const double mv = m.value();
  if (2 * l + 1 == j.twice()) {
    return {std::sqrt((jv + mv) / (2.0 * jv)), std::sqrt((jv - mv) / (2.0 * jv))};
  }
  if (2 * l - 1 == j.twice()) {
    return {-std::sqrt((jv - mv + 1.0) / (2.0 * jv + 2.0)), std::sqrt((jv + mv + 1.0) / (2.0 * jv + 2.0))};
  }
  throw DomainError("spinor_harmonic: l=" + std::to_string(l) + " is not j -/+ 1/2 for j=" + j.str());
}

inline Spinor spinor_harmonic(HalfInteger j, int l, HalfInteger m, double theta, double phi) {
  const auto [cu, cd] = spinor_coefficients(j, l, m);
  const int m_up = (m.twice() - 1) / 2;
  const int m_down = (m.twice() + 1) / 2;
  Spinor out{complex{0.0}, complex{0.0}};
  if (std::abs(m_up) <= l) out[0] = cu * spherical_harmonic(l, m_up, theta, phi);
  if (std::abs(m_down) <= l) out[1] = cd * spherical_harmonic(l, m_down, theta, phi);
  return out;
}

// ---------------------------------------------------------------------------
// Quadrature

enum class QuadratureKind { gauss_laguerre, gauss_legendre, adaptive };

struct QuadratureRule {
  std::vector<double> nodes;
  std::vector<double> weights;
  QuadratureKind kind = QuadratureKind::gauss_laguerre;
  /// Exponent of the x^alpha e^{-x} weight (Laguerre rules only).
  double alpha = 0.0;

  std::size_t size() const { return nodes.size(); }

  template <class F>
  auto integrate(F&& f) const {
    using R = std::decay_t<decltype(f(nodes.front()))>;
    R sum{};
    for (std::size_t i = 0; i < nodes.size(); ++i) sum += weights[i] * f(nodes[i]);
    return sum;
  }
};

/// Largest Laguerre order whose weights all stay representable in double.
inline constexpr int kMaxLaguerreOrder = 160;
inline constexpr int kDefaultLaguerreOrder = 80;

namespace detail {

/// L_{n-1}, L_n, L_{n+1} at x with a shared scale factor exp(log_scale).
struct ScaledLaguerre {
  double prev, cur, next, log_scale;
};

inline ScaledLaguerre laguerre_triplet(int n, double a, double x) {
  constexpr double kBig = 1e150;
  double log_scale = 0.0;
  double prev = 0.0;
  double cur = 1.0;
  for (int k = 0; k <= n; ++k) {
    const double next = ((2.0 * k + 1.0 + a - x) * cur - (k + a) * prev) / (k + 1.0);
    if (k == n) return {prev, cur, next, log_scale};
    prev = cur;
    cur = next;
    if (std::abs(cur) > kBig) {
      prev /= kBig;
      cur /= kBig;
      log_scale += std::log(kBig);
    }
  }
  return {prev, cur, 0.0, log_scale};
}

}  // namespace detail

/// Gauss-Laguerre rule for the weight x^alpha e^{-x} on [0, inf): exact for
/// polynomials of degree <= 2n-1. Nodes start from the eigenvalues of the
/// Jacobi matrix and are polished by Newton steps on L_n^alpha; weights use
/// Gamma(n+alpha+1) x / (n! (n+1)^2 L_{n+1}(x)^2) in log space.
inline QuadratureRule gauss_laguerre(int n, double alpha = 0.0) {
  if (n < 1) throw DomainError("gauss_laguerre: order must be >= 1");
  if (n > kMaxLaguerreOrder) throw DomainError("gauss_laguerre: order above " + std::to_string(kMaxLaguerreOrder));
  if (!(alpha > -1.0)) throw DomainError("gauss_laguerre: alpha must exceed -1");

  Eigen::VectorXd diag(n);
  Eigen::VectorXd sub(std::max(n - 1, 1));
  for (int i = 0; i < n; ++i) diag[i] = 2.0 * i + alpha + 1.0;
  for (int i = 1; i < n; ++i) sub[i - 1] = std::sqrt(i * (i + alpha));
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
  solver.computeFromTridiagonal(diag, sub.head(n - 1), Eigen::EigenvaluesOnly);

  QuadratureRule rule;
  rule.kind = QuadratureKind::gauss_laguerre;
  rule.alpha = alpha;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  const double log_norm = std::lgamma(n + alpha + 1.0) - std::lgamma(n + 1.0) - 2.0 * std::log(n + 1.0);
  for (int i = 0; i < n; ++i) {
    double x = solver.eigenvalues()[i];
    for (int iter = 0; iter < 4; ++iter) {
      const auto t = detail::laguerre_triplet(n, alpha, x);
      const double deriv = (n * t.cur - (n + alpha) * t.prev) / x;
      const double step = t.cur / deriv;
      x -= step;
      if (std::abs(step) <= 1e-16 * x) break;
    }
    const auto t = detail::laguerre_triplet(n, alpha, x);
    rule.nodes[i] = x;
    rule.weights[i] = std::exp(log_norm + std::log(x) - 2.0 * (std::log(std::abs(t.next)) + t.log_scale));
  }
  return rule;
}

/// Gauss-Legendre rule on [-1, 1].
inline QuadratureRule gauss_legendre(int n) {
  if (n < 1) throw DomainError("gauss_legendre: order must be >= 1");
  QuadratureRule rule;
  rule.kind = QuadratureKind::gauss_legendre;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  for (int i = 0; i < n; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double deriv = 1.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0;
      double p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      deriv = n * (x * p1 - p0) / (x * x - 1.0);
      const double step = p1 / deriv;
      x -= step;
      if (std::abs(step) < 1e-16) break;
    }
    rule.nodes[n - 1 - i] = x;
    rule.weights[n - 1 - i] = 2.0 / ((1.0 - x * x) * deriv * deriv);
  }
  return rule;
}

struct AdaptiveResult {
  double value = 0.0;
  int order = 0;
  /// Relative change between the last two orders.
  double self_error = 0.0;
};

/// Integrates x^alpha e^{-x} f(x) over [0, inf), doubling the order from
/// `start_order` until two successive results agree to `rtol`.
template <class F>
AdaptiveResult integrate_laguerre_adaptive(F&& f, double alpha, int start_order = kDefaultLaguerreOrder,
                                           double rtol = 1e-10, int max_order = kMaxLaguerreOrder) {
  int order = std::min(start_order, max_order);
  if (2 * order > max_order) order = std::max(1, order / 2);
  double previous = gauss_laguerre(order, alpha).integrate(f);
  while (2 * order <= max_order) {
    order *= 2;
    const double current = gauss_laguerre(order, alpha).integrate(f);
    const double scale = std::max(std::abs(current), std::abs(previous));
    const double rel = scale == 0.0 ? 0.0 : std::abs(current - previous) / scale;
    if (rel <= rtol) return {current, order, rel};
    previous = current;
  }
  throw RefinementError("integrate_laguerre_adaptive: no agreement to " + std::to_string(rtol) +
                        " up to order " + std::to_string(max_order));
}

/// Product rule on the unit sphere: Gauss-Legendre in cos(theta) times the
/// trapezoid rule in phi. Exact for band-limited integrands.
class SphereRule {
 public:
  explicit SphereRule(int n_theta = 64, int n_phi = 128) : legendre_(gauss_legendre(n_theta)), n_phi_(n_phi) {
    if (n_phi < 1) throw DomainError("SphereRule: need at least one phi node");
  }

  template <class F>
  auto integrate(F&& f) const {
    using R = std::decay_t<decltype(f(0.0, 0.0))>;
    R sum{};
    const double dphi = 2.0 * std::numbers::pi / n_phi_;
    for (std::size_t i = 0; i < legendre_.size(); ++i) {
      const double theta = std::acos(legendre_.nodes[i]);
      R ring{};
      for (int k = 0; k < n_phi_; ++k) ring += f(theta, k * dphi);
      sum += (legendre_.weights[i] * dphi) * ring;
    }
    return sum;
  }

 private:
  QuadratureRule legendre_;
  int n_phi_;
};

/// -i d/dphi applied to a spinor-valued function of (theta, phi), by a
/// fourth-order central difference.
template <class F>
Spinor apply_lz(F&& psi, double theta, double phi, double h = 1e-3) {
  const Spinor p2 = psi(theta, phi + 2 * h);
  const Spinor p1 = psi(theta, phi + h);
  const Spinor m1 = psi(theta, phi - h);
  const Spinor m2 = psi(theta, phi - 2 * h);
  Spinor out;
  for (int c = 0; c < 2; ++c) {
    const complex d = (-p2[c] + 8.0 * p1[c] - 8.0 * m1[c] + m2[c]) / (12.0 * h);
    out[c] = complex(0.0, -1.0) * d;
  }
  return out;
}

}  // namespace ncdirac::specfun

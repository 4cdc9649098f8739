#pragma once

// Closed-form spectra of the one-dimensional sector blocks.
//
// All formulas are written for unit ladder entries. A block with ladder entry
// c (c = scale in d=1, sqrt(2) scale in d=2) satisfies
//   H(c; m, gamma) = c * H(1; m/c, gamma/c),
// so every closed form is evaluated at reduced parameters and scaled back.

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "dirosc/algebra.hpp"
#include "dirosc/eigensolver.hpp"
#include "dirosc/params.hpp"
#include "dirosc/sectors.hpp"

namespace dirosc {

inline constexpr double kDegeneracyTol = 1e-9;
inline constexpr double kRadicalImagTol = 1e-9;

/// Resolvent-cubic quantities of the depressed quartic E^4 + c2 E^2 + c1 E + c0.
struct QuarticIntermediates {
  double p = 0.0;
  double q = 0.0;
  double r = 0.0;
  std::complex<double> s{};

  double s_real() const { return s.real(); }
};

/// Depressed characteristic polynomial E^4 + c2 E^2 + c1 E + c0 of a block.
struct QuarticCoefficients {
  double c2 = 0.0;
  double c1 = 0.0;
  double c0 = 0.0;
};

namespace detail {

inline double block_scale(const ModelParams& p) {
  if (p.dimension == 3) throw DimensionMismatch("closed forms cover the d=1 and d=2 blocks only");
  return ladder_element(p);
}

inline ModelParams reduced(const ModelParams& p, double c) {
  ModelParams r = p;
  r.m = p.m / c;
  r.gamma = p.gamma / c;
  return r;
}

inline void require_case(bool ok, const char* what) {
  if (!ok) throw InvalidParameter(what);
}

inline EigenSystem labelled(const std::array<double, 4>& branches) {
  EigenSystem es;
  es.values = Eigen::Map<const Eigen::Vector4d>(branches.data());
  es.vectors.resize(0, 0);
  std::vector<int> order{0, 1, 2, 3};
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return branches[a] < branches[b]; });
  es.branch_map.assign(4, 0);
  for (int pos = 0; pos < 4; ++pos) {
    es.values(pos) = branches[static_cast<std::size_t>(order[static_cast<std::size_t>(pos)])];
    es.branch_map[static_cast<std::size_t>(order[static_cast<std::size_t>(pos)])] = pos;
  }
  return es;
}

inline double nonneg_root(double x, double scale, const char* where) {
  if (x >= 0.0) return std::sqrt(x);
  if (x > -1e-9 * std::max(1.0, scale)) return 0.0;
  throw DegenerateRadical(std::string(where) + ": negative radicand " + std::to_string(x));
}

}  // namespace detail

/// Characteristic coefficients of the A=0, B=1 block at unit ladder entries.
inline QuarticCoefficients gauge_coefficients(int n, double m, double alpha, double gamma) {
  const double a2 = alpha * alpha;
  QuarticCoefficients c;
  c.c2 = -((2.0 * n + 3.0) * (1.0 + a2) + 2.0 * gamma * gamma + 2.0 * m * m);
  c.c1 = 2.0 * (a2 * m + gamma);
  c.c0 = ((n + 2.0) * (1.0 - a2) + m * m - gamma * gamma) * ((n + 1.0) * (1.0 - a2) + m * m - gamma * gamma);
  return c;
}

/// Characteristic coefficients of the A=1, B=0 block at unit ladder entries.
inline QuarticCoefficients yukawa_coefficients(int n, double m, double alpha, double gamma) {
  const double a2 = alpha * alpha;
  const double a4 = a2 * a2;
  const double g2 = gamma * gamma;
  const double m2 = m * m;
  const double nn = n;
  QuarticCoefficients c;
  c.c2 = -((2.0 * nn + 3.0) * (1.0 + a2) + 2.0 * g2 + 2.0 * m2);
  c.c1 = 2.0 * a2 * m;
  c.c0 = a4 * nn * nn + 3.0 * a4 * nn + 2.0 * a4 + 2.0 * a2 * g2 * nn + 3.0 * a2 * g2 - 2.0 * a2 * m2 * nn -
         3.0 * a2 * m2 + 2.0 * a2 * nn * nn + 6.0 * a2 * nn + 4.0 * a2 + g2 * g2 - 2.0 * g2 * m2 + 2.0 * g2 * nn +
         3.0 * g2 + 2.0 * gamma * m + m2 * m2 + 2.0 * m2 * nn + 3.0 * m2 + nn * nn + 3.0 * nn + 2.0;
  return c;
}

/// s = q/(3C) + C/3 with C = ((r + sqrt(r^2 - 4q^3))/2)^(1/3). A negative
/// discriminant is routed through complex arithmetic; the result must be real.
inline std::complex<double> resolvent_s(double q, double r) {
  using cd = std::complex<double>;
  const double disc = r * r - 4.0 * q * q * q;
  cd c;
  if (disc >= 0.0) {
    const double root = std::sqrt(disc);
    // Pick the sign that avoids cancellation; both give the same s.
    const double big = r >= 0.0 ? 0.5 * (r + root) : 0.5 * (r - root);
    c = std::cbrt(big);
  } else {
    c = std::pow(cd(0.5 * r, 0.5 * std::sqrt(-disc)), 1.0 / 3.0);
  }
  if (std::abs(c) == 0.0) {
    if (q == 0.0) return 0.0;
    throw DegenerateRadical("resolvent_s: vanishing cube root with q != 0");
  }
  return q / (3.0 * c) + c / 3.0;
}

inline QuarticIntermediates intermediates_from(const QuarticCoefficients& c) {
  QuarticIntermediates out;
  out.p = -2.0 * c.c2 / 3.0;
  out.q = c.c2 * c.c2 + 12.0 * c.c0;
  out.r = 2.0 * c.c2 * c.c2 * c.c2 + 27.0 * c.c1 * c.c1 - 72.0 * c.c2 * c.c0;
  out.s = resolvent_s(out.q, out.r);
  if (std::abs(out.s.imag()) >= kRadicalImagTol) throw DegenerateRadical("quartic: resolvent root is not real");
  return out;
}

/// p, q, r, s for the A=0, B=1 block, written in closed form (unit ladder
/// entries; m and gamma are taken as given). The n-coefficient of p is 2n+3.
inline QuarticIntermediates gauge_intermediates(int n, double m, double alpha, double gamma) {
  const double a2 = alpha * alpha;
  const double a4 = a2 * a2;
  const double g2 = gamma * gamma;
  const double m2 = m * m;
  const double n2 = n + 2.0;
  QuarticIntermediates out;
  out.p = 2.0 / 3.0 * ((2.0 * n + 3.0) * (1.0 + a2) + 2.0 * g2 + 2.0 * m2);
  out.q = 16.0 * m2 * (m2 - (1.0 + g2)) + (1.0 + 4.0 * g2) * (1.0 + 4.0 * g2) + 2.0 * (1.0 + 4.0 * m2 - 8.0 * g2) * a2 +
          a4 - 16.0 * (1.0 + m2 * (a2 - 2.0) + g2 - a2 * (1.0 + 2.0 * g2) + a4) * n2 +
          16.0 * (1.0 - a2 + a4) * n2 * n2;
  const double k = m * a2 + gamma;
  out.r = 108.0 * ((n2 * (1.0 - a2) + m2 - g2) * ((n + 1.0) * (1.0 - a2) + m2 - g2) * out.p -
                   out.p * out.p * out.p / 16.0 + k * k);
  out.s = resolvent_s(out.q, out.r);
  if (std::abs(out.s.imag()) >= kRadicalImagTol) throw DegenerateRadical("quartic: resolvent root is not real");
  return out;
}

/// Quartic intermediates of block n; requires (A, B) = (0, 1) or (1, 0).
/// Returned at unit ladder entries (reduced m, gamma).
inline QuarticIntermediates quartic_intermediates(int n, const ModelParams& p) {
  const double c = detail::block_scale(p);
  const auto r = detail::reduced(p, c);
  if (p.A == 0.0 && p.B == 1.0) return gauge_intermediates(n, r.m, r.alpha, r.gamma);
  if (p.A == 1.0 && p.B == 0.0) return intermediates_from(yukawa_coefficients(n, r.m, r.alpha, r.gamma));
  throw InvalidParameter("quartic_intermediates: requires A=0,B=1 or A=1,B=0");
}

/// E_{1,2} = sqrt(p+s)/2 +- (1/2) sqrt(2p - s - 4k/sqrt(p+s)),
/// E_{3,4} = -sqrt(p+s)/2 +- (1/2) sqrt(2p - s + 4k/sqrt(p+s)),
/// with the minus sign first (E1 < E2, E3 < E4). k is half the linear
/// coefficient of the characteristic polynomial (m alpha^2 + gamma for A=0, B=1).
inline std::array<double, 4> quartic_branches(const QuarticIntermediates& qi, double k) {
  const double s = qi.s.real();
  const double ps = qi.p + s;
  const double scale = std::max({1.0, std::abs(qi.p), std::abs(s)});
  if (ps <= 1e-12 * scale) throw DegenerateRadical("quartic: p + s vanishes");
  const double root = std::sqrt(ps);
  const double lead = 4.0 * k / root;
  const double d12 = detail::nonneg_root(2.0 * qi.p - s - lead, scale, "quartic E1,2");
  const double d34 = detail::nonneg_root(2.0 * qi.p - s + lead, scale, "quartic E3,4");
  return {0.5 * root - 0.5 * d12, 0.5 * root + 0.5 * d12, -0.5 * root - 0.5 * d34, -0.5 * root + 0.5 * d34};
}

/// Closed-form eigenvalues of the A=0, B=1 block (values and branch labels).
inline EigenSystem eigenvalues_gauge(int n, const ModelParams& p) {
  detail::require_case(p.A == 0.0 && p.B == 1.0, "eigenvalues_gauge: requires A=0, B=1");
  const double c = detail::block_scale(p);
  const auto r = detail::reduced(p, c);
  const auto qi = gauge_intermediates(n, r.m, r.alpha, r.gamma);
  auto e = quartic_branches(qi, r.m * r.alpha * r.alpha + r.gamma);
  for (auto& x : e) x *= c;
  return detail::labelled(e);
}

/// Same route for A=1, B=0 with that block's own characteristic coefficients.
inline EigenSystem eigenvalues_yukawa(int n, const ModelParams& p) {
  detail::require_case(p.A == 1.0 && p.B == 0.0, "eigenvalues_yukawa: requires A=1, B=0");
  const double c = detail::block_scale(p);
  const auto r = detail::reduced(p, c);
  const auto coeff = yukawa_coefficients(n, r.m, r.alpha, r.gamma);
  auto e = quartic_branches(intermediates_from(coeff), 0.5 * coeff.c1);
  for (auto& x : e) x *= c;
  return detail::labelled(e);
}

namespace detail {

inline Eigen::MatrixXd sector_block(int n, const ModelParams& p) {
  return p.dimension == 2 ? block_2d(n, p).entries : block_1d(n, p).entries;
}

// Replace vectors by Jacobi's when two eigenvalues (nearly) coincide or the
// closed-form vector collapses; vectors stay matched to `es.values`.
inline bool degenerate(const Eigen::VectorXd& values) {
  for (Eigen::Index i = 1; i < values.size(); ++i)
    if (values(i) - values(i - 1) < kDegeneracyTol) return true;
  return false;
}

inline void use_jacobi_vectors(EigenSystem& es, const Eigen::MatrixXd& h) {
  const auto j = jacobi_eigensolver(h);
  es.vectors = j.vectors;
  es.fallback = true;
}

}  // namespace detail

/// Eigenvectors of the A=0, B=1 block from the component polynomials
///   V1 = alpha sqrt(n+2) ((n+1)(1-alpha^2) + (m-E)^2 - gamma^2)
///   V2 = (m+gamma)((n+2)(1-alpha^2) + alpha^2 + m^2 - gamma^2)
///        - ((n+2)(1+alpha^2) - alpha^2 + (m+gamma)^2) E + (gamma-m) E^2 + E^3
///   V3 = alpha ((2n+3) E - m - gamma)
///   V4 = sqrt(n+1) ((n+2)(alpha^2-1) + (gamma+E)^2 - m^2)
/// normalized, in ascending eigenvalue order.
inline EigenSystem eigenvectors_gauge(int n, const ModelParams& p, const EigenSystem& values) {
  detail::require_case(p.A == 0.0 && p.B == 1.0, "eigenvectors_gauge: requires A=0, B=1");
  const double c = detail::block_scale(p);
  const auto r = detail::reduced(p, c);
  const double m = r.m, g = r.gamma, a = r.alpha, a2 = a * a;
  const double s2 = std::sqrt(n + 2.0), s1 = std::sqrt(n + 1.0);

  EigenSystem es = values;
  es.vectors = Eigen::MatrixXd::Zero(4, values.values.size());
  const Eigen::MatrixXd h = detail::sector_block(n, p);
  if (detail::degenerate(values.values)) {
    detail::use_jacobi_vectors(es, h);
    return es;
  }
  for (Eigen::Index i = 0; i < values.values.size(); ++i) {
    const double e = values.values(i) / c;
    Eigen::Vector4d v;
    v(0) = a * s2 * ((n + 1.0) * (1.0 - a2) + (m - e) * (m - e) - g * g);
    v(1) = (m + g) * ((n + 2.0) * (1.0 - a2) + a2 + m * m - g * g) -
           ((n + 2.0) * (1.0 + a2) - a2 + (m + g) * (m + g)) * e + (g - m) * e * e + e * e * e;
    v(2) = a * ((2.0 * n + 3.0) * e - m - g);
    v(3) = s1 * ((n + 2.0) * (a2 - 1.0) + (g + e) * (g + e) - m * m);
    const double size = std::max({1.0, std::abs(e), s2, std::abs(m), std::abs(g), a});
    if (v.norm() < 1e-7 * size * size * size) {
      detail::use_jacobi_vectors(es, h);
      return es;
    }
    es.vectors.col(i) = v.normalized();
  }
  return es;
}

/// alpha = 0: E1,2 = -B gamma -+ sqrt(c^2(n+2) + (m - A gamma)^2),
///            E3,4 =  B gamma -+ sqrt(c^2(n+1) + (m + A gamma)^2).
inline EigenSystem eigenvalues_alpha0(int n, const ModelParams& p) {
  detail::require_case(p.alpha == 0.0, "eigenvalues_alpha0: requires alpha=0");
  const double c = detail::block_scale(p);
  const double x = std::sqrt(c * c * (n + 2.0) + (p.m - p.A * p.gamma) * (p.m - p.A * p.gamma));
  const double y = std::sqrt(c * c * (n + 1.0) + (p.m + p.A * p.gamma) * (p.m + p.A * p.gamma));
  const double bg = p.B * p.gamma;
  return detail::labelled({-bg - x, -bg + x, bg - y, bg + y});
}

/// alpha = 0 eigenvectors, rows (per branch)
///   ((E + (A+B)gamma - m)/(c sqrt(n+2)), 0, 1, 0)  for E1, E2
///   (0, (E - (A+B)gamma - m)/(c sqrt(n+1)), 0, 1)  for E3, E4
/// normalized and returned as columns in ascending eigenvalue order.
inline EigenSystem eigenvectors_alpha0(int n, const ModelParams& p) {
  EigenSystem es = eigenvalues_alpha0(n, p);
  const double c = detail::block_scale(p);
  const double ab = (p.A + p.B) * p.gamma;
  es.vectors = Eigen::MatrixXd::Zero(4, 4);
  if (detail::degenerate(es.values)) {
    detail::use_jacobi_vectors(es, detail::sector_block(n, p));
    return es;
  }
  for (int b = 0; b < 4; ++b) {
    const int col = es.branch_map[static_cast<std::size_t>(b)];
    const double e = es.values(col);
    Eigen::Vector4d v = Eigen::Vector4d::Zero();
    if (b < 2) {
      v(0) = (e + ab - p.m) / (c * std::sqrt(n + 2.0));
      v(2) = 1.0;
    } else {
      v(1) = (e - ab - p.m) / (c * std::sqrt(n + 1.0));
      v(3) = 1.0;
    }
    es.vectors.col(col) = v.normalized();
  }
  return es;
}

/// m = gamma = 0 (unit entries): a(n) as printed and
/// b(n) = (2n+3)(1 + (A^2+B^2) alpha^2) - 2 A B alpha^2.
inline std::pair<double, double> massless_ab(int n, double A, double B, double alpha) {
  const double a2 = alpha * alpha;
  const double n2 = n + 2.0;
  const double inner = 16.0 * B * B * a2 * (A * A * a2 + 1.0) * n2 * n2 -
                       8.0 * B * a2 * (A * (A + B) * (A + B) * a2 + A + 2.0 * B) * n2 +
                       (1.0 + (A + B) * (A + B) * a2) * (1.0 + (A + B) * (A + B) * a2);
  if (inner < -1e-12) throw FormulaViolation("massless: negative radicand in a(n)");
  const double a = std::sqrt(std::max(0.0, inner));
  const double b = (2.0 * n + 3.0) * (1.0 + (A * A + B * B) * a2) - 2.0 * A * B * a2;
  return {a, b};
}

/// E = +-sqrt((b +- a)/2), labelled E1 = -sqrt((b+a)/2), E2 = -sqrt((b-a)/2),
/// E3 = sqrt((b-a)/2), E4 = sqrt((b+a)/2).
inline EigenSystem eigenvalues_massless(int n, const ModelParams& p) {
  detail::require_case(p.m == 0.0 && p.gamma == 0.0, "eigenvalues_massless: requires m=gamma=0");
  const double c = detail::block_scale(p);
  const auto [a, b] = massless_ab(n, p.A, p.B, p.alpha);
  if (b - a < -1e-12) throw FormulaViolation("massless: b(n) - a(n) < 0");
  const double lo = std::sqrt(std::max(0.0, 0.5 * (b - a)));
  const double hi = std::sqrt(0.5 * (b + a));
  return detail::labelled({-c * hi, -c * lo, c * lo, c * hi});
}

/// Roots of the triplet block's characteristic cubic by the trigonometric
/// method for symmetric 3x3 matrices, ascending.
inline std::array<double, 3> symmetric_cubic_roots(const Eigen::Matrix3d& a) {
  const double p1 = a(0, 1) * a(0, 1) + a(0, 2) * a(0, 2) + a(1, 2) * a(1, 2);
  const double q = a.trace() / 3.0;
  std::array<double, 3> e{};
  const double d0 = a(0, 0) - q, d1 = a(1, 1) - q, d2 = a(2, 2) - q;
  const double p2 = d0 * d0 + d1 * d1 + d2 * d2 + 2.0 * p1;
  if (p2 == 0.0) return {q, q, q};
  const double pp = std::sqrt(p2 / 6.0);
  const Eigen::Matrix3d b = (a - q * Eigen::Matrix3d::Identity()) / pp;
  const double r = std::clamp(0.5 * b.determinant(), -1.0, 1.0);
  const double phi = std::acos(r) / 3.0;
  e[2] = q + 2.0 * pp * std::cos(phi);
  e[0] = q + 2.0 * pp * std::cos(phi + 2.0 * std::numbers::pi / 3.0);
  e[1] = 3.0 * q - e[0] - e[2];
  return e;
}

inline std::array<double, 3> cubic_triplet_eigenvalues(const ModelParams& p) {
  require_dimension(p, 1, "cubic_triplet_eigenvalues");
  return symmetric_cubic_roots(block_triplet(p).entries);
}

enum class ClosedCase { none, alpha0, massless, gauge, yukawa };

inline const char* to_string(ClosedCase c) {
  switch (c) {
    case ClosedCase::alpha0: return "alpha0";
    case ClosedCase::massless: return "massless";
    case ClosedCase::gauge: return "gauge";
    case ClosedCase::yukawa: return "yukawa";
    default: return "none";
  }
}

/// Most specific closed form that applies to the generic block, if any.
inline ClosedCase closed_case(const ModelParams& p) {
  if (p.dimension == 3) return ClosedCase::none;
  if (p.alpha == 0.0) return ClosedCase::alpha0;
  if (p.m == 0.0 && p.gamma == 0.0) return ClosedCase::massless;
  if (p.A == 0.0 && p.B == 1.0) return ClosedCase::gauge;
  if (p.A == 1.0 && p.B == 0.0) return ClosedCase::yukawa;
  return ClosedCase::none;
}

inline std::optional<EigenSystem> closed_form_spectrum(int n, const ModelParams& p) {
  switch (closed_case(p)) {
    case ClosedCase::alpha0: return eigenvalues_alpha0(n, p);
    case ClosedCase::massless: return eigenvalues_massless(n, p);
    case ClosedCase::gauge: return eigenvalues_gauge(n, p);
    case ClosedCase::yukawa: return eigenvalues_yukawa(n, p);
    default: return std::nullopt;
  }
}

}  // namespace dirosc

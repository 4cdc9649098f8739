#include <catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "dirosc/eigensolver.hpp"
#include "dirosc/sectors.hpp"
#include "dirosc/spectra.hpp"

using namespace dirosc;
using Catch::Matchers::WithinAbs;

namespace {

ModelParams d1(double m, double A, double B, double alpha, double gamma) {
  ModelParams p = ModelParams::for_dimension(1);
  p.m = m;
  p.A = A;
  p.B = B;
  p.alpha = alpha;
  p.gamma = gamma;
  return p;
}

double dev(const EigenSystem& a, const EigenSystem& b) { return (a.values - b.values).cwiseAbs().maxCoeff(); }

}  // namespace

TEST_CASE("case dispatch order") {
  CHECK(closed_case(d1(1.0, 0.3, 0.5, 0.0, 1.0)) == ClosedCase::alpha0);
  CHECK(closed_case(d1(0.0, 0.3, 0.5, 1.0, 0.0)) == ClosedCase::massless);
  CHECK(closed_case(d1(1.0, 0.0, 1.0, 1.2, 0.5)) == ClosedCase::gauge);
  CHECK(closed_case(d1(1.0, 1.0, 0.0, 1.2, 0.5)) == ClosedCase::yukawa);
  CHECK(closed_case(d1(1.0, 0.4, 0.5, 1.2, 0.5)) == ClosedCase::none);
  CHECK_FALSE(closed_form_spectrum(2, d1(1.0, 0.4, 0.5, 1.2, 0.5)).has_value());
}

TEST_CASE("gauge quartic matches Jacobi at the study point") {
  for (double gamma : {0.0, 1.0, 3.2, 6.4})
    for (int n = 0; n <= 10; ++n) {
      const auto p = d1(3.2, 0.0, 1.0, 1.2, gamma);
      CHECK(dev(eigenvalues_gauge(n, p), jacobi_eigensolver(block_1d(n, p).entries)) < 1e-10);
    }
}

TEST_CASE("gauge coefficients reproduce the characteristic polynomial") {
  const int n = 3;
  const auto p = d1(1.4, 0.0, 1.0, 0.7, 2.2);
  const auto c = gauge_coefficients(n, p.m, p.alpha, p.gamma);
  const Eigen::MatrixXd h = block_1d(n, p).entries;
  for (double e : {-2.5, -0.3, 0.8, 4.1}) {
    const double det = (h - e * Eigen::MatrixXd::Identity(4, 4)).determinant();
    CHECK_THAT(e * e * e * e + c.c2 * e * e + c.c1 * e + c.c0, WithinAbs(det, 1e-9 * std::max(1.0, std::abs(det))));
  }
}

TEST_CASE("yukawa quartic matches Jacobi") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 500; ++i) {
    const int n = static_cast<int>(rng() % 30);
    const auto p = d1(5.0 * u(rng), 1.0, 0.0, 3.0 * u(rng), 5.0 * u(rng));
    CHECK(dev(eigenvalues_yukawa(n, p), jacobi_eigensolver(block_1d(n, p).entries)) < 1e-8);
  }
}

TEST_CASE("eigenvectors from the quartic case") {
  const auto p = d1(2.0, 0.0, 1.0, 1.1, 0.9);
  for (int n = 0; n <= 8; ++n) {
    const auto es = eigenvectors_gauge(n, p, eigenvalues_gauge(n, p));
    CHECK(max_relative_residual(block_1d(n, p).entries, es) < 1e-10);
    CHECK(orthonormality_error(es) < 1e-10);
  }
}

TEST_CASE("alpha=0 and massless forms") {
  const auto pa = d1(1.3, 0.4, -1.1, 0.0, 2.0);
  const auto pm = d1(0.0, 0.4, -1.1, 1.6, 0.0);
  for (int n = 0; n <= 10; ++n) {
    CHECK(dev(eigenvalues_alpha0(n, pa), jacobi_eigensolver(block_1d(n, pa).entries)) < 1e-12);
    CHECK(max_relative_residual(block_1d(n, pa).entries, eigenvectors_alpha0(n, pa)) < 1e-12);
    CHECK(dev(eigenvalues_massless(n, pm), jacobi_eigensolver(block_1d(n, pm).entries)) < 1e-12);
  }
  const auto hand = eigenvalues_massless(0, d1(0.0, 0.0, 1.0, 1.0, 0.0));
  CHECK_THAT(hand.values(0), WithinAbs(-std::sqrt(6.0), 1e-14));
  CHECK_THAT(hand.values(3), WithinAbs(std::sqrt(6.0), 1e-14));
}

TEST_CASE("closed forms honour the ladder convention") {
  ModelParams p = d1(3.2, 0.0, 1.0, 1.2, 2.0);
  p.convention = LadderConvention::doubled();
  for (int n = 0; n <= 5; ++n) CHECK(dev(*closed_form_spectrum(n, p), jacobi_eigensolver(block_1d(n, p).entries)) < 1e-10);
}

TEST_CASE("triplet cubic roots") {
  const auto p = d1(1.7, 0.3, 0.9, 1.4, 0.6);
  const auto roots = cubic_triplet_eigenvalues(p);
  const auto es = jacobi_eigensolver(block_triplet(p).entries);
  for (int i = 0; i < 3; ++i) CHECK_THAT(roots[static_cast<std::size_t>(i)], WithinAbs(es.values(i), 1e-12));
}

TEST_CASE("wrong case or dimension is rejected") {
  CHECK_THROWS(eigenvalues_gauge(0, d1(1.0, 0.5, 1.0, 1.0, 1.0)));
  ModelParams p3 = ModelParams::for_dimension(3);
  CHECK_FALSE(closed_form_spectrum(0, p3).has_value());
}

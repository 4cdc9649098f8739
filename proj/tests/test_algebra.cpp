#include <catch_amalgamated.hpp>

#include <cmath>

#include "dirosc/algebra.hpp"
#include "dirosc/eigensolver.hpp"

using namespace dirosc;
using Catch::Matchers::WithinAbs;

namespace {

ModelParams generic(int d) {
  ModelParams p = ModelParams::for_dimension(d);
  p.m = 1.3;
  p.A = 0.4;
  p.B = -0.7;
  p.alpha = 0.9;
  p.gamma = 0.6;
  return p;
}

}  // namespace

TEST_CASE("ladder matrix has scale*sqrt(n) on the subdiagonal of a^dagger") {
  const auto a = ladder_matrix(5, LadderConvention::unit());
  const auto ad = ladder_matrix(5, LadderConvention::unit(), true);
  REQUIRE(a.rows() == 6);
  CHECK_THAT(a(2, 3), WithinAbs(std::sqrt(3.0), 1e-15));
  CHECK((ad - a.transpose()).norm() == 0.0);
  const auto a2 = ladder_matrix(5, LadderConvention::doubled());
  CHECK_THAT(a2(0, 1), WithinAbs(std::sqrt(2.0), 1e-15));
  // [a, a^dagger] = 1 away from the truncation edge
  const Eigen::MatrixXd c = a * ad - ad * a;
  for (int i = 0; i < 5; ++i) CHECK_THAT(c(i, i), WithinAbs(1.0, 1e-14));
}

TEST_CASE("product basis sizes and index round trip") {
  for (int d = 1; d <= 3; ++d) {
    ProductBasis b(d, 4);
    CHECK(b.internal_count() == (d == 3 ? 8u : 4u));
    for (std::size_t i = 0; i < b.size(); ++i) REQUIRE(b.index_of(b.label(i)) == i);
  }
  CHECK(ProductBasis(1, 4).size() == 20);
  CHECK(ProductBasis(2, 4).size() == 100);
  CHECK(ProductBasis(3, 4).orbital_count() == 35);
  CHECK(ProductBasis(1, 4).index_of(label_1d(5, 1, 1)) == std::nullopt);
  CHECK_THROWS_AS(ProductBasis(4, 3), InvalidParameter);
  CHECK_THROWS_AS(ProductBasis(1, 0), InvalidTruncation);
}

TEST_CASE("isospin is the fastest product index") {
  ProductBasis b(1, 3);
  CHECK(b.label(0).iso == +1);
  CHECK(b.label(1).iso == -1);
  CHECK(b.label(2).star == -1);
  CHECK(b.label(4).quanta[0] == 1);
}

TEST_CASE("full Hamiltonians are Hermitian") {
  for (int d = 1; d <= 3; ++d) {
    const auto h = build_full_hamiltonian(generic(d), d == 3 ? 4 : 6);
    CHECK(hermiticity_error(h) < 1e-14);
  }
  CHECK_THROWS_AS(build_full_hamiltonian(generic(1), 1), InvalidTruncation);
}

TEST_CASE("invariants commute with H on the interior") {
  for (int d = 1; d <= 3; ++d) {
    const auto p = generic(d);
    auto basis = std::make_shared<const ProductBasis>(d, d == 3 ? 5 : 8);
    const auto h = build_full_hamiltonian(p, basis);
    const auto mask = basis->interior_indices();
    CHECK(commutator_norm(h, build_invariant(p, basis), mask) < 1e-12);
    if (d >= 2) CHECK(commutator_norm(h, build_invariant(p, basis, InvariantKind::angular), mask) < 1e-12);
  }
  CHECK_THROWS(build_invariant(generic(1), 6, InvariantKind::angular));
}

TEST_CASE("base invariant commutes only without the isospin coupling") {
  auto p = generic(1);
  auto basis = std::make_shared<const ProductBasis>(1, 8);
  const auto mask = basis->interior_indices();
  CHECK(commutator_norm(build_full_hamiltonian(p, basis), build_invariant(p, basis, InvariantKind::base), mask) > 1e-3);
  p.A = p.B = 0.0;
  CHECK(commutator_norm(build_full_hamiltonian(p, basis), build_invariant(p, basis, InvariantKind::base), mask) < 1e-12);
}

TEST_CASE("d=3 angular momentum algebra") {
  auto basis = std::make_shared<const ProductBasis>(3, 3);
  const auto j = build_angular_momentum(basis);
  const auto mask = basis->interior_indices();
  const cplx i(0.0, 1.0);
  // [Jx, Jy] = i Jz on the interior
  OperatorMatrix lhs{basis, j[0].entries * j[1].entries - j[1].entries * j[0].entries};
  OperatorMatrix rhs{basis, i * j[2].entries};
  double worst = 0.0;
  for (auto a : mask)
    for (auto b : mask) worst = std::max(worst, std::abs(lhs.entries(a, b) - rhs.entries(a, b)));
  CHECK(worst < 1e-12);
  CHECK(commutator_norm(build_j_squared(basis), j[2], mask) < 1e-12);
}

TEST_CASE("operator_block reproduces full-space matrix elements") {
  const auto p = generic(1);
  auto basis = std::make_shared<const ProductBasis>(1, 6);
  const auto h = build_full_hamiltonian(p, basis);
  const std::vector<BasisLabel> states{label_1d(4, -1, -1), label_1d(3, -1, 1), label_1d(3, 1, -1), label_1d(2, 1, 1)};
  const auto block = operator_block(p, states);
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b) {
      const auto ia = *basis->index_of(states[static_cast<std::size_t>(a)]);
      const auto ib = *basis->index_of(states[static_cast<std::size_t>(b)]);
      CHECK_THAT(block(a, b), WithinAbs(h.entries(static_cast<Eigen::Index>(ia), static_cast<Eigen::Index>(ib)).real(), 1e-14));
    }
}

TEST_CASE("Jacobi eigensolver") {
  Eigen::Matrix3d a;
  a << 2, -1, 0, -1, 2, -1, 0, -1, 2;
  const auto es = jacobi_eigensolver(a);
  CHECK_THAT(es.values(0), WithinAbs(2.0 - std::sqrt(2.0), 1e-14));
  CHECK_THAT(es.values(1), WithinAbs(2.0, 1e-14));
  CHECK_THAT(es.values(2), WithinAbs(2.0 + std::sqrt(2.0), 1e-14));
  CHECK(max_relative_residual(a, es) < 1e-14);
  CHECK(orthonormality_error(es) < 1e-14);
  Eigen::Matrix2d bad;
  bad << 1, 2, 3, 4;
  CHECK_THROWS_AS(jacobi_eigensolver(bad), NonSymmetricInput);
  CHECK_THROWS_AS(jacobi_eigensolver(Eigen::MatrixXd::Identity(9, 9)), InvalidParameter);
}

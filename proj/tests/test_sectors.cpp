#include <catch_amalgamated.hpp>

#include <cmath>

#include "dirosc/eigensolver.hpp"
#include "dirosc/oracles.hpp"
#include "dirosc/sectors.hpp"

using namespace dirosc;
using Catch::Matchers::WithinAbs;

namespace {

ModelParams params(int d, double m, double A, double B, double alpha, double gamma) {
  ModelParams p = ModelParams::for_dimension(d);
  p.m = m;
  p.A = A;
  p.B = B;
  p.alpha = alpha;
  p.gamma = gamma;
  return p;
}

}  // namespace

TEST_CASE("d=1 generic block entries") {
  const auto p = params(1, 1.1, 0.3, 0.8, 1.7, 0.4);
  const auto b = block_1d(2, p);
  const Eigen::MatrixXd& h = b.entries;
  REQUIRE(h.rows() == 4);
  CHECK_THAT(h(0, 0), WithinAbs(-p.m - (p.B - p.A) * p.gamma, 1e-15));
  CHECK_THAT(h(3, 3), WithinAbs(p.m + (p.A + p.B) * p.gamma, 1e-15));
  CHECK_THAT(h(0, 1), WithinAbs(p.alpha * (p.B - p.A) * 2.0, 1e-15));
  CHECK_THAT(h(0, 2), WithinAbs(2.0, 1e-15));
  CHECK_THAT(h(1, 3), WithinAbs(std::sqrt(3.0), 1e-15));
  CHECK_THAT(h(2, 3), WithinAbs(p.alpha * (p.A + p.B) * std::sqrt(3.0), 1e-15));
  CHECK(h(0, 3) == 0.0);
  CHECK(h(1, 2) == 0.0);
  CHECK(b.key.to_string() == "d1:n=2");
}

TEST_CASE("closed-form blocks equal operator-applied blocks") {
  const auto p1 = params(1, 0.7, -0.5, 1.2, 0.8, 2.1);
  for (int n = 0; n <= 6; ++n) CHECK((block_1d(n, p1).entries - block_1d_operator(n, p1).entries).norm() < 1e-14);
  const auto p2 = params(2, 0.7, -0.5, 1.2, 0.8, 2.1);
  for (int n = 0; n <= 6; ++n) CHECK((block_2d(n, p2, 3).entries - block_2d_operator(n, p2, 3).entries).norm() < 1e-14);
  CHECK((block_triplet(p1).entries - block_triplet_transcribed(p1).entries).norm() < 1e-14);
}

TEST_CASE("singlet and triplet edge sectors") {
  const auto p = params(1, 2.0, 0.5, 1.5, 1.0, 0.3);
  CHECK_THAT(block_singlet(p).entries(0, 0), WithinAbs(-(p.m + (p.B - p.A) * p.gamma), 1e-15));
  CHECK_THAT(singlet_energy(p), WithinAbs(-(p.m + (p.B - p.A) * p.gamma), 1e-15));
  CHECK(block_triplet(p).size() == 3);
  const auto blocks = blocks_1d_upto(3, p);
  REQUIRE(blocks.size() == 6);
  CHECK(blocks[0].key.kind == SectorKind::singlet);
  CHECK(blocks[1].key.kind == SectorKind::triplet);
}

TEST_CASE("d=2 block does not depend on n_L") {
  const auto p = params(2, 1.0, 0.2, 0.9, 1.1, 0.5);
  for (int nr = 0; nr <= 3; ++nr)
    for (int nl = 1; nl <= 5; ++nl) CHECK(block_2d(nr, p, nl).entries == block_2d(nr, p, 0).entries);
  CHECK(block_2d(1, p, 2).key.to_string() == "d2:nR=1;nL=2");
}

TEST_CASE("d=3 sectors cover the interior spectrum") {
  const auto p = params(3, 0.9, 0.6, -0.4, 1.3, 0.8);
  auto basis = std::make_shared<const ProductBasis>(3, 5);
  const auto h = build_full_hamiltonian(p, basis);
  const auto inv = build_invariant(p, basis);
  for (int v = -1; v <= 4; ++v) {
    std::vector<double> pred;
    for (const auto& b : blocks_3d(v, p)) {
      const auto es = jacobi_eigensolver(b.entries);
      for (int c = 0; c < b.multiplicity; ++c)
        for (Eigen::Index i = 0; i < es.values.size(); ++i) pred.push_back(es.values(i));
    }
    INFO("invariant value " << v);
    CHECK(multiset_distance(pred, restricted_spectrum(h, invariant_indices(inv, v))) < 1e-10);
  }
}

TEST_CASE("d=3 families and edge trimming") {
  const auto p = params(3, 1.0, 0.0, 1.0, 1.0, 0.0);
  CHECK(block_3d(0, 1, Family::parallel, p).size() == 3);
  CHECK(block_3d(0, 1, Family::antiparallel, p).size() == 1);
  CHECK(block_3d(2, 3, Family::parallel, p).size() == 4);
  CHECK(block_3d(2, 3, Family::parallel, p).multiplicity == 4);
  CHECK(block_3d(1, 1, Family::parallel, p).key.to_string() == "d3:n=1;j=1/2;l=j+1/2");
}

TEST_CASE("base 2x2 blocks give the free Dirac oscillator levels") {
  auto p = ModelParams::for_dimension(3);
  p.m = 1.5;
  for (int n = 0; n <= 5; ++n) {
    const auto lo = jacobi_eigensolver(block_3d_base(n, 3, BaseBranch::lower, p).entries);
    const auto hi = jacobi_eigensolver(block_3d_base(n, 3, BaseBranch::upper, p).entries);
    CHECK_THAT(lo.values(1) * lo.values(1), WithinAbs(p.m * p.m + 2.0 * n, 1e-12));
    CHECK_THAT(hi.values(1) * hi.values(1), WithinAbs(p.m * p.m + 2.0 * (n + 1.5), 1e-12));
  }
}

TEST_CASE("total-spin basis change") {
  const Eigen::Matrix4d q = symm_basis_change();
  CHECK((q.transpose() * q - Eigen::Matrix4d::Identity()).norm() < 1e-15);
  const auto s = block_symm(3, 1.7);
  const auto h = block_1d(3, params(1, 1.7, 0.0, 1.0, 1.0, 1.7)).entries;
  CHECK((q.transpose() * h * q - s.entries).norm() < 1e-13);
  CHECK(s.entries.row(0).norm() < 1e-14);
}

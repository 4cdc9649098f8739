#include <catch_amalgamated.hpp>

#include <cmath>
#include <numbers>

#include "dirosc/dynamics.hpp"
#include "dirosc/oracles.hpp"

using namespace dirosc;
using Catch::Matchers::WithinAbs;

namespace {

ModelParams study(double gamma) {
  ModelParams p = ModelParams::for_dimension(1);
  p.m = 3.2;
  p.alpha = 1.2;
  p.A = 0.0;
  p.B = 1.0;
  p.gamma = gamma;
  return p;
}

}  // namespace

TEST_CASE("oscillator eigenstate") {
  const auto p = study(0.0);
  for (int n = 0; n <= 5; ++n) {
    const auto s = dirac_oscillator_state(n, p);
    CHECK_THAT(s.energy, WithinAbs(std::sqrt(n + 1.0 + p.m * p.m), 1e-12));
    CHECK_THAT(s.amp_plus * s.amp_plus + s.amp_minus * s.amp_minus, WithinAbs(1.0, 1e-14));
    CHECK(s.amp_plus >= 0.0);
    CHECK(dirac_oscillator_state(n, p, EnergySign::negative).energy < 0.0);
  }
}

TEST_CASE("initial state is normalized and a product state") {
  const auto psi = prepare_initial(0, std::numbers::pi / 4.0, study(1.0));
  CHECK_THAT(psi.norm(), WithinAbs(1.0, 1e-15));
  const auto rho = reduce_isospin(psi);
  CHECK_THAT(rho.purity(), WithinAbs(1.0, 1e-14));
  CHECK_THAT(rho.entropy(), WithinAbs(0.0, 1e-12));
  CHECK_THAT(rho.trace(), WithinAbs(1.0, 1e-14));
  CHECK(touched_sectors(psi) == std::vector<int>{-1, 0});
  CHECK_THROWS_AS(prepare_initial(2, 0.0, study(0.0), 4), InvalidTruncation);
}

TEST_CASE("without alpha and gamma the isospin stays unentangled") {
  auto p = study(0.0);
  p.alpha = 0.0;
  const auto psi0 = prepare_initial(1, 0.3, p);
  const Propagator prop(psi0, p);
  for (double t : {0.5, 4.0, 17.0}) CHECK_THAT(reduce_isospin(prop.at(t)).purity(), WithinAbs(1.0, 1e-12));
}

TEST_CASE("sector propagation agrees with dense propagation") {
  const auto p = study(2.4);
  const auto psi0 = prepare_initial(1, 0.9, p, 7);
  const auto h = build_full_hamiltonian(p, psi0.basis);
  const Propagator prop(psi0, p);
  for (double t : {0.0, 1.3, 9.7}) CHECK((prop.at(t).amplitudes - dense_evolve(psi0, h, t).amplitudes).norm() < 1e-11);
  // evolve is relative to the state's own time
  const auto half = evolve(psi0, 0.65, p);
  CHECK((evolve(half, 0.65, p).amplitudes - prop.at(1.3).amplitudes).norm() < 1e-12);
}

TEST_CASE("entropy helper") {
  const double half[] = {0.5, 0.5};
  CHECK_THAT(von_neumann_entropy(half), WithinAbs(std::log(2.0), 1e-15));
  const double clipped[] = {1.0, -1e-14};
  CHECK(von_neumann_entropy(clipped) == 0.0);
}

TEST_CASE("trajectory bounds and grid checks") {
  const auto grid = linear_grid(0.0, 20.0, 81);
  CHECK(grid.back() == 20.0);
  const auto traj = entanglement_trajectory(0, std::numbers::pi / 4.0, study(3.2), grid);
  REQUIRE(traj.size() == 81);
  for (const auto& pt : traj) {
    CHECK(pt.purity >= 0.5 - 1e-12);
    CHECK(pt.purity <= 1.0 + 1e-12);
    CHECK(pt.entropy >= 0.0);
    CHECK(pt.entropy <= std::log(2.0) + 1e-12);
  }
  const double backwards[] = {1.0, 0.0};
  CHECK_THROWS_AS(entanglement_trajectory(0, 0.0, study(1.0), backwards), InvalidParameter);
  CHECK_THROWS_AS(linear_grid(1.0, 0.0, 5), InvalidParameter);
}

TEST_CASE("Schmidt partners share purity") {
  const auto p = study(1.8);
  const Propagator prop(prepare_initial(2, 1.0, p, 8), p);
  const auto psi = prop.at(5.5);
  const auto dense = dense_partial_traces(psi);
  CHECK_THAT(dense.purity_iso, WithinAbs(dense.purity_rest, 1e-12));
  CHECK_THAT(reduce_isospin(psi).entropy(), WithinAbs(dense.entropy_rest, 1e-11));
}

TEST_CASE("propagator rejects other dimensions") {
  ModelParams p2 = ModelParams::for_dimension(2);
  CHECK_THROWS_AS(prepare_initial(0, 0.0, p2), DimensionMismatch);
}

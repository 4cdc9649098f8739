#pragma once

// Full-space reference computations. These never use the sector blocks: they
// restrict the dense Hamiltonian to invariant eigenspaces read off the
// invariant operator itself, and trace the dense density matrix directly.

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include <Eigen/Dense>

#include "dirosc/algebra.hpp"
#include "dirosc/dynamics.hpp"

namespace dirosc {

/// Indices whose diagonal invariant value equals `value` (invariants built
/// from number operators are diagonal in the product basis).
inline std::vector<std::size_t> invariant_indices(const OperatorMatrix& invariant, double value, double tol = 1e-9) {
  std::vector<std::size_t> out;
  for (Eigen::Index i = 0; i < invariant.entries.rows(); ++i)
    if (std::abs(invariant.entries(i, i).real() - value) < tol) out.push_back(static_cast<std::size_t>(i));
  return out;
}

/// Ascending eigenvalues of H restricted to the given rows and columns.
inline std::vector<double> restricted_spectrum(const OperatorMatrix& h, const std::vector<std::size_t>& idx) {
  const auto k = static_cast<Eigen::Index>(idx.size());
  if (k == 0) return {};
  Eigen::MatrixXcd sub(k, k);
  for (Eigen::Index r = 0; r < k; ++r)
    for (Eigen::Index c = 0; c < k; ++c)
      sub(r, c) = h.entries(static_cast<Eigen::Index>(idx[static_cast<std::size_t>(r)]),
                            static_cast<Eigen::Index>(idx[static_cast<std::size_t>(c)]));
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(sub, Eigen::EigenvaluesOnly);
  std::vector<double> out(es.eigenvalues().data(), es.eigenvalues().data() + k);
  std::sort(out.begin(), out.end());
  return out;
}

/// Union of the invariant eigenspaces with value <= v_max.
inline std::vector<std::size_t> invariant_indices_upto(const OperatorMatrix& invariant, double v_max) {
  std::vector<std::size_t> out;
  for (Eigen::Index i = 0; i < invariant.entries.rows(); ++i)
    if (invariant.entries(i, i).real() <= v_max + 1e-9) out.push_back(static_cast<std::size_t>(i));
  return out;
}

/// Largest |a_i - b_i| between two sorted multisets; infinity on size mismatch.
inline double multiset_distance(std::vector<double> a, std::vector<double> b) {
  if (a.size() != b.size()) return std::numeric_limits<double>::infinity();
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  double worst = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) worst = std::max(worst, std::abs(a[i] - b[i]));
  return worst;
}

/// Purity and entropy obtained from the dense density matrix rho = |psi><psi|.
struct DenseReduction {
  double purity_iso = 0.0;     // from Tr_rest rho
  double entropy_iso = 0.0;
  double purity_rest = 0.0;    // from Tr_iso rho (oscillator and *-spin side)
  double entropy_rest = 0.0;
};

inline DenseReduction dense_partial_traces(const StateVector& psi) {
  const Eigen::Index dim = psi.amplitudes.size();
  const Eigen::MatrixXcd rho = psi.amplitudes * psi.amplitudes.adjoint();
  const Eigen::Index rest = dim / 2;

  Eigen::MatrixXcd rho_rest = Eigen::MatrixXcd::Zero(rest, rest);
  Eigen::Matrix2cd rho_iso = Eigen::Matrix2cd::Zero();
  for (Eigen::Index a = 0; a < rest; ++a) {
    for (Eigen::Index b = 0; b < rest; ++b)
      for (Eigen::Index t = 0; t < 2; ++t) rho_rest(a, b) += rho(2 * a + t, 2 * b + t);
    for (Eigen::Index t = 0; t < 2; ++t)
      for (Eigen::Index u = 0; u < 2; ++u) rho_iso(t, u) += rho(2 * a + t, 2 * a + u);
  }

  auto stats = [](const auto& m, double& purity, double& entropy) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(Eigen::MatrixXcd(m), Eigen::EigenvaluesOnly);
    std::vector<double> ev(es.eigenvalues().data(), es.eigenvalues().data() + es.eigenvalues().size());
    purity = (m * m).trace().real();
    entropy = von_neumann_entropy(ev);
  };
  DenseReduction out;
  stats(rho_iso, out.purity_iso, out.entropy_iso);
  stats(rho_rest, out.purity_rest, out.entropy_rest);
  return out;
}

/// Dense matrix exponential route: psi(t) = V exp(-i E t) V^+ psi(0) with the
/// full truncated H. Independent of the sector propagator.
inline StateVector dense_evolve(const StateVector& psi0, const OperatorMatrix& h, double t) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h.entries);
  Eigen::VectorXcd c = es.eigenvectors().adjoint() * psi0.amplitudes;
  for (Eigen::Index j = 0; j < c.size(); ++j) c(j) *= std::polar(1.0, -es.eigenvalues()(j) * (t - psi0.time));
  return StateVector{psi0.basis, es.eigenvectors() * c, t};
}

}  // namespace dirosc

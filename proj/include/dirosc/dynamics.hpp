#pragma once

// Oscillator x isospin dynamics in one dimension: a Dirac-oscillator
// eigenstate times an isospinor evolves exactly through the spectral
// decomposition of the few sectors it touches.

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <map>
#include <span>
#include <string>
#include <memory>
#include <vector>

#include <Eigen/Dense>

#include "dirosc/algebra.hpp"
#include "dirosc/eigensolver.hpp"
#include "dirosc/params.hpp"
#include "dirosc/sectors.hpp"

namespace dirosc {

enum class EnergySign { positive, negative };

/// Two-component eigenstate amp_plus |n>|+> + amp_minus |n+1>|-> of the
/// field-free oscillator.
struct OscEigenstate {
  int n = 0;
  double amp_plus = 0.0;
  double amp_minus = 0.0;
  double energy = 0.0;
  std::array<BasisLabel, 2> support{};
};

/// The value sqrt(2n+1+m^2) quoted for the positive branch; reported next to
/// the derived energy, never used.
inline double quoted_oscillator_energy(int n, double m) { return std::sqrt(2.0 * n + 1.0 + m * m); }

/// Diagonalizes [[m, c sqrt(n+1)], [c sqrt(n+1), -m]] on (|n,+>, |n+1,->).
inline OscEigenstate dirac_oscillator_state(int n, const ModelParams& p, EnergySign sign = EnergySign::positive) {
  require_dimension(p, 1, "dirac_oscillator_state");
  if (n < 0) throw InvalidParameter("dirac_oscillator_state: n must be >= 0");
  const double x = p.convention.scale * std::sqrt(n + 1.0);
  Eigen::Matrix2d h;
  h << p.m, x, x, -p.m;
  const auto es = jacobi_eigensolver(h);
  const Eigen::Index k = sign == EnergySign::positive ? 1 : 0;
  OscEigenstate s;
  s.n = n;
  s.energy = es.values(k);
  s.amp_plus = es.vectors(0, k);
  s.amp_minus = es.vectors(1, k);
  if (s.amp_plus < 0.0 || (s.amp_plus == 0.0 && s.amp_minus < 0.0)) {
    s.amp_plus = -s.amp_plus;
    s.amp_minus = -s.amp_minus;
  }
  s.support = {label_1d(n, +1, +1), label_1d(n + 1, -1, +1)};
  return s;
}

struct StateVector {
  std::shared_ptr<const ProductBasis> basis;
  Eigen::VectorXcd amplitudes;
  double time = 0.0;

  double norm() const { return amplitudes.norm(); }
};

/// Isospinor cos(theta)|+> + sin(theta)|->; unit norm by construction.
inline std::array<double, 2> isospinor(double theta) { return {std::cos(theta), std::sin(theta)}; }

inline int default_truncation(int n) { return n + 4; }

/// chi_n (x) isospinor on a d=1 basis with n_max = n + 4.
inline StateVector prepare_initial(int n, double theta, const ModelParams& p, int n_max = -1) {
  require_dimension(p, 1, "prepare_initial");
  if (n_max < 0) n_max = default_truncation(n);
  if (n_max < n + 3) throw InvalidTruncation("prepare_initial: n_max must be >= n + 3");
  const auto osc = dirac_oscillator_state(n, p);
  auto basis = std::make_shared<const ProductBasis>(1, n_max);
  StateVector psi{basis, Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(basis->size())), 0.0};
  const auto chi = isospinor(theta);
  for (int t = 0; t < 2; ++t) {
    const int tau = t == 0 ? +1 : -1;
    psi.amplitudes(static_cast<Eigen::Index>(*basis->index_of(label_1d(n, +1, tau)))) = osc.amp_plus * chi[static_cast<std::size_t>(t)];
    psi.amplitudes(static_cast<Eigen::Index>(*basis->index_of(label_1d(n + 1, -1, tau)))) = osc.amp_minus * chi[static_cast<std::size_t>(t)];
  }
  psi.amplitudes /= psi.amplitudes.norm();
  return psi;
}

/// I-eigenvalue (d=1) of a product label.
inline int invariant_value_1d(const BasisLabel& l) { return l.quanta[0] + (l.star + l.iso) / 2 - 1; }

/// Sectors with nonzero weight in `psi`, ascending.
inline std::vector<int> touched_sectors(const StateVector& psi, double tol = 0.0) {
  std::vector<int> out;
  for (Eigen::Index i = 0; i < psi.amplitudes.size(); ++i) {
    if (std::abs(psi.amplitudes(i)) <= tol) continue;
    out.push_back(invariant_value_1d(psi.basis->label(static_cast<std::size_t>(i))));
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

/// Spectral data of one sector, with the state's projection on it.
struct SectorSpectrum {
  int invariant = 0;
  std::vector<std::size_t> indices;  // positions in the product basis
  EigenSystem eigen;
  Eigen::VectorXcd overlaps;         // <psi_j | psi(0)>
};

/// Exact propagator for a state supported on finitely many d=1 sectors. The
/// sector eigensystems are computed once and shared across times.
class Propagator {
 public:
  Propagator(const StateVector& psi0, const ModelParams& p) : basis_(psi0.basis), t0_(psi0.time) {
    require_dimension(p, 1, "Propagator");
    if (!basis_ || basis_->dimension() != 1) throw DimensionMismatch("Propagator: expects a d=1 basis");
    std::vector<char> covered(static_cast<std::size_t>(psi0.amplitudes.size()), 0);
    for (int v : touched_sectors(psi0)) {
      const auto sb = sector_basis_for_invariant_1d(v);
      SectorSpectrum s;
      s.invariant = v;
      for (const auto& l : sb.states) {
        auto idx = basis_->index_of(l);
        if (!idx) throw InvalidTruncation("Propagator: sector " + std::to_string(v) + " exceeds the truncation");
        s.indices.push_back(*idx);
        covered[*idx] = 1;
      }
      s.eigen = jacobi_eigensolver(operator_block(p, sb.states));
      Eigen::VectorXcd local(static_cast<Eigen::Index>(s.indices.size()));
      for (std::size_t k = 0; k < s.indices.size(); ++k) local(static_cast<Eigen::Index>(k)) = psi0.amplitudes(static_cast<Eigen::Index>(s.indices[k]));
      s.overlaps = s.eigen.vectors.transpose().cast<cplx>() * local;
      sectors_.push_back(std::move(s));
    }
    for (Eigen::Index i = 0; i < psi0.amplitudes.size(); ++i)
      if (!covered[static_cast<std::size_t>(i)] && psi0.amplitudes(i) != cplx(0.0)) throw Error("Propagator: state has weight outside every diagonalized sector");
  }

  /// psi(t) = sum_sectors sum_j exp(-i E_j (t - t0)) <psi_j|psi> |psi_j>.
  StateVector at(double t) const {
    StateVector out{basis_, Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(basis_->size())), t};
    const double dt = t - t0_;
    for (const auto& s : sectors_) {
      Eigen::VectorXcd phased = s.overlaps;
      for (Eigen::Index j = 0; j < phased.size(); ++j) phased(j) *= std::polar(1.0, -s.eigen.values(j) * dt);
      const Eigen::VectorXcd local = s.eigen.vectors.cast<cplx>() * phased;
      for (std::size_t k = 0; k < s.indices.size(); ++k) out.amplitudes(static_cast<Eigen::Index>(s.indices[k])) = local(static_cast<Eigen::Index>(k));
    }
    return out;
  }

  const std::vector<SectorSpectrum>& sectors() const { return sectors_; }

 private:
  std::shared_ptr<const ProductBasis> basis_;
  double t0_ = 0.0;
  std::vector<SectorSpectrum> sectors_;
};

inline StateVector evolve(const StateVector& state, double t, const ModelParams& p) {
  return Propagator(state, p).at(state.time + t);
}

struct ReducedDensity {
  Eigen::Matrix2cd rho;
  std::array<double, 2> eigenvalues{};

  double trace() const { return rho.trace().real(); }
  double purity() const { return eigenvalues[0] * eigenvalues[0] + eigenvalues[1] * eigenvalues[1]; }
  double entropy() const;
};

/// -sum lambda ln lambda; eigenvalues in [-1e-12, 0) are clipped to 0 and
/// rounding above 1 is clipped to 1.
inline double von_neumann_entropy(std::span<const double> eigenvalues) {
  double s = 0.0;
  for (double l : eigenvalues) {
    if (l < 0.0 && l >= -1e-12) l = 0.0;
    l = std::min(l, 1.0);
    if (l > 0.0) s -= l * std::log(l);
  }
  return s;
}

inline double ReducedDensity::entropy() const { return von_neumann_entropy(eigenvalues); }

/// Isospin density: trace over oscillator and *-spin (and spin for d=3).
/// Isospin is the fastest index of the product basis.
inline ReducedDensity reduce_isospin(const StateVector& state) {
  const auto& a = state.amplitudes;
  if (a.size() % 2 != 0) throw DimensionMismatch("reduce_isospin: odd state length");
  Eigen::Matrix2cd rho = Eigen::Matrix2cd::Zero();
  for (Eigen::Index i = 0; i < a.size(); i += 2) {
    const cplx up = a(i), dn = a(i + 1);
    rho(0, 0) += up * std::conj(up);
    rho(0, 1) += up * std::conj(dn);
    rho(1, 0) += dn * std::conj(up);
    rho(1, 1) += dn * std::conj(dn);
  }
  ReducedDensity r;
  r.rho = 0.5 * (rho + rho.adjoint());
  // Closed-form eigenvalues of a 2x2 Hermitian matrix.
  const double mean = 0.5 * (r.rho(0, 0).real() + r.rho(1, 1).real());
  const double half = 0.5 * (r.rho(0, 0).real() - r.rho(1, 1).real());
  const double gap = std::hypot(half, std::abs(r.rho(0, 1)));
  r.eigenvalues = {mean - gap, mean + gap};
  return r;
}

struct EntanglementPoint {
  double t = 0.0;
  double gamma = 0.0;
  double purity = 1.0;
  double entropy = 0.0;
};

inline std::vector<double> linear_grid(double lo, double hi, int steps) {
  if (steps < 1) throw InvalidParameter("grid: steps must be >= 1");
  if (hi < lo) throw InvalidParameter("grid: upper bound below lower bound");
  std::vector<double> g(static_cast<std::size_t>(steps));
  for (int k = 0; k < steps; ++k) g[static_cast<std::size_t>(k)] = steps == 1 ? lo : lo + (hi - lo) * k / (steps - 1);
  return g;
}

inline std::vector<EntanglementPoint> entanglement_trajectory(int n, double theta, const ModelParams& p,
                                                              std::span<const double> t_grid) {
  for (std::size_t k = 1; k < t_grid.size(); ++k)
    if (!(t_grid[k] >= t_grid[k - 1])) throw InvalidParameter("entanglement_trajectory: time grid must be monotone");
  const Propagator prop(prepare_initial(n, theta, p), p);
  std::vector<EntanglementPoint> out;
  out.reserve(t_grid.size());
  for (double t : t_grid) {
    const auto rho = reduce_isospin(prop.at(t));
    out.push_back({t, p.gamma, rho.purity(), rho.entropy()});
  }
  return out;
}

/// <psi|O|psi> (real part) for an operator on the state's basis.
inline double expectation(const StateVector& psi, const OperatorMatrix& op) {
  if (op.entries.rows() != psi.amplitudes.size()) throw DimensionMismatch("expectation: size mismatch");
  return psi.amplitudes.dot(op.entries * psi.amplitudes).real();
}

}  // namespace dirosc

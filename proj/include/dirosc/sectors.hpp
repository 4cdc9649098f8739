#pragma once

// Conserved-invariant sectors and their finite Hamiltonian blocks.
//
// d=1 and d=2 blocks are available both transcribed (closed matrix entries)
// and operator-first (generated from the label-level action of H); tests
// assert the two coincide. d=3 blocks live on the coupled |n,(l,1/2)j,m_j>
// basis and carry a multiplicity 2j+1 from the spectator m_j.

#include <cmath>
#include <compare>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "dirosc/algebra.hpp"
#include "dirosc/params.hpp"

namespace dirosc {

enum class SectorKind { generic, singlet, triplet };

/// d=3 block families: the orbital of phi_1 has l = j + 1/2 (parallel) or
/// l = j - 1/2 (antiparallel).
enum class Family { parallel, antiparallel };

struct SectorKey {
  int dimension = 1;
  SectorKind kind = SectorKind::generic;
  int n = 0;      // d=1: I-eigenvalue; d=2: n_R sector; d=3: radial number of phi_1
  int n_l = 0;    // d=2 spectator
  int two_j = 0;  // d=3
  Family family = Family::parallel;

  auto operator<=>(const SectorKey&) const = default;

  std::string to_string() const {
    std::string prefix = "d" + std::to_string(dimension) + ":";
    if (kind == SectorKind::singlet) return prefix + "singlet" + (dimension == 2 ? ";nL=" + std::to_string(n_l) : "");
    if (kind == SectorKind::triplet) return prefix + "triplet" + (dimension == 2 ? ";nL=" + std::to_string(n_l) : "");
    if (dimension == 1) return prefix + "n=" + std::to_string(n);
    if (dimension == 2) return prefix + "nR=" + std::to_string(n) + ";nL=" + std::to_string(n_l);
    return prefix + "n=" + std::to_string(n) + ";j=" + std::to_string(two_j) + "/2;" +
           (family == Family::parallel ? "l=j+1/2" : "l=j-1/2");
  }
};

struct SectorBasis {
  SectorKey key;
  std::vector<BasisLabel> states;  // product labels (d=1,2)
  std::vector<std::string> names;  // readable state names (all d)
};

struct BlockMatrix {
  SectorKey key;
  Eigen::MatrixXd entries;
  SectorBasis basis;
  int multiplicity = 1;

  Eigen::Index size() const { return entries.rows(); }
};

namespace detail {

inline SectorBasis named(SectorKey key, std::vector<BasisLabel> states) {
  SectorBasis b{key, std::move(states), {}};
  for (const auto& s : b.states) b.names.push_back(to_string(s, key.dimension));
  return b;
}

inline double root(double scale, double x) { return scale * std::sqrt(x); }

// Generic 4x4 block on (phi_1..phi_4) with ladder entries c*sqrt(n+1), c*sqrt(n+2).
inline Eigen::MatrixXd generic_block(int n, double c, const ModelParams& p) {
  const double s2 = root(c, n + 2.0);
  const double s1 = root(c, n + 1.0);
  const double bm = p.B - p.A;
  const double bp = p.B + p.A;
  Eigen::Matrix4d h;
  h << -p.m - bm * p.gamma, p.alpha * bm * s2, s2, 0.0,
       p.alpha * bm * s2, -p.m + bm * p.gamma, 0.0, s1,
       s2, 0.0, p.m - bp * p.gamma, p.alpha * bp * s1,
       0.0, s1, p.alpha * bp * s1, p.m + bp * p.gamma;
  return h;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// One dimension

/// (phi_1, ..., phi_4) = |n+2,-->, |n+1,-+>, |n+1,+->, |n,++>; all have I = n.
inline SectorBasis sector_basis_1d(int n) {
  if (n < 0) throw InvalidParameter("sector_basis_1d: n must be >= 0 (use singlet/triplet)");
  return detail::named({1, SectorKind::generic, n},
                       {label_1d(n + 2, -1, -1), label_1d(n + 1, -1, +1), label_1d(n + 1, +1, -1), label_1d(n, +1, +1)});
}

inline SectorBasis singlet_basis_1d() { return detail::named({1, SectorKind::singlet, -2}, {label_1d(0, -1, -1)}); }

inline SectorBasis triplet_basis_1d() {
  return detail::named({1, SectorKind::triplet, -1}, {label_1d(1, -1, -1), label_1d(0, -1, +1), label_1d(0, +1, -1)});
}

/// Sector basis for any I-eigenvalue v >= -2 in one dimension.
inline SectorBasis sector_basis_for_invariant_1d(int v) {
  if (v == -2) return singlet_basis_1d();
  if (v == -1) return triplet_basis_1d();
  return sector_basis_1d(v);
}

/// Transcribed 4x4 block with entries scale*sqrt(n+k).
inline BlockMatrix block_1d(int n, const ModelParams& p) {
  require_dimension(p, 1, "block_1d");
  p.validate();
  auto basis = sector_basis_1d(n);
  return {basis.key, detail::generic_block(n, p.convention.scale, p), basis};
}

/// Same block generated from the operator expression of H.
inline BlockMatrix block_1d_operator(int n, const ModelParams& p) {
  require_dimension(p, 1, "block_1d_operator");
  auto basis = sector_basis_1d(n);
  return {basis.key, operator_block(p, basis.states), basis};
}

inline double singlet_energy(const ModelParams& p) {
  require_dimension(p, 1, "singlet_energy");
  return -(p.m + (p.B - p.A) * p.gamma);
}

inline BlockMatrix block_singlet(const ModelParams& p) {
  require_dimension(p, 1, "block_singlet");
  auto basis = singlet_basis_1d();
  return {basis.key, operator_block(p, basis.states), basis};
}

inline BlockMatrix block_triplet(const ModelParams& p) {
  require_dimension(p, 1, "block_triplet");
  auto basis = triplet_basis_1d();
  return {basis.key, operator_block(p, basis.states), basis};
}

/// The 3x3 triplet block as a transcription, kept to cross-check the
/// operator-first block.
inline BlockMatrix block_triplet_transcribed(const ModelParams& p) {
  require_dimension(p, 1, "block_triplet_transcribed");
  const double c = p.convention.scale;
  const double bm = p.B - p.A;
  Eigen::Matrix3d h;
  h << -p.m - bm * p.gamma, p.alpha * bm * c, c,
       p.alpha * bm * c, -p.m + bm * p.gamma, 0.0,
       c, 0.0, p.m - (p.B + p.A) * p.gamma;
  auto basis = triplet_basis_1d();
  return {basis.key, h, basis};
}

/// Every sector block of the d=1 model with I-eigenvalue in [-2, v_max].
inline std::vector<BlockMatrix> blocks_1d_upto(int v_max, const ModelParams& p) {
  std::vector<BlockMatrix> out;
  if (v_max >= -2) out.push_back(block_singlet(p));
  if (v_max >= -1) out.push_back(block_triplet(p));
  for (int n = 0; n <= v_max; ++n) out.push_back(block_1d(n, p));
  return out;
}

// ---------------------------------------------------------------------------
// Two dimensions: A_R acts on n_R with element sqrt(2)*scale*sqrt(n_R); n_L is
// a spectator that never enters the block entries.

inline SectorBasis sector_basis_2d(int n_r, int n_l = 0) {
  if (n_r < 0 || n_l < 0) throw InvalidParameter("sector_basis_2d: quantum numbers must be >= 0");
  SectorKey key{2, SectorKind::generic, n_r, n_l};
  return detail::named(key, {label_2d(n_r + 2, n_l, -1, -1), label_2d(n_r + 1, n_l, -1, +1),
                             label_2d(n_r + 1, n_l, +1, -1), label_2d(n_r, n_l, +1, +1)});
}

inline BlockMatrix block_2d(int n_r, const ModelParams& p, int n_l = 0) {
  require_dimension(p, 2, "block_2d");
  p.validate();
  auto basis = sector_basis_2d(n_r, n_l);
  return {basis.key, detail::generic_block(n_r, detail::ladder_element(p), p), basis};
}

inline BlockMatrix block_2d_operator(int n_r, const ModelParams& p, int n_l = 0) {
  require_dimension(p, 2, "block_2d_operator");
  auto basis = sector_basis_2d(n_r, n_l);
  return {basis.key, operator_block(p, basis.states), basis};
}

inline BlockMatrix block_2d_singlet(const ModelParams& p, int n_l = 0) {
  require_dimension(p, 2, "block_2d_singlet");
  auto basis = detail::named({2, SectorKind::singlet, -2, n_l}, {label_2d(0, n_l, -1, -1)});
  return {basis.key, operator_block(p, basis.states), basis};
}

inline BlockMatrix block_2d_triplet(const ModelParams& p, int n_l = 0) {
  require_dimension(p, 2, "block_2d_triplet");
  auto basis = detail::named({2, SectorKind::triplet, -1, n_l},
                             {label_2d(1, n_l, -1, -1), label_2d(0, n_l, -1, +1), label_2d(0, n_l, +1, -1)});
  return {basis.key, operator_block(p, basis.states), basis};
}

// ---------------------------------------------------------------------------
// Three dimensions

namespace detail {

inline std::string half(int two_x) {
  return two_x % 2 == 0 ? std::to_string(two_x / 2) : std::to_string(two_x) + "/2";
}

inline std::string coupled_name(int radial, int l, int two_j, char sigma, char tau) {
  return "|" + std::to_string(radial) + ",(" + std::to_string(l) + ",1/2)" + half(two_j) + ";" + sigma + tau + ">";
}

}  // namespace detail

/// The 4x4 block as printed for the coupled states |n,(j+-1/2,1/2)j>, entries
/// sqrt(scale^2 (n+j)) and sqrt(scale^2 n), field ladder entries times alpha.
/// It does not reproduce the Cartesian spectrum (see block_3d); kept for
/// reference and for the printed-entry checks.
inline BlockMatrix block_3d_printed(int n, int two_j, const ModelParams& p) {
  require_dimension(p, 3, "block_3d_printed");
  if (n < 1) throw InvalidParameter("block_3d_printed: n must be >= 1");
  if (two_j < 1 || two_j % 2 == 0) throw InvalidParameter("block_3d_printed: j must be a positive half-integer");
  const double c2 = p.convention.scale * p.convention.scale;
  const double x = std::sqrt(c2 * (n + 0.5 * two_j));
  const double y = std::sqrt(c2 * n);
  const double am = p.A - p.B;
  const double ap = p.A + p.B;
  Eigen::Matrix4d h;
  h << -p.m - am * p.gamma, p.alpha * am * x, -x, 0.0,
       p.alpha * am * x, -p.m + am * p.gamma, 0.0, y,
       -x, 0.0, p.m - ap * p.gamma, p.alpha * ap * y,
       0.0, y, p.alpha * ap * y, p.m + ap * p.gamma;
  SectorKey key{3, SectorKind::generic, n, 0, two_j, Family::parallel};
  const int lp = (two_j + 1) / 2;
  const int lm = (two_j - 1) / 2;
  SectorBasis basis{key, {},
                    {detail::coupled_name(n, lp, two_j, '-', '-'), detail::coupled_name(n, lm, two_j, '-', '+'),
                     detail::coupled_name(n - 1, lm, two_j, '+', '-'), detail::coupled_name(n - 1, lp, two_j, '+', '+')}};
  return {key, h, basis, two_j + 1};
}

/// Exact d=3 block from the reduced matrix elements of sigma.a on coupled
/// states. With l1 the orbital of phi_1 and l2 = 2j - l1 the other one:
///
///   phi_1 = |n,   (l1) j> |->_S |->_T     phi_2 = |n', (l2) j> |->_S |+>_T
///   phi_3 = |n',  (l2) j> |+>_S |->_T     phi_4 = |n-1,(l1) j> |+>_S |+>_T
///
/// (n' = n for the parallel family, n-1 for antiparallel). Off-diagonals are
/// h12 = alpha(A-B)sqrt(u), h13 = sqrt(u), h24 = sqrt(w), h34 = alpha(A+B)sqrt(w) with
///   parallel:     u = scale^2 2(n+j+1),  w = scale^2 2n
///   antiparallel: u = scale^2 2n,        w = scale^2 2(n+j).
/// Edge sectors (n = 0) drop the states that do not exist: 3x3 (parallel) or
/// 1x1 (antiparallel).
inline BlockMatrix block_3d(int n, int two_j, Family family, const ModelParams& p) {
  require_dimension(p, 3, "block_3d");
  p.validate();
  if (n < 0) throw InvalidParameter("block_3d: n must be >= 0");
  if (two_j < 1 || two_j % 2 == 0) throw InvalidParameter("block_3d: j must be a positive half-integer");
  const double c2 = p.convention.scale * p.convention.scale;
  const double j = 0.5 * two_j;
  const bool par = family == Family::parallel;
  const double u = par ? c2 * 2.0 * (n + j + 1.0) : c2 * 2.0 * n;
  const double w = par ? c2 * 2.0 * n : c2 * 2.0 * (n + j);
  const double am = p.A - p.B;
  const double ap = p.A + p.B;

  Eigen::Matrix4d full = Eigen::Matrix4d::Zero();
  full.diagonal() << -p.m - am * p.gamma, -p.m + am * p.gamma, p.m - ap * p.gamma, p.m + ap * p.gamma;
  full(0, 1) = full(1, 0) = p.alpha * am * std::sqrt(u);
  full(0, 2) = full(2, 0) = std::sqrt(u);
  full(1, 3) = full(3, 1) = std::sqrt(w);
  full(2, 3) = full(3, 2) = p.alpha * ap * std::sqrt(w);

  const int l1 = par ? (two_j + 1) / 2 : (two_j - 1) / 2;
  const int l2 = par ? (two_j - 1) / 2 : (two_j + 1) / 2;
  const int n2 = par ? n : n - 1;
  std::vector<int> keep{0};
  std::vector<std::string> names{detail::coupled_name(n, l1, two_j, '-', '-')};
  if (n2 >= 0) {
    keep.insert(keep.end(), {1, 2});
    names.push_back(detail::coupled_name(n2, l2, two_j, '-', '+'));
    names.push_back(detail::coupled_name(n2, l2, two_j, '+', '-'));
  }
  if (n >= 1) {
    keep.push_back(3);
    names.push_back(detail::coupled_name(n - 1, l1, two_j, '+', '+'));
  }
  const auto k = static_cast<Eigen::Index>(keep.size());
  Eigen::MatrixXd h(k, k);
  for (Eigen::Index r = 0; r < k; ++r)
    for (Eigen::Index c = 0; c < k; ++c) h(r, c) = full(keep[static_cast<std::size_t>(r)], keep[static_cast<std::size_t>(c)]);

  SectorKind kind = SectorKind::generic;
  if (k == 3) kind = SectorKind::triplet;
  if (k == 1) kind = SectorKind::singlet;
  SectorKey key{3, kind, n, 0, two_j, family};
  return {key, h, SectorBasis{key, {}, std::move(names)}, two_j + 1};
}

/// All (n, j, family) blocks inside the sector I = N + (Sigma_3 + T_3)/2 = v,
/// v >= -1. phi_1 carries Q = v + 1 quanta, so l1 <= Q with Q - l1 even.
inline std::vector<SectorKey> sector_keys_3d(int v) {
  if (v < -1) throw InvalidParameter("sector_keys_3d: invariant value must be >= -1");
  const int q = v + 1;
  std::vector<SectorKey> keys;
  for (int l1 = q % 2; l1 <= q; l1 += 2) {
    const int n = (q - l1) / 2;
    if (l1 >= 1) keys.push_back({3, SectorKind::generic, n, 0, 2 * l1 - 1, Family::parallel});
    keys.push_back({3, SectorKind::generic, n, 0, 2 * l1 + 1, Family::antiparallel});
  }
  return keys;
}

inline std::vector<BlockMatrix> blocks_3d(int v, const ModelParams& p) {
  std::vector<BlockMatrix> out;
  for (const auto& key : sector_keys_3d(v)) out.push_back(block_3d(key.n, key.two_j, key.family, p));
  return out;
}

enum class BaseBranch { lower, upper };

/// 2x2 blocks of the field-free d=3 oscillator:
/// lower [[-m, sqrt(2n)], [sqrt(2n), m]], upper with 2(n+j), at scale sqrt(2).
inline BlockMatrix block_3d_base(int n, int two_j, BaseBranch branch, const ModelParams& p) {
  require_dimension(p, 3, "block_3d_base");
  if (n < 0) throw InvalidParameter("block_3d_base: n must be >= 0");
  if (two_j < 1 || two_j % 2 == 0) throw InvalidParameter("block_3d_base: j must be a positive half-integer");
  const double c2 = p.convention.scale * p.convention.scale;
  const double x = branch == BaseBranch::lower ? std::sqrt(c2 * n) : std::sqrt(c2 * (n + 0.5 * two_j));
  Eigen::Matrix2d h;
  h << -p.m, x, x, p.m;
  SectorKey key{3, SectorKind::generic, n, 0, two_j,
                branch == BaseBranch::lower ? Family::antiparallel : Family::parallel};
  const int lp = (two_j + 1) / 2;
  const int lm = (two_j - 1) / 2;
  std::vector<std::string> names;
  if (branch == BaseBranch::lower) {
    names = {detail::coupled_name(n, lm, two_j, '-', ' '), detail::coupled_name(n - 1, lp, two_j, '+', ' ')};
  } else {
    names = {detail::coupled_name(n, lp, two_j, '-', ' '), detail::coupled_name(n - 1, lm, two_j, '+', ' ')};
  }
  return {key, h, SectorBasis{key, {}, std::move(names)}, two_j + 1};
}

// ---------------------------------------------------------------------------
// Total-spin basis for A = 0, B alpha = 1, m = gamma

/// Columns: chi_1 = |n+1>(|-+> - |+->)/sqrt2, chi_4 = |n,++>,
/// chi_3 = |n+1>(|-+> + |+->)/sqrt2, chi_2 = |n+2,-->, expressed in
/// (phi_1, ..., phi_4). This is the row order of the symmetric block.
inline Eigen::Matrix4d symm_basis_change() {
  const double r = 1.0 / std::numbers::sqrt2;
  Eigen::Matrix4d q;
  q << 0.0, 0.0, 0.0, 1.0,
       r, 0.0, r, 0.0,
       -r, 0.0, r, 0.0,
       0.0, 1.0, 0.0, 0.0;
  return q;
}

/// Block on the total-spin basis: first row and column vanish, the rest is a
/// traceless 3x3 with ladder entries sqrt(2) scale sqrt(n+k).
inline BlockMatrix block_symm(int n, double gamma, LadderConvention convention = LadderConvention::unit()) {
  if (n < 0) throw InvalidParameter("block_symm: n must be >= 0");
  const double x1 = std::numbers::sqrt2 * convention.scale * std::sqrt(n + 1.0);
  const double x2 = std::numbers::sqrt2 * convention.scale * std::sqrt(n + 2.0);
  Eigen::Matrix4d h;
  h << 0.0, 0.0, 0.0, 0.0,
       0.0, 2.0 * gamma, x1, 0.0,
       0.0, x1, 0.0, x2,
       0.0, 0.0, x2, -2.0 * gamma;
  SectorKey key{1, SectorKind::generic, n};
  SectorBasis basis{key, {}, {"|n+1>|0,0>", "|n>|1,1>", "|n+1>|1,0>", "|n+2>|1,-1>"}};
  return {key, h, basis};
}

}  // namespace dirosc

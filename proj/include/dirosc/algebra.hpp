#pragma once

// Truncated Fock / *-spin / isospin operator algebra.
//
// Everything here works on the uncoupled product basis and serves as the
// ground truth that the sector blocks are checked against. Matrices are
// dense; the full-space builders are meant for desk-scale truncations only.

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <tuple>
#include <vector>

#include <Eigen/Dense>

#include "dirosc/params.hpp"

namespace dirosc {

using cplx = std::complex<double>;

/// Index of a +/-1 projection inside a two-level factor (+ comes first).
constexpr int projection_index(int projection) { return projection > 0 ? 0 : 1; }

/// One state of the uncoupled product basis.
///
/// d=1: quanta[0] = n.  d=2: quanta = (n_R, n_L).  d=3: quanta = (n_x, n_y, n_z).
/// `star` is the sigma (d=1,2) or Sigma (d=3) projection, `iso` the isospin
/// projection and `spin` the ordinary spin projection (d=3 only).
struct BasisLabel {
  std::array<int, 3> quanta{};
  int spin = +1;
  int star = +1;
  int iso = +1;

  auto key() const {
    return std::tuple(quanta, projection_index(spin), projection_index(star), projection_index(iso));
  }
  bool operator==(const BasisLabel& o) const { return key() == o.key(); }
  bool operator<(const BasisLabel& o) const { return key() < o.key(); }
};

inline BasisLabel label_1d(int n, int sigma, int tau) { return BasisLabel{{n, 0, 0}, +1, sigma, tau}; }

inline BasisLabel label_2d(int n_r, int n_l, int sigma, int tau) {
  return BasisLabel{{n_r, n_l, 0}, +1, sigma, tau};
}

inline std::string to_string(const BasisLabel& l, int dimension) {
  auto pm = [](int s) { return s > 0 ? '+' : '-'; };
  std::string out = "|";
  for (int k = 0; k < dimension; ++k) {
    if (k) out += ',';
    out += std::to_string(l.quanta[static_cast<std::size_t>(k)]);
  }
  out += ';';
  if (dimension == 3) out += pm(l.spin);
  out += pm(l.star);
  out += pm(l.iso);
  out += '>';
  return out;
}

enum class Truncation { per_mode, total_quanta };

/// Ordered product basis. d=1,2 truncate each mode at n_max; d=3 truncates
/// the total number of quanta at n_max so that orbital angular momentum stays
/// exact inside the truncated space.
class ProductBasis {
 public:
  ProductBasis(int dimension, int n_max) : dimension_(dimension), n_max_(n_max) {
    if (dimension < 1 || dimension > 3) throw InvalidParameter("ProductBasis: dimension must be 1, 2 or 3");
    if (n_max < 1) throw InvalidTruncation("ProductBasis: n_max must be >= 1");
    truncation_ = dimension == 3 ? Truncation::total_quanta : Truncation::per_mode;

    if (dimension == 1) {
      for (int n = 0; n <= n_max; ++n) orbitals_.push_back({n, 0, 0});
    } else if (dimension == 2) {
      for (int r = 0; r <= n_max; ++r)
        for (int l = 0; l <= n_max; ++l) orbitals_.push_back({r, l, 0});
    } else {
      for (int x = 0; x <= n_max; ++x)
        for (int y = 0; x + y <= n_max; ++y)
          for (int z = 0; x + y + z <= n_max; ++z) orbitals_.push_back({x, y, z});
    }
    for (std::size_t i = 0; i < orbitals_.size(); ++i) orbital_index_.emplace(orbitals_[i], i);

    internal_ = dimension == 3 ? 8 : 4;
    labels_.reserve(orbitals_.size() * internal_);
    for (const auto& q : orbitals_) {
      for (std::size_t k = 0; k < internal_; ++k) {
        BasisLabel l;
        l.quanta = q;
        if (dimension == 3) {
          l.spin = (k / 4) == 0 ? +1 : -1;
          l.star = ((k / 2) % 2) == 0 ? +1 : -1;
        } else {
          l.star = (k / 2) == 0 ? +1 : -1;
        }
        l.iso = (k % 2) == 0 ? +1 : -1;
        labels_.push_back(l);
      }
    }
  }

  int dimension() const { return dimension_; }
  int n_max() const { return n_max_; }
  Truncation truncation() const { return truncation_; }
  std::size_t size() const { return labels_.size(); }
  std::size_t orbital_count() const { return orbitals_.size(); }
  std::size_t internal_count() const { return internal_; }
  const std::vector<BasisLabel>& labels() const { return labels_; }
  const BasisLabel& label(std::size_t i) const { return labels_.at(i); }
  const std::vector<std::array<int, 3>>& orbitals() const { return orbitals_; }

  std::optional<std::size_t> orbital_index(const std::array<int, 3>& q) const {
    auto it = orbital_index_.find(q);
    if (it == orbital_index_.end()) return std::nullopt;
    return it->second;
  }

  std::optional<std::size_t> index_of(const BasisLabel& l) const {
    auto o = orbital_index(l.quanta);
    if (!o) return std::nullopt;
    std::size_t k = dimension_ == 3 ? static_cast<std::size_t>(projection_index(l.spin) * 4) : 0;
    k += static_cast<std::size_t>(projection_index(l.star) * 2 + projection_index(l.iso));
    return *o * internal_ + k;
  }

  int total_quanta(std::size_t i) const {
    const auto& q = labels_.at(i).quanta;
    return q[0] + q[1] + q[2];
  }

  /// States safely away from the truncation edge: every quantum number
  /// (d=1,2) or the total (d=3) is at most n_max - 2.
  bool is_interior(std::size_t i) const {
    const auto& q = labels_.at(i).quanta;
    if (truncation_ == Truncation::total_quanta) return q[0] + q[1] + q[2] <= n_max_ - 2;
    return std::all_of(q.begin(), q.begin() + dimension_, [&](int v) { return v <= n_max_ - 2; });
  }

  std::vector<std::size_t> interior_indices() const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < size(); ++i)
      if (is_interior(i)) out.push_back(i);
    return out;
  }

 private:
  int dimension_;
  int n_max_;
  Truncation truncation_;
  std::size_t internal_ = 4;
  std::vector<std::array<int, 3>> orbitals_;
  std::map<std::array<int, 3>, std::size_t> orbital_index_;
  std::vector<BasisLabel> labels_;
};

struct OperatorMatrix {
  std::shared_ptr<const ProductBasis> basis;
  Eigen::MatrixXcd entries;

  Eigen::Index dim() const { return entries.rows(); }
};

inline double hermiticity_error(const OperatorMatrix& op) {
  return (op.entries - op.entries.adjoint()).cwiseAbs().maxCoeff();
}

/// Single-mode annihilator (or creator) on {|0>, ..., |n_max>}.
inline Eigen::MatrixXd ladder_matrix(int n_max, LadderConvention convention, bool dagger = false) {
  if (n_max < 1) throw InvalidTruncation("ladder_matrix: n_max must be >= 1");
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n_max + 1, n_max + 1);
  for (int n = 1; n <= n_max; ++n) a(n - 1, n) = convention.scale * std::sqrt(static_cast<double>(n));
  if (dagger) return a.transpose();
  return a;
}

namespace detail {

inline Eigen::MatrixXcd kron(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
  Eigen::MatrixXcd out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j) out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

inline Eigen::Matrix2cd raising() {
  Eigen::Matrix2cd m = Eigen::Matrix2cd::Zero();
  m(0, 1) = 1.0;  // |+><-|
  return m;
}
inline Eigen::Matrix2cd pauli_x() {
  Eigen::Matrix2cd m;
  m << 0.0, 1.0, 1.0, 0.0;
  return m;
}
inline Eigen::Matrix2cd pauli_y() {
  Eigen::Matrix2cd m;
  m << 0.0, cplx(0, -1), cplx(0, 1), 0.0;
  return m;
}
inline Eigen::Matrix2cd pauli_z() {
  Eigen::Matrix2cd m;
  m << 1.0, 0.0, 0.0, -1.0;
  return m;
}

// Operators on the internal factor: (spin ⊗) star ⊗ iso.
inline Eigen::MatrixXcd on_star(int dimension, const Eigen::Matrix2cd& x) {
  const Eigen::MatrixXcd i2 = Eigen::Matrix2cd::Identity();
  Eigen::MatrixXcd s = kron(x, i2);
  return dimension == 3 ? kron(i2, s) : s;
}
inline Eigen::MatrixXcd on_iso(int dimension, const Eigen::Matrix2cd& x) {
  const Eigen::MatrixXcd i2 = Eigen::Matrix2cd::Identity();
  Eigen::MatrixXcd s = kron(i2, x);
  return dimension == 3 ? kron(i2, s) : s;
}
inline Eigen::MatrixXcd on_spin(const Eigen::Matrix2cd& x) {
  return kron(x, Eigen::MatrixXcd::Identity(4, 4));
}

inline Eigen::MatrixXcd embed(const Eigen::MatrixXcd& orbital, const Eigen::MatrixXcd& internal) {
  return kron(orbital, internal);
}

// Annihilator of one orbital axis acting on the orbital factor of `basis`.
inline Eigen::MatrixXcd orbital_ladder(const ProductBasis& basis, int axis, double element_scale) {
  const auto n = static_cast<Eigen::Index>(basis.orbital_count());
  Eigen::MatrixXcd a = Eigen::MatrixXcd::Zero(n, n);
  const auto& orb = basis.orbitals();
  for (std::size_t i = 0; i < orb.size(); ++i) {
    const int k = orb[i][static_cast<std::size_t>(axis)];
    if (k == 0) continue;
    auto lowered = orb[i];
    lowered[static_cast<std::size_t>(axis)] -= 1;
    if (auto j = basis.orbital_index(lowered)) {
      a(static_cast<Eigen::Index>(*j), static_cast<Eigen::Index>(i)) = element_scale * std::sqrt(static_cast<double>(k));
    }
  }
  return a;
}

inline Eigen::MatrixXcd orbital_number(const ProductBasis& basis, int axis) {
  const auto n = static_cast<Eigen::Index>(basis.orbital_count());
  Eigen::MatrixXcd num = Eigen::MatrixXcd::Zero(n, n);
  for (std::size_t i = 0; i < basis.orbital_count(); ++i)
    num(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i)) = basis.orbitals()[i][static_cast<std::size_t>(axis)];
  return num;
}

// Matrix element of the mode annihilator: a|n> = ladder_element(...) sqrt(n)|n-1>.
// The d=2 chiral operator A_R = a1 + i a2 carries an extra sqrt(2).
inline double ladder_element(const ModelParams& p) {
  return p.dimension == 2 ? std::numbers::sqrt2 * p.convention.scale : p.convention.scale;
}

}  // namespace detail

/// Dense H^(d) on the truncated product basis.
///
/// d=1,2: sigma_+ a + sigma_- a^+ + m sigma_3 + (A sigma_3 + B)(alpha T_+ a + alpha T_- a^+ + gamma T_3),
///        with a -> A_R on the n_R mode for d=2 (n_L is a spectator).
/// d=3:   Sigma_+ S.a + Sigma_- S.a^+ + m Sigma_3 + (A + B Sigma_3)(alpha T_+ S.a + alpha T_- S.a^+ + gamma T_3).
inline OperatorMatrix build_full_hamiltonian(const ModelParams& p, std::shared_ptr<const ProductBasis> basis) {
  p.validate();
  if (basis->dimension() != p.dimension) throw DimensionMismatch("build_full_hamiltonian: basis/params dimension differ");
  using namespace detail;
  const int d = p.dimension;
  const auto n_orb = static_cast<Eigen::Index>(basis->orbital_count());
  const Eigen::MatrixXcd one_orb = Eigen::MatrixXcd::Identity(n_orb, n_orb);
  const auto n_int = static_cast<Eigen::Index>(basis->internal_count());
  const Eigen::MatrixXcd one_int = Eigen::MatrixXcd::Identity(n_int, n_int);

  Eigen::MatrixXcd lower;  // the operator the *-spin and isospin raisers multiply
  if (d == 3) {
    const std::array<Eigen::Matrix2cd, 3> pauli{pauli_x(), pauli_y(), pauli_z()};
    lower = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(basis->size()), static_cast<Eigen::Index>(basis->size()));
    for (int k = 0; k < 3; ++k)
      lower += embed(orbital_ladder(*basis, k, p.convention.scale), on_spin(pauli[static_cast<std::size_t>(k)]));
  } else {
    lower = embed(orbital_ladder(*basis, 0, ladder_element(p)), one_int);
  }

  const Eigen::MatrixXcd star_up = embed(one_orb, on_star(d, raising()));
  const Eigen::MatrixXcd star_z = embed(one_orb, on_star(d, pauli_z()));
  const Eigen::MatrixXcd iso_up = embed(one_orb, on_iso(d, raising()));
  const Eigen::MatrixXcd iso_z = embed(one_orb, on_iso(d, pauli_z()));
  const Eigen::MatrixXcd identity = Eigen::MatrixXcd::Identity(star_z.rows(), star_z.cols());

  const Eigen::MatrixXcd coupling = d == 3 ? Eigen::MatrixXcd(p.A * identity + p.B * star_z)
                                           : Eigen::MatrixXcd(p.A * star_z + p.B * identity);

  Eigen::MatrixXcd kinetic = star_up * lower;
  Eigen::MatrixXcd field = p.alpha * (iso_up * lower);
  Eigen::MatrixXcd h = kinetic + kinetic.adjoint() + p.m * star_z;
  Eigen::MatrixXcd f = field + field.adjoint() + p.gamma * iso_z;
  h += coupling * f;
  return OperatorMatrix{std::move(basis), std::move(h)};
}

inline OperatorMatrix build_full_hamiltonian(const ModelParams& p, int n_max) {
  if (n_max < 2) throw InvalidTruncation("build_full_hamiltonian: n_max must be >= 2");
  return build_full_hamiltonian(p, std::make_shared<const ProductBasis>(p.dimension, n_max));
}

enum class InvariantKind {
  number,   ///< I^(d): sector label of the extended model
  base,     ///< invariant of the field-free oscillator (no isospin term, no offset)
  angular,  ///< d=2: J_3 + T_3/2; d=3: J_3
};

/// Conserved operators built from number operators, so they do not depend on
/// the ladder convention.
///
/// number: d=1,2: N + (sigma_3 + T_3)/2 - 1 (N = n or n_R); d=3: N + (Sigma_3 + T_3)/2.
/// base:   N + sigma_3/2 (Sigma_3 for d=3).
inline OperatorMatrix build_invariant(const ModelParams& p, std::shared_ptr<const ProductBasis> basis,
                                      InvariantKind kind = InvariantKind::number) {
  if (basis->dimension() != p.dimension) throw DimensionMismatch("build_invariant: basis/params dimension differ");
  const auto dim = static_cast<Eigen::Index>(basis->size());

  if (kind == InvariantKind::angular && p.dimension == 1) {
    throw InvalidParameter("build_invariant: no angular invariant in one dimension");
  }
  if (kind == InvariantKind::angular && p.dimension == 3) {
    using namespace detail;
    // J_3 = L_3 + S_3 with L_3 = -i (b_x^+ b_y - b_y^+ b_x) on normalized ladders.
    const Eigen::MatrixXcd bx = orbital_ladder(*basis, 0, 1.0);
    const Eigen::MatrixXcd by = orbital_ladder(*basis, 1, 1.0);
    const Eigen::MatrixXcd l3 = cplx(0, -1) * (bx.adjoint() * by - by.adjoint() * bx);
    const auto n_int = static_cast<Eigen::Index>(basis->internal_count());
    Eigen::MatrixXcd j3 = embed(l3, Eigen::MatrixXcd::Identity(n_int, n_int)) +
                          embed(Eigen::MatrixXcd::Identity(l3.rows(), l3.cols()), on_spin(0.5 * pauli_z()));
    return OperatorMatrix{std::move(basis), std::move(j3)};
  }

  Eigen::MatrixXcd diag = Eigen::MatrixXcd::Zero(dim, dim);
  for (std::size_t i = 0; i < basis->size(); ++i) {
    const auto& l = basis->label(i);
    double v = 0.0;
    switch (kind) {
      case InvariantKind::number:
        v = p.dimension == 3 ? (l.quanta[0] + l.quanta[1] + l.quanta[2]) + 0.5 * (l.star + l.iso)
                             : l.quanta[0] + 0.5 * (l.star + l.iso) - 1.0;
        break;
      case InvariantKind::base:
        v = (p.dimension == 3 ? l.quanta[0] + l.quanta[1] + l.quanta[2] : l.quanta[0]) + 0.5 * l.star;
        break;
      case InvariantKind::angular:  // d=2
        v = l.quanta[0] - l.quanta[1] + 0.5 * (l.star + l.iso);
        break;
    }
    diag(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i)) = v;
  }
  return OperatorMatrix{std::move(basis), std::move(diag)};
}

inline OperatorMatrix build_invariant(const ModelParams& p, int n_max, InvariantKind kind = InvariantKind::number) {
  return build_invariant(p, std::make_shared<const ProductBasis>(p.dimension, n_max), kind);
}

/// Components of J = L + S for d=3 on normalized ladders.
inline std::array<OperatorMatrix, 3> build_angular_momentum(std::shared_ptr<const ProductBasis> basis) {
  if (basis->dimension() != 3) throw DimensionMismatch("build_angular_momentum: requires dimension 3");
  using namespace detail;
  const std::array<Eigen::MatrixXcd, 3> b{orbital_ladder(*basis, 0, 1.0), orbital_ladder(*basis, 1, 1.0),
                                          orbital_ladder(*basis, 2, 1.0)};
  const std::array<Eigen::Matrix2cd, 3> pauli{pauli_x(), pauli_y(), pauli_z()};
  const auto n_orb = b[0].rows();
  const Eigen::MatrixXcd one_orb = Eigen::MatrixXcd::Identity(n_orb, n_orb);
  const Eigen::MatrixXcd one_int = Eigen::MatrixXcd::Identity(8, 8);

  std::array<OperatorMatrix, 3> j;
  for (int i = 0; i < 3; ++i) {
    const int k1 = (i + 1) % 3;
    const int k2 = (i + 2) % 3;
    const Eigen::MatrixXcd l = cplx(0, -1) * (b[static_cast<std::size_t>(k1)].adjoint() * b[static_cast<std::size_t>(k2)] -
                                              b[static_cast<std::size_t>(k2)].adjoint() * b[static_cast<std::size_t>(k1)]);
    j[static_cast<std::size_t>(i)] = OperatorMatrix{
        basis, embed(l, one_int) + embed(one_orb, on_spin(0.5 * pauli[static_cast<std::size_t>(i)]))};
  }
  return j;
}

inline OperatorMatrix build_j_squared(std::shared_ptr<const ProductBasis> basis) {
  auto j = build_angular_momentum(basis);
  Eigen::MatrixXcd j2 = j[0].entries * j[0].entries + j[1].entries * j[1].entries + j[2].entries * j[2].entries;
  return OperatorMatrix{std::move(basis), std::move(j2)};
}

/// Max-abs entry of [A, B] restricted to the rows and columns in `mask`.
inline double commutator_norm(const OperatorMatrix& a, const OperatorMatrix& b, std::span<const std::size_t> mask) {
  if (a.entries.rows() != b.entries.rows() || a.entries.cols() != b.entries.cols() ||
      a.entries.rows() != a.entries.cols()) {
    throw DimensionMismatch("commutator_norm: operators must be square and of equal size");
  }
  const Eigen::MatrixXcd c = a.entries * b.entries - b.entries * a.entries;
  double worst = 0.0;
  for (std::size_t r : mask) {
    if (static_cast<Eigen::Index>(r) >= c.rows()) throw DimensionMismatch("commutator_norm: mask index out of range");
    for (std::size_t s : mask)
      worst = std::max(worst, std::abs(c(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(s))));
  }
  return worst;
}

inline double commutator_norm(const OperatorMatrix& a, const OperatorMatrix& b) {
  std::vector<std::size_t> all(static_cast<std::size_t>(a.dim()));
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
  return commutator_norm(a, b, all);
}

// ---------------------------------------------------------------------------
// Label-level action of H for d=1,2. Used to generate sector blocks straight
// from the operator expression, without building the full matrix.

struct Term {
  BasisLabel target;
  double coeff;
};

inline std::vector<Term> apply_hamiltonian(const ModelParams& p, const BasisLabel& s) {
  if (p.dimension == 3) throw DimensionMismatch("apply_hamiltonian: label-level action is defined for d=1,2");
  const double c = detail::ladder_element(p);
  const int n = s.quanta[0];
  const double k = p.A * s.star + p.B;  // (A sigma_3 + B) commutes with the field factor
  std::vector<Term> out;
  auto shifted = [&](int dn, int star, int iso) {
    BasisLabel t = s;
    t.quanta[0] += dn;
    t.star = star;
    t.iso = iso;
    return t;
  };
  // sigma_+ a and sigma_- a^+
  if (s.star < 0 && n >= 1) out.push_back({shifted(-1, +1, s.iso), c * std::sqrt(static_cast<double>(n))});
  if (s.star > 0) out.push_back({shifted(+1, -1, s.iso), c * std::sqrt(static_cast<double>(n + 1))});
  // alpha T_+ a and alpha T_- a^+
  if (s.iso < 0 && n >= 1) out.push_back({shifted(-1, s.star, +1), k * p.alpha * c * std::sqrt(static_cast<double>(n))});
  if (s.iso > 0) out.push_back({shifted(+1, s.star, -1), k * p.alpha * c * std::sqrt(static_cast<double>(n + 1))});
  // diagonal: m sigma_3 + (A sigma_3 + B) gamma T_3
  out.push_back({s, p.m * s.star + k * p.gamma * s.iso});
  return out;
}

/// <x|H|y> for every pair of the given labels (real for d=1,2).
inline Eigen::MatrixXd operator_block(const ModelParams& p, std::span<const BasisLabel> states) {
  const auto k = static_cast<Eigen::Index>(states.size());
  Eigen::MatrixXd h = Eigen::MatrixXd::Zero(k, k);
  for (Eigen::Index col = 0; col < k; ++col) {
    for (const auto& term : apply_hamiltonian(p, states[static_cast<std::size_t>(col)])) {
      for (Eigen::Index row = 0; row < k; ++row)
        if (states[static_cast<std::size_t>(row)] == term.target) h(row, col) += term.coeff;
    }
  }
  return h;
}

}  // namespace dirosc

#pragma once

// Cyclic Jacobi diagonalization for the small real-symmetric sector blocks.
// Kept deliberately independent of Eigen's solvers so that block spectra and
// full-space spectra are computed by different code.

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "dirosc/params.hpp"

namespace dirosc {

/// Eigenpairs of a symmetric block, eigenvalues ascending.
///
/// `branch_map[i]` is the position in `values` of the i-th labelled branch
/// (E1..E4) when a closed form supplies labels; empty otherwise.
/// `fallback` records that the vectors came from Jacobi rather than from a
/// closed-form expression.
struct EigenSystem {
  Eigen::VectorXd values;
  Eigen::MatrixXd vectors;
  std::vector<int> branch_map;
  bool fallback = false;

  Eigen::Index size() const { return values.size(); }
};

inline constexpr int kJacobiMaxOrder = 8;

inline double off_diagonal_norm(const Eigen::MatrixXd& a) {
  double s = 0.0;
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      if (i != j) s += a(i, j) * a(i, j);
  return std::sqrt(s);
}

inline void require_symmetric(const Eigen::MatrixXd& a, const char* where) {
  if (a.rows() != a.cols()) throw NonSymmetricInput(std::string(where) + ": matrix is not square");
  const double scale = std::max(1.0, a.cwiseAbs().maxCoeff());
  if ((a - a.transpose()).cwiseAbs().maxCoeff() > 1e-14 * scale) {
    throw NonSymmetricInput(std::string(where) + ": matrix is not symmetric");
  }
}

/// Sorts eigenpairs ascending and fixes each vector's sign so that its
/// largest-magnitude component is positive.
inline void canonicalize(EigenSystem& es) {
  const auto k = es.values.size();
  std::vector<Eigen::Index> order(static_cast<std::size_t>(k));
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](Eigen::Index a, Eigen::Index b) { return es.values(a) < es.values(b); });
  Eigen::VectorXd v(k);
  Eigen::MatrixXd w(es.vectors.rows(), k);
  for (Eigen::Index i = 0; i < k; ++i) {
    v(i) = es.values(order[static_cast<std::size_t>(i)]);
    w.col(i) = es.vectors.col(order[static_cast<std::size_t>(i)]);
    Eigen::Index big = 0;
    w.col(i).cwiseAbs().maxCoeff(&big);
    if (w(big, i) < 0.0) w.col(i) = -w.col(i);
  }
  es.values = std::move(v);
  es.vectors = std::move(w);
}

/// Full eigensystem of a symmetric k x k matrix (k <= 8) by cyclic Jacobi
/// rotations. Throws NonSymmetricInput for non-symmetric input.
inline EigenSystem jacobi_eigensolver(const Eigen::MatrixXd& input) {
  require_symmetric(input, "jacobi_eigensolver");
  const Eigen::Index k = input.rows();
  if (k < 1 || k > kJacobiMaxOrder) throw InvalidParameter("jacobi_eigensolver: order must be in [1, 8]");

  Eigen::MatrixXd a = 0.5 * (input + input.transpose());
  Eigen::MatrixXd v = Eigen::MatrixXd::Identity(k, k);
  const double norm = std::max(1.0, a.norm());

  for (int sweep = 0; sweep < 64; ++sweep) {
    if (off_diagonal_norm(a) < 1e-15 * norm) break;
    for (Eigen::Index p = 0; p < k - 1; ++p) {
      for (Eigen::Index q = p + 1; q < k; ++q) {
        const double apq = a(p, q);
        if (apq == 0.0) continue;
        // Tiny element relative to both diagonals: drop it outright.
        if (sweep > 3 && std::abs(apq) < 1e-18 * (std::abs(a(p, p)) + std::abs(a(q, q)))) {
          a(p, q) = a(q, p) = 0.0;
          continue;
        }
        const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
        const double t = (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (Eigen::Index r = 0; r < k; ++r) {
          const double arp = a(r, p);
          const double arq = a(r, q);
          a(r, p) = c * arp - s * arq;
          a(r, q) = s * arp + c * arq;
        }
        for (Eigen::Index r = 0; r < k; ++r) {
          const double apr = a(p, r);
          const double aqr = a(q, r);
          a(p, r) = c * apr - s * aqr;
          a(q, r) = s * apr + c * aqr;
        }
        a(p, q) = a(q, p) = 0.0;
        for (Eigen::Index r = 0; r < k; ++r) {
          const double vrp = v(r, p);
          const double vrq = v(r, q);
          v(r, p) = c * vrp - s * vrq;
          v(r, q) = s * vrp + c * vrq;
        }
      }
    }
  }
  if (off_diagonal_norm(a) > 1e-13 * norm) throw Error("jacobi_eigensolver: no convergence");

  EigenSystem es;
  es.values = a.diagonal();
  es.vectors = std::move(v);
  canonicalize(es);
  return es;
}

/// max_i |H v_i - lambda_i v_i| / max(1, |lambda_i|)
inline double max_relative_residual(const Eigen::MatrixXd& h, const EigenSystem& es) {
  double worst = 0.0;
  for (Eigen::Index i = 0; i < es.values.size(); ++i) {
    const double r = (h * es.vectors.col(i) - es.values(i) * es.vectors.col(i)).norm();
    worst = std::max(worst, r / std::max(1.0, std::abs(es.values(i))));
  }
  return worst;
}

inline double orthonormality_error(const EigenSystem& es) {
  const auto k = es.vectors.cols();
  return (es.vectors.transpose() * es.vectors - Eigen::MatrixXd::Identity(k, k)).cwiseAbs().maxCoeff();
}

}  // namespace dirosc

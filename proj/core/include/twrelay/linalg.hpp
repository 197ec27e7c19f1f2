#pragma once

#include <Eigen/Dense>
#include <complex>

namespace twrelay {

using Complex = std::complex<double>;

// Dense column-major complex matrices throughout. The storage order is an
// internal constant (Eigen's default) and is never observable through the
// public API.
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RVector = Eigen::VectorXd;

/// Centralized numerical tolerances.
namespace tol {
inline constexpr double orthonormality = 1e-10;  // ‖UᴴU − I‖_F budget per unit dimension
inline constexpr double reconstruction = 1e-9;   // relative factorization residual
inline constexpr double hermiticity = 1e-10;     // relative ‖A − Aᴴ‖_F bound
}  // namespace tol

/// Default rank tolerance: max(rows, cols) * eps * top singular value.
double rank_tolerance(Eigen::Index rows, Eigen::Index cols, double top_singular_value);

/// Full singular value decomposition A = U diag(S) Vᴴ.
struct SvdResult {
  CMatrix u;  ///< rows×rows, columns ordered by descending singular value
  RVector s;  ///< min(rows, cols) nonnegative values, descending
  CMatrix v;  ///< cols×cols

  /// Columns of U beyond index `rank`, i.e. the orthonormal complement of
  /// the first `rank` left singular directions.
  CMatrix left_complement(Eigen::Index rank) const { return u.rightCols(u.cols() - rank); }
};

/// Hermitian eigendecomposition A = U diag(Λ) Uᴴ, eigenvalues descending.
struct EighResult {
  RVector eigenvalues;
  CMatrix eigenvectors;
};

/// Full SVD. Throws ContractViolation on non-finite input and
/// NumericalError if the backend fails to converge.
SvdResult svd(const CMatrix& a);

/// Hermitian eigendecomposition, eigenvalues sorted descending.
/// Throws ContractViolation if ‖A − Aᴴ‖_F > hermiticity · ‖A‖_F.
EighResult eigh(const CMatrix& a);

/// Kronecker product, (r_a·r_b) × (c_a·c_b).
CMatrix kron(const CMatrix& a, const CMatrix& b);

/// Column-stacking vectorization and its inverse. unvec(vec(A), r, c) == A
/// exactly (bit level).
CVector vec(const CMatrix& a);
CMatrix unvec(const CVector& v, Eigen::Index rows, Eigen::Index cols);

}  // namespace twrelay

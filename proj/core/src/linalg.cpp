#include "twrelay/linalg.hpp"

#include <algorithm>
#include <limits>

#include "twrelay/errors.hpp"

namespace twrelay {

double rank_tolerance(Eigen::Index rows, Eigen::Index cols, double top_singular_value) {
  return static_cast<double>(std::max(rows, cols)) *
         std::numeric_limits<double>::epsilon() * top_singular_value;
}

namespace {

template <typename Solver>
SvdResult run_svd(Solver& solver, const CMatrix& a) {
  solver.compute(a, Eigen::ComputeFullU | Eigen::ComputeFullV);
  if (solver.info() != Eigen::Success) {
    throw NumericalError("svd: backend did not converge");
  }
  return SvdResult{solver.matrixU(), solver.singularValues(), solver.matrixV()};
}

}  // namespace

SvdResult svd(const CMatrix& a) {
  if (!a.allFinite()) {
    throw ContractViolation("svd: input has non-finite entries");
  }
  // Jacobi is the more robust choice for the small blocks the designs
  // produce; divide-and-conquer takes over for larger inputs.
  if (std::min(a.rows(), a.cols()) <= 16) {
    Eigen::JacobiSVD<CMatrix> solver;
    return run_svd(solver, a);
  }
  Eigen::BDCSVD<CMatrix> solver;
  return run_svd(solver, a);
}

EighResult eigh(const CMatrix& a) {
  if (a.rows() != a.cols()) {
    throw ContractViolation("eigh: input must be square");
  }
  if (!a.allFinite()) {
    throw ContractViolation("eigh: input has non-finite entries");
  }
  const double asym = (a - a.adjoint()).norm();
  if (asym > tol::hermiticity * a.norm()) {
    throw ContractViolation("eigh: input is not Hermitian within tolerance");
  }
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(a);
  if (solver.info() != Eigen::Success) {
    throw NumericalError("eigh: backend did not converge");
  }
  // Eigen returns ascending order; the contract is descending.
  EighResult out;
  out.eigenvalues = solver.eigenvalues().reverse();
  out.eigenvectors = solver.eigenvectors().rowwise().reverse();
  return out;
}

CMatrix kron(const CMatrix& a, const CMatrix& b) {
  CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index j = 0; j < a.cols(); ++j) {
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

CVector vec(const CMatrix& a) {
  return CVector{a.reshaped()};
}

CMatrix unvec(const CVector& v, Eigen::Index rows, Eigen::Index cols) {
  if (v.size() != rows * cols) {
    throw ContractViolation("unvec: length does not match rows*cols");
  }
  return Eigen::Map<const CMatrix>(v.data(), rows, cols);
}

}  // namespace twrelay

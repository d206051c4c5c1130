#pragma once

#include <Eigen/Dense>

#include "isa/error.hpp"
#include "isa/types.hpp"

namespace isa {

inline constexpr double kEigenFloor = 1e-12;

/// Inverse square root of a symmetric positive definite matrix via
/// eigendecomposition. Eigenvalues below `floor * max(1, lambda_max)` are
/// treated as singular.
inline MatrixXd inverse_sqrt_spd(const MatrixXd& s, double floor = kEigenFloor) {
  Eigen::SelfAdjointEigenSolver<MatrixXd> eig(s);
  if (eig.info() != Eigen::Success) throw NumericalError("eigendecomposition failed");
  const VectorXd& lambda = eig.eigenvalues();
  const double cutoff = floor * std::max(1.0, lambda.maxCoeff());
  if (lambda.minCoeff() < cutoff) throw SingularError("matrix is singular below the eigenvalue floor");
  const MatrixXd& u = eig.eigenvectors();
  return u * lambda.cwiseSqrt().cwiseInverse().asDiagonal() * u.transpose();
}

inline MatrixXcd inverse_sqrt_hpd(const MatrixXcd& s, double floor = kEigenFloor) {
  Eigen::SelfAdjointEigenSolver<MatrixXcd> eig(s);
  if (eig.info() != Eigen::Success) throw NumericalError("eigendecomposition failed");
  const VectorXd& lambda = eig.eigenvalues();
  const double cutoff = floor * std::max(1.0, lambda.maxCoeff());
  if (lambda.minCoeff() < cutoff) throw SingularError("matrix is singular below the eigenvalue floor");
  const MatrixXcd& u = eig.eigenvectors();
  return u * lambda.cwiseSqrt().cwiseInverse().asDiagonal() * u.adjoint();
}

/// (W W^T)^{-1/2} W, the closest orthogonal matrix to W in Frobenius norm.
inline MatrixXd symmetric_decorrelation(const MatrixXd& w) {
  return inverse_sqrt_spd(w * w.transpose()) * w;
}

}  // namespace isa

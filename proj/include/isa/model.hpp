#pragma once

// Mixing model z = A s and whitening.

#include <Eigen/Dense>
#include <cstdint>

#include "isa/error.hpp"
#include "isa/linalg.hpp"
#include "isa/rng.hpp"
#include "isa/types.hpp"

namespace isa {

inline constexpr double kUnitaryTolerance = 1e-10;

/// Orthogonal (real) or unitary (complex) mixing matrix.
class MixingModel {
 public:
  explicit MixingModel(FieldMatrix a) : a_(std::move(a)) {
    if (a_.rows() != a_.cols() || a_.rows() < 1) throw DimensionError("mixing matrix must be square and nonempty");
    const MatrixXcd c = a_.as_complex();
    const double err = (c.adjoint() * c - MatrixXcd::Identity(c.rows(), c.cols())).norm();
    if (!(err <= kUnitaryTolerance * static_cast<double>(c.rows())))
      throw ConfigError("mixing matrix is not orthogonal/unitary");
  }

  Index dim() const { return a_.rows(); }
  Field field() const { return a_.field; }
  const FieldMatrix& matrix() const { return a_; }

  static MixingModel identity(Index n, Field f = Field::Real) { return MixingModel(FieldMatrix::identity(n, f)); }

 private:
  FieldMatrix a_;
};

/// Left-multiplies every sample column by `w`.
inline SampleMatrix transform(const FieldMatrix& w, const SampleMatrix& x) {
  if (w.cols() != x.dim()) throw DimensionError("transform: matrix columns do not match sample dimension");
  return SampleMatrix(multiply(w, x.data()));
}

inline SampleMatrix mix(const MixingModel& a, const SampleMatrix& s) {
  if (a.dim() != s.dim()) throw DimensionError("mix: mixing matrix and sources differ in dimension");
  if (a.field() != s.field()) throw FieldError("mix: field of mixing matrix and sources differ");
  return transform(a.matrix(), s);
}

/// Haar-distributed orthogonal matrix: QR of a Gaussian matrix with the
/// signs of diag(R) folded into Q.
inline MixingModel random_orthogonal(Index n, std::uint64_t seed) {
  if (n < 1) throw DimensionError("random_orthogonal: dimension must be positive");
  Rng rng(seed);
  MatrixXd g(n, n);
  for (Index j = 0; j < n; ++j)
    for (Index i = 0; i < n; ++i) g(i, j) = rng.normal();
  Eigen::HouseholderQR<MatrixXd> qr(g);
  MatrixXd q = qr.householderQ() * MatrixXd::Identity(n, n);
  const MatrixXd& r = qr.matrixQR();
  for (Index j = 0; j < n; ++j)
    if (r(j, j) < 0) q.col(j) = -q.col(j);
  // Re-orthonormalize to push the residual well below the tolerance.
  q = symmetric_decorrelation(q);
  return MixingModel(FieldMatrix(std::move(q)));
}

/// Haar-distributed unitary matrix, same construction over C.
inline MixingModel random_unitary(Index n, std::uint64_t seed) {
  if (n < 1) throw DimensionError("random_unitary: dimension must be positive");
  Rng rng(seed);
  MatrixXcd g(n, n);
  const double s = std::sqrt(0.5);
  for (Index j = 0; j < n; ++j)
    for (Index i = 0; i < n; ++i) g(i, j) = {s * rng.normal(), s * rng.normal()};
  Eigen::HouseholderQR<MatrixXcd> qr(g);
  MatrixXcd q = qr.householderQ() * MatrixXcd::Identity(n, n);
  const MatrixXcd& r = qr.matrixQR();
  for (Index j = 0; j < n; ++j) {
    const std::complex<double> d = r(j, j);
    if (std::abs(d) > 0) q.col(j) *= d / std::abs(d);
  }
  q = inverse_sqrt_hpd(q * q.adjoint()) * q;
  return MixingModel(FieldMatrix::from_complex(q));
}

/// x -> V (x - mean).
struct WhiteningTransform {
  FieldMatrix mean;  // D x 1
  FieldMatrix v;     // D x D

  Index dim() const { return v.rows(); }
  Field field() const { return v.field; }

  static WhiteningTransform identity(Index n, Field f = Field::Real) {
    WhiteningTransform w;
    w.mean = f == Field::Real ? FieldMatrix(MatrixXd(MatrixXd::Zero(n, 1))) : FieldMatrix(MatrixXd::Zero(n, 1), MatrixXd::Zero(n, 1));
    w.v = FieldMatrix::identity(n, f);
    return w;
  }
};

/// Symmetric whitening V = U diag(lambda)^{-1/2} U^H of the empirical (T-1)
/// covariance.
inline WhiteningTransform fit_whitening(const SampleMatrix& z) {
  if (z.samples() <= z.dim()) throw DimensionError("fit_whitening: need more samples than dimensions");
  WhiteningTransform w;
  if (!z.is_complex()) {
    const VectorXd mean = z.re().rowwise().mean();
    w.mean = FieldMatrix(MatrixXd(mean));
    w.v = FieldMatrix(inverse_sqrt_spd(covariance(z.re())));
  } else {
    const MatrixXcd c = z.as_complex();
    const Eigen::VectorXcd mean = c.rowwise().mean();
    w.mean = FieldMatrix::from_complex(MatrixXcd(mean));
    w.v = FieldMatrix::from_complex(inverse_sqrt_hpd(covariance(c)));
  }
  return w;
}

inline SampleMatrix apply_whitening(const WhiteningTransform& w, const SampleMatrix& z) {
  if (w.dim() != z.dim() || w.mean.rows() != z.dim()) throw DimensionError("apply_whitening: dimension mismatch");
  if (w.field() != z.field()) throw FieldError("apply_whitening: field mismatch");
  if (!z.is_complex()) {
    const MatrixXd centered = z.re().colwise() - w.mean.re.col(0);
    return SampleMatrix(MatrixXd(w.v.re * centered));
  }
  const MatrixXcd centered = z.as_complex().colwise() - w.mean.as_complex().col(0);
  return SampleMatrix::from_complex(MatrixXcd(w.v.as_complex() * centered));
}

}  // namespace isa

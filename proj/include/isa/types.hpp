#pragma once

#include <Eigen/Dense>
#include <complex>
#include <string>
#include <string_view>

#include "isa/error.hpp"

namespace isa {

using Eigen::Index;
using Eigen::MatrixXcd;
using Eigen::MatrixXd;
using Eigen::VectorXd;

enum class Field { Real, Complex };

inline std::string_view to_string(Field f) { return f == Field::Real ? "real" : "complex"; }

inline Field parse_field(std::string_view s) {
  if (s == "real") return Field::Real;
  if (s == "complex") return Field::Complex;
  throw ConfigError("unknown field tag '" + std::string(s) + "'");
}

/// A dense matrix over the reals or the complex numbers, stored as separate
/// real and imaginary parts. `im` is empty for real matrices.
struct FieldMatrix {
  Field field = Field::Real;
  MatrixXd re;
  MatrixXd im;

  FieldMatrix() = default;
  explicit FieldMatrix(MatrixXd real) : field(Field::Real), re(std::move(real)) {}
  FieldMatrix(MatrixXd real, MatrixXd imag) : field(Field::Complex), re(std::move(real)), im(std::move(imag)) {
    if (re.rows() != im.rows() || re.cols() != im.cols())
      throw DimensionError("real and imaginary parts differ in shape");
  }
  static FieldMatrix from_complex(const MatrixXcd& c) { return FieldMatrix(MatrixXd(c.real()), MatrixXd(c.imag())); }

  Index rows() const { return re.rows(); }
  Index cols() const { return re.cols(); }
  bool is_complex() const { return field == Field::Complex; }

  MatrixXcd as_complex() const {
    MatrixXcd c(re.rows(), re.cols());
    c.real() = re;
    if (is_complex())
      c.imag() = im;
    else
      c.imag().setZero();
    return c;
  }

  bool all_finite() const { return re.allFinite() && (!is_complex() || im.allFinite()); }

  static FieldMatrix identity(Index n, Field f = Field::Real) {
    if (f == Field::Real) return FieldMatrix(MatrixXd(MatrixXd::Identity(n, n)));
    return FieldMatrix(MatrixXd::Identity(n, n), MatrixXd::Zero(n, n));
  }

  friend bool operator==(const FieldMatrix& a, const FieldMatrix& b) {
    return a.field == b.field && a.re.rows() == b.re.rows() && a.re.cols() == b.re.cols() && a.re == b.re &&
           (a.field == Field::Real || a.im == b.im);
  }
};

/// Product `a * b` over the common field of the operands.
inline FieldMatrix multiply(const FieldMatrix& a, const FieldMatrix& b) {
  if (a.cols() != b.rows()) throw DimensionError("matrix product: inner dimensions differ");
  if (!a.is_complex() && !b.is_complex()) return FieldMatrix(MatrixXd(a.re * b.re));
  if (!a.is_complex()) return FieldMatrix(MatrixXd(a.re * b.re), MatrixXd(a.re * b.im));
  if (!b.is_complex()) return FieldMatrix(MatrixXd(a.re * b.re), MatrixXd(a.im * b.re));
  return FieldMatrix(MatrixXd(a.re * b.re - a.im * b.im), MatrixXd(a.re * b.im + a.im * b.re));
}

/// D x T samples; columns are time points.
class SampleMatrix {
 public:
  SampleMatrix() = default;

  explicit SampleMatrix(FieldMatrix data) : data_(std::move(data)) { validate(); }
  explicit SampleMatrix(MatrixXd real) : SampleMatrix(FieldMatrix(std::move(real))) {}
  SampleMatrix(MatrixXd real, MatrixXd imag) : SampleMatrix(FieldMatrix(std::move(real), std::move(imag))) {}
  static SampleMatrix from_complex(const MatrixXcd& c) { return SampleMatrix(FieldMatrix::from_complex(c)); }

  Field field() const { return data_.field; }
  bool is_complex() const { return data_.is_complex(); }
  Index dim() const { return data_.rows(); }
  Index samples() const { return data_.cols(); }
  const MatrixXd& re() const { return data_.re; }
  const MatrixXd& im() const { return data_.im; }
  const FieldMatrix& data() const { return data_; }
  MatrixXcd as_complex() const { return data_.as_complex(); }

  friend bool operator==(const SampleMatrix& a, const SampleMatrix& b) { return a.data_ == b.data_; }

 private:
  void validate() const {
    if (data_.rows() < 1) throw DimensionError("sample matrix needs at least one coordinate");
    if (data_.cols() < 2) throw DimensionError("sample matrix needs at least two samples");
    if (!data_.all_finite()) throw NumericalError("sample matrix contains non-finite entries");
  }

  FieldMatrix data_;
};

/// M subspaces of common dimension d; subspace m covers rows [m*d, (m+1)*d).
class BlockStructure {
 public:
  BlockStructure(Index subspaces, Index dim) : m_(subspaces), d_(dim) {
    if (m_ < 1 || d_ < 1) throw ConfigError("block structure needs M >= 1 and d >= 1");
  }

  Index subspaces() const { return m_; }
  Index dim() const { return d_; }
  Index total() const { return m_ * d_; }
  Index block_of(Index coordinate) const { return coordinate / d_; }
  Index first(Index block) const { return block * d_; }

  friend bool operator==(const BlockStructure&, const BlockStructure&) = default;

 private:
  Index m_;
  Index d_;
};

/// Unbiased (T-1) empirical covariance of the rows of x.
inline MatrixXd covariance(const MatrixXd& x) {
  const MatrixXd centered = x.colwise() - x.rowwise().mean();
  return centered * centered.transpose() / static_cast<double>(x.cols() - 1);
}

inline MatrixXcd covariance(const MatrixXcd& x) {
  const MatrixXcd centered = x.colwise() - x.rowwise().mean();
  return centered * centered.adjoint() / static_cast<double>(x.cols() - 1);
}

}  // namespace isa

#pragma once

// f-covariance machinery: the complex-to-real embedding, coordinate-wise
// function sets, block views, the subspace mask and the two dependence costs
// (masked Frobenius sum and log-determinant ratio).

#include <Eigen/Dense>
#include <cmath>
#include <functional>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "isa/error.hpp"
#include "isa/types.hpp"

namespace isa {

struct ScalarFunction {
  std::string name;
  std::function<double(double)> fn;
};

/// Built-in functions by name: cos, cos2 (= cos(2z)), identity, square, tanh.
inline ScalarFunction scalar_function(const std::string& name) {
  static const std::map<std::string, double (*)(double)> registry = {
      {"cos", [](double z) { return std::cos(z); }},
      {"cos2", [](double z) { return std::cos(2.0 * z); }},
      {"identity", [](double z) { return z; }},
      {"square", [](double z) { return z * z; }},
      {"tanh", [](double z) { return std::tanh(z); }},
  };
  const auto it = registry.find(name);
  if (it == registry.end()) throw ConfigError("unknown function '" + name + "'");
  return {name, it->second};
}

class FunctionSet {
 public:
  explicit FunctionSet(std::vector<ScalarFunction> funcs) : funcs_(std::move(funcs)) {
    if (funcs_.empty()) throw ConfigError("function set is empty");
  }

  /// Parses "cos,cos2".
  static FunctionSet parse(const std::string& list) {
    std::vector<ScalarFunction> funcs;
    std::stringstream ss(list);
    std::string item;
    while (std::getline(ss, item, ',')) {
      item.erase(0, item.find_first_not_of(' '));
      item.erase(item.find_last_not_of(' ') + 1);
      if (!item.empty()) funcs.push_back(scalar_function(item));
    }
    return FunctionSet(std::move(funcs));
  }

  static FunctionSet from_names(const std::vector<std::string>& names) {
    std::vector<ScalarFunction> funcs;
    for (const auto& n : names) funcs.push_back(scalar_function(n));
    return FunctionSet(std::move(funcs));
  }

  /// {cos(z), cos(2z)}.
  static FunctionSet standard() { return parse("cos,cos2"); }

  std::size_t size() const { return funcs_.size(); }
  const ScalarFunction& operator[](std::size_t i) const { return funcs_[i]; }
  auto begin() const { return funcs_.begin(); }
  auto end() const { return funcs_.end(); }

  std::vector<std::string> names() const {
    std::vector<std::string> out;
    for (const auto& f : funcs_) out.push_back(f.name);
    return out;
  }

 private:
  std::vector<ScalarFunction> funcs_;
};

/// [Re v1, Im v1, Re v2, Im v2, ...].
inline VectorXd phi_c(const Eigen::VectorXcd& v) {
  VectorXd out(2 * v.size());
  for (Index i = 0; i < v.size(); ++i) {
    out(2 * i) = v(i).real();
    out(2 * i + 1) = v(i).imag();
  }
  return out;
}

inline Eigen::VectorXcd phi_c_inverse(const VectorXd& x) {
  if (x.size() % 2 != 0) throw DimensionError("embedded vector has odd length");
  Eigen::VectorXcd v(x.size() / 2);
  for (Index i = 0; i < v.size(); ++i) v(i) = {x(2 * i), x(2 * i + 1)};
  return v;
}

/// Real rows of the sample matrix: itself for real data, the phi_c embedding
/// of every column for complex data.
inline MatrixXd embedded_rows(const SampleMatrix& y) {
  if (!y.is_complex()) return y.re();
  MatrixXd out(2 * y.dim(), y.samples());
  for (Index i = 0; i < y.dim(); ++i) {
    out.row(2 * i) = y.re().row(i);
    out.row(2 * i + 1) = y.im().row(i);
  }
  return out;
}

/// Side of one diagonal block in the embedded coordinates.
inline Index embedded_block_side(const BlockStructure& blocks, Field field) {
  return field == Field::Complex ? 2 * blocks.dim() : blocks.dim();
}

struct FCovMatrix {
  MatrixXd sigma;
  Field field = Field::Real;
  std::string function;
  Index samples = 0;
};

/// Covariance (T-1) of the rows of f applied entrywise to `rows`.
inline MatrixXd f_covariance_of_rows(const MatrixXd& rows, const ScalarFunction& f) {
  const MatrixXd fx = rows.unaryExpr(f.fn);
  if (!fx.allFinite()) throw NumericalError("function '" + f.name + "' produced non-finite values");
  return covariance(fx);
}

inline FCovMatrix f_covariance(const SampleMatrix& y, const ScalarFunction& f) {
  return {f_covariance_of_rows(embedded_rows(y), f), y.field(), f.name, y.samples()};
}

/// The (i, j) block of a covariance laid out by `blocks` (0-based indices).
inline MatrixXd block(const MatrixXd& sigma, const BlockStructure& blocks, Field field, Index i, Index j) {
  const Index b = embedded_block_side(blocks, field);
  if (sigma.rows() != blocks.subspaces() * b || sigma.cols() != sigma.rows())
    throw DimensionError("block: covariance does not match block structure");
  if (i < 0 || j < 0 || i >= blocks.subspaces() || j >= blocks.subspaces())
    throw DimensionError("block: index out of range");
  return sigma.block(i * b, j * b, b, b);
}

inline MatrixXd block(const FCovMatrix& sigma, const BlockStructure& blocks, Index i, Index j) {
  return block(sigma.sigma, blocks, sigma.field, i, j);
}

struct SubspaceMask {
  MatrixXd mask;  // 0 on diagonal blocks, 1 elsewhere
};

inline SubspaceMask make_mask(const BlockStructure& blocks, Field field) {
  const Index b = embedded_block_side(blocks, field);
  const Index n = blocks.subspaces() * b;
  MatrixXd m = MatrixXd::Ones(n, n);
  for (Index k = 0; k < blocks.subspaces(); ++k) m.block(k * b, k * b, b, b).setZero();
  return {std::move(m)};
}

/// Squared Frobenius norm of the off-diagonal blocks.
inline double masked_norm2(const MatrixXd& sigma, const BlockStructure& blocks, Field field) {
  const Index b = embedded_block_side(blocks, field);
  if (sigma.rows() != blocks.subspaces() * b) throw DimensionError("covariance does not match block structure");
  double total = 0.0;
  for (Index i = 0; i < blocks.subspaces(); ++i)
    for (Index j = 0; j < blocks.subspaces(); ++j)
      if (i != j) total += sigma.block(i * b, j * b, b, b).squaredNorm();
  return total;
}

/// Sum over f of ||mask o Sigma(f)||_F^2.
inline double cost_q(const FunctionSet& fset, const SampleMatrix& y, const BlockStructure& blocks) {
  if (y.dim() != blocks.total()) throw DimensionError("cost_q: output dimension does not match block structure");
  const MatrixXd rows = embedded_rows(y);
  double cost = 0.0;
  for (const auto& f : fset) cost += masked_norm2(f_covariance_of_rows(rows, f), blocks, y.field());
  return cost;
}

inline constexpr double kThetaRidge = 1e-10;

namespace detail {

inline double log_det_spd(const MatrixXd& s) {
  Eigen::LLT<MatrixXd> llt(s);
  if (llt.info() != Eigen::Success) throw SingularError("covariance is not positive definite");
  return 2.0 * llt.matrixLLT().diagonal().array().log().sum();
}

}  // namespace detail

/// -1/2 log( det Sigma / prod_m det Sigma^{m,m} ) after a relative ridge,
/// clipped at 0 from below.
inline double cost_q_theta(const MatrixXd& sigma, const BlockStructure& blocks, Field field = Field::Real) {
  const Index b = embedded_block_side(blocks, field);
  const Index n = blocks.subspaces() * b;
  if (sigma.rows() != n || sigma.cols() != n) throw DimensionError("cost_q_theta: covariance does not match blocks");
  const double ridge = kThetaRidge * sigma.trace() / static_cast<double>(n);
  const MatrixXd s = sigma + ridge * MatrixXd::Identity(n, n);
  double value = detail::log_det_spd(s);
  for (Index m = 0; m < blocks.subspaces(); ++m) value -= detail::log_det_spd(s.block(m * b, m * b, b, b));
  value *= -0.5;
  return value < 0.0 ? 0.0 : value;
}

inline double cost_q_theta(const ScalarFunction& f, const SampleMatrix& y, const BlockStructure& blocks) {
  if (y.dim() != blocks.total()) throw DimensionError("cost_q_theta: output dimension does not match block structure");
  return cost_q_theta(f_covariance(y, f).sigma, blocks, y.field());
}

}  // namespace isa

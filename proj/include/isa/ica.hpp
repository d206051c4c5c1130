#pragma once

// Symmetric FastICA with the tanh contrast.

#include <Eigen/Dense>
#include <cmath>
#include <cstdint>

#include "isa/error.hpp"
#include "isa/linalg.hpp"
#include "isa/model.hpp"
#include "isa/types.hpp"

namespace isa {

struct IcaOptions {
  int max_iter = 500;
  double tol = 1e-6;
  friend bool operator==(const IcaOptions&, const IcaOptions&) = default;
};

struct IcaResult {
  MatrixXd w;  // separation matrix on whitened data, orthogonal
  SampleMatrix s_hat;
  int iterations = 0;
  bool converged = false;
};

/// Flips each row so that its largest-magnitude entry is positive.
inline void normalize_row_signs(MatrixXd& w) {
  for (Index i = 0; i < w.rows(); ++i) {
    Index j;
    w.row(i).cwiseAbs().maxCoeff(&j);
    if (w(i, j) < 0) w.row(i) = -w.row(i);
  }
}

inline constexpr double kWhiteInputTolerance = 0.05;

/// Runs symmetric FastICA on whitened real data. On non-convergence the last
/// iterate is returned with `converged == false`.
inline IcaResult fastica(const SampleMatrix& z_white, std::uint64_t seed, const IcaOptions& opts = {}) {
  if (z_white.is_complex()) throw FieldError("fastica: complex data is not supported");
  const MatrixXd& x = z_white.re();
  const Index n = x.rows();
  const double t = static_cast<double>(x.cols());
  {
    const double err = (covariance(x) - MatrixXd::Identity(n, n)).norm();
    if (!(err <= kWhiteInputTolerance * static_cast<double>(n)))
      throw ConfigError("fastica: input is not white (||cov - I||_F = " + std::to_string(err) + ")");
  }

  MatrixXd w = random_orthogonal(n, seed).matrix().re;
  IcaResult result;
  MatrixXd y(n, x.cols());
  for (int it = 1; it <= opts.max_iter; ++it) {
    y.noalias() = w * x;
    // tanh(u) = 1 - 2 / (exp(2u) + 1); Eigen vectorizes exp but not tanh for doubles.
    const MatrixXd g = (1.0 - 2.0 / ((2.0 * y.array()).exp() + 1.0)).matrix();
    const VectorXd g_prime_mean = (1.0 - g.array().square()).rowwise().sum().matrix() / t;
    MatrixXd w_new = g * x.transpose() / t;
    w_new -= g_prime_mean.asDiagonal() * w;
    w_new = symmetric_decorrelation(w_new);

    const double lim = (w_new * w.transpose()).diagonal().cwiseAbs().minCoeff();
    w = std::move(w_new);
    result.iterations = it;
    if (lim >= 1.0 - opts.tol) {
      result.converged = true;
      break;
    }
  }
  normalize_row_signs(w);
  result.s_hat = SampleMatrix(MatrixXd(w * x));
  result.w = std::move(w);
  return result;
}

}  // namespace isa

#pragma once

// Normalized Amari distance for block separation and the log-log power-law fit
// of error curves.

#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include "isa/error.hpp"
#include "isa/types.hpp"

namespace isa {

struct AmariReport {
  double r = 0.0;
  FieldMatrix b;
  BlockStructure blocks{1, 1};

  double percent() const { return 100.0 * r; }
};

/// b^{ij}: sum of entry moduli of the d x d block (i, j).
inline MatrixXd block_masses(const FieldMatrix& b, const BlockStructure& blocks) {
  if (b.rows() != blocks.total() || b.cols() != blocks.total())
    throw DimensionError("amari_index: matrix does not match block structure");
  const Index m = blocks.subspaces(), d = blocks.dim();
  MatrixXd abs = b.re.cwiseAbs();
  if (b.is_complex()) abs = (b.re.array().square() + b.im.array().square()).sqrt().matrix();
  MatrixXd mass(m, m);
  for (Index i = 0; i < m; ++i)
    for (Index j = 0; j < m; ++j) mass(i, j) = abs.block(i * d, j * d, d, d).sum();
  return mass;
}

/// r(B) = 1/(2M(M-1)) [ sum_i (sum_j b^{ij} / max_j b^{ij} - 1)
///                      + sum_j (sum_i b^{ij} / max_i b^{ij} - 1) ]
inline AmariReport amari_index(const FieldMatrix& b, const BlockStructure& blocks) {
  if (blocks.subspaces() < 2) throw ConfigError("amari_index needs at least two subspaces");
  if (!b.all_finite()) throw NumericalError("amari_index: matrix has non-finite entries");
  const MatrixXd mass = block_masses(b, blocks);
  const Index m = blocks.subspaces();
  double rows = 0.0, cols = 0.0;
  for (Index i = 0; i < m; ++i) {
    const double mx = mass.row(i).maxCoeff();
    if (!(mx > 0)) throw NumericalError("amari_index: zero block row");
    rows += mass.row(i).sum() / mx - 1.0;
  }
  for (Index j = 0; j < m; ++j) {
    const double mx = mass.col(j).maxCoeff();
    if (!(mx > 0)) throw NumericalError("amari_index: zero block column");
    cols += mass.col(j).sum() / mx - 1.0;
  }
  const double r = (rows + cols) / (2.0 * static_cast<double>(m) * static_cast<double>(m - 1));
  return {r, b, blocks};
}

inline AmariReport amari_index(const MatrixXd& b, const BlockStructure& blocks) {
  return amari_index(FieldMatrix(b), blocks);
}

struct PowerLawFit {
  double c = 0.0;          // r(T) ~ T^{-c}
  double intercept = 0.0;  // log10 r at T = 1
  double r2 = 0.0;
  std::size_t used = 0;
  std::vector<std::string> warnings;
};

/// Least squares on (log T, log r). Points with r <= 0 are dropped with a
/// warning; at least three usable points are required.
inline PowerLawFit power_law_fit(const std::vector<std::pair<double, double>>& points) {
  PowerLawFit fit;
  std::vector<double> xs, ys;
  for (const auto& [t, r] : points) {
    if (!(t > 0)) throw ConfigError("power_law_fit: sample sizes must be positive");
    if (!(r > 0)) {
      fit.warnings.push_back("excluded point T=" + std::to_string(t) + " with nonpositive error");
      continue;
    }
    xs.push_back(std::log10(t));
    ys.push_back(std::log10(r));
  }
  if (xs.size() < 3) throw ConfigError("power_law_fit needs at least three points with positive error");
  const double n = static_cast<double>(xs.size());
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0, sxy = 0, syy = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxx += (xs[i] - mx) * (xs[i] - mx);
    sxy += (xs[i] - mx) * (ys[i] - my);
    syy += (ys[i] - my) * (ys[i] - my);
  }
  if (!(sxx > 0)) throw ConfigError("power_law_fit needs at least two distinct sample sizes");
  const double slope = sxy / sxx;
  fit.c = -slope;
  fit.intercept = my - slope * mx;
  double sse = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double e = ys[i] - (fit.intercept + slope * xs[i]);
    sse += e * e;
  }
  fit.r2 = syy > 0 ? 1.0 - sse / syy : 1.0;
  fit.used = xs.size();
  return fit;
}

}  // namespace isa

#include <gtest/gtest.h>

#include <cmath>

#include "isa/model.hpp"
#include "isa/rng.hpp"

namespace {

using isa::FieldMatrix;
using isa::Index;
using isa::MatrixXd;
using isa::SampleMatrix;

MatrixXd gaussian(Index rows, Index cols, std::uint64_t seed) {
  isa::Rng rng(seed);
  MatrixXd x(rows, cols);
  for (Index j = 0; j < cols; ++j)
    for (Index i = 0; i < rows; ++i) x(i, j) = rng.normal();
  return x;
}

// Exactly white data through a Cholesky factor, independent of the
// eigendecomposition used by fit_whitening.
MatrixXd cholesky_white(const MatrixXd& x) {
  const MatrixXd c = x.colwise() - x.rowwise().mean();
  const MatrixXd cov = c * c.transpose() / static_cast<double>(c.cols() - 1);
  Eigen::LLT<MatrixXd> llt(cov);
  return llt.matrixL().solve(c);
}

TEST(SampleMatrix, RejectsBadShapesAndValues) {
  EXPECT_THROW(SampleMatrix(MatrixXd(0, 5)), isa::DimensionError);
  EXPECT_THROW(SampleMatrix(MatrixXd::Zero(2, 1)), isa::DimensionError);
  MatrixXd bad = MatrixXd::Zero(2, 3);
  bad(1, 1) = std::nan("");
  EXPECT_THROW(SampleMatrix{bad}, isa::NumericalError);
  EXPECT_THROW(isa::BlockStructure(0, 2), isa::ConfigError);
}

TEST(Mix, IdentityLeavesSourcesUnchanged) {
  const SampleMatrix s(gaussian(4, 50, 1));
  EXPECT_EQ(isa::mix(isa::MixingModel::identity(4), s), s);
}

TEST(Mix, SignFlip) {
  const SampleMatrix s(gaussian(3, 20, 2));
  const isa::MixingModel a(FieldMatrix(MatrixXd(-MatrixXd::Identity(3, 3))));
  EXPECT_EQ(isa::mix(a, s).re(), -s.re());
}

TEST(Mix, UnitBasisColumnsReproduceMixingMatrix) {
  const Index d = 5;
  const auto a = isa::random_orthogonal(d, 7);
  const SampleMatrix s(MatrixXd(MatrixXd::Identity(d, d)));
  const SampleMatrix z = isa::mix(a, s);
  for (Index i = 0; i < d; ++i)
    for (Index j = 0; j < d; ++j) {
      double expected = 0;
      for (Index k = 0; k < d; ++k) expected += a.matrix().re(i, k) * (k == j ? 1.0 : 0.0);
      EXPECT_DOUBLE_EQ(z.re()(i, j), expected);
    }
}

TEST(Mix, Linear) {
  const auto a = isa::random_orthogonal(4, 3);
  const MatrixXd s1 = gaussian(4, 100, 4), s2 = gaussian(4, 100, 5);
  const double alpha = 0.7, beta = -2.3;
  const MatrixXd lhs = isa::mix(a, SampleMatrix(MatrixXd(alpha * s1 + beta * s2))).re();
  const MatrixXd rhs = alpha * isa::mix(a, SampleMatrix(s1)).re() + beta * isa::mix(a, SampleMatrix(s2)).re();
  EXPECT_LE((lhs - rhs).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(Mix, RejectsMismatch) {
  const SampleMatrix s(gaussian(3, 10, 6));
  EXPECT_THROW(isa::mix(isa::MixingModel::identity(4), s), isa::DimensionError);
  EXPECT_THROW(isa::mix(isa::MixingModel::identity(3, isa::Field::Complex), s), isa::FieldError);
}

TEST(MixingModel, RejectsNonOrthogonal) {
  EXPECT_THROW(isa::MixingModel(FieldMatrix(MatrixXd(2.0 * MatrixXd::Identity(2, 2)))), isa::ConfigError);
}

TEST(RandomOrthogonal, DimensionOneIsSign) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const double v = isa::random_orthogonal(1, seed).matrix().re(0, 0);
    EXPECT_EQ(std::abs(v), 1.0);
  }
}

TEST(RandomOrthogonal, IsOrthogonal) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const MatrixXd a = isa::random_orthogonal(5, seed).matrix().re;
    EXPECT_LT((a.transpose() * a - MatrixXd::Identity(5, 5)).norm(), 1e-10);
  }
  EXPECT_THROW(isa::random_orthogonal(0, 1), isa::DimensionError);
}

TEST(RandomOrthogonal, SeedsGiveDistinctMatricesWithUnitDeterminant) {
  const MatrixXd a = isa::random_orthogonal(3, 1).matrix().re;
  const MatrixXd b = isa::random_orthogonal(3, 2).matrix().re;
  EXPECT_GT((a - b).norm(), 1e-3);
  EXPECT_NEAR(std::abs(a.determinant()), 1.0, 1e-12);
  EXPECT_NEAR(std::abs(b.determinant()), 1.0, 1e-12);
  EXPECT_EQ(isa::random_orthogonal(3, 1).matrix(), isa::random_orthogonal(3, 1).matrix());
}

TEST(RandomOrthogonal, FirstEntryIsHaarDistributed) {
  // For Haar O(n), a_11^2 ~ Beta(1/2, (n-1)/2) with mean 1/n.
  const int n = 4, trials = 4000;
  double sum = 0;
  for (int k = 0; k < trials; ++k) {
    const double v = isa::random_orthogonal(n, 1000 + k).matrix().re(0, 0);
    sum += v * v;
  }
  const double var = (0.5 * 1.5) / (2.0 * 2.0 * 3.0);  // ab / ((a+b)^2 (a+b+1)), a=1/2, b=3/2
  EXPECT_NEAR(sum / trials, 1.0 / n, 3 * std::sqrt(var / trials));
}

TEST(RandomUnitary, IsUnitary) {
  const auto u = isa::random_unitary(4, 9).matrix().as_complex();
  EXPECT_LT((u.adjoint() * u - isa::MatrixXcd::Identity(4, 4)).norm(), 1e-10);
}

TEST(FitWhitening, AlreadyWhiteGivesIdentity) {
  const SampleMatrix z(cholesky_white(gaussian(3, 2000, 10)));
  const auto w = isa::fit_whitening(z);
  EXPECT_LT((w.v.re - MatrixXd::Identity(3, 3)).norm(), 1e-8);
  EXPECT_LT(w.mean.re.norm(), 1e-12);
}

TEST(FitWhitening, ScaledAndShiftedWhiteData) {
  const MatrixXd white = cholesky_white(gaussian(3, 2000, 11));
  const SampleMatrix z(MatrixXd((2.0 * white).array() + 3.0));
  const auto w = isa::fit_whitening(z);
  EXPECT_LT((w.mean.re.array() - 3.0).abs().maxCoeff(), 1e-12);
  EXPECT_LT((w.v.re - 0.5 * MatrixXd::Identity(3, 3)).norm(), 1e-8);
}

TEST(FitWhitening, CorrelatedGaussian) {
  const double rho = 0.9;
  const MatrixXd g = gaussian(2, 100000, 12);
  MatrixXd x(2, g.cols());
  x.row(0) = g.row(0);
  x.row(1) = rho * g.row(0) + std::sqrt(1 - rho * rho) * g.row(1);
  const SampleMatrix z(x);
  const auto w = isa::fit_whitening(z);
  const MatrixXd cov = isa::covariance(isa::apply_whitening(w, z).re());
  EXPECT_LT((cov - MatrixXd::Identity(2, 2)).norm(), 1e-2);
  // Closed form for [[1, rho], [rho, 1]]^{-1/2}: eigenvectors (1, +-1)/sqrt(2).
  const double a = 1 / std::sqrt(1 + rho), b = 1 / std::sqrt(1 - rho);
  MatrixXd expected(2, 2);
  expected << (a + b) / 2, (a - b) / 2, (a - b) / 2, (a + b) / 2;
  EXPECT_LT((w.v.re - expected).norm(), 0.05);
}

TEST(FitWhitening, Postcondition) {
  const MatrixXd mix = gaussian(6, 6, 13);
  const SampleMatrix z(MatrixXd(mix * gaussian(6, 5000, 14)));
  const auto w = isa::fit_whitening(z);
  const MatrixXd cov = isa::covariance(isa::apply_whitening(w, z).re());
  EXPECT_LE((cov - MatrixXd::Identity(6, 6)).norm(), 1e-8 * 6);
}

TEST(FitWhitening, RefittingWhiteDataGivesNearOrthogonalTransform) {
  const SampleMatrix z(MatrixXd(gaussian(4, 4, 15) * gaussian(4, 3000, 16)));
  const SampleMatrix white = isa::apply_whitening(isa::fit_whitening(z), z);
  const MatrixXd v = isa::fit_whitening(white).v.re;
  EXPECT_LT((v * v.transpose() - MatrixXd::Identity(4, 4)).norm(), 1e-6);
}

TEST(FitWhitening, HeldOutHalfIsNearlyWhite) {
  const Index t = 40000;
  const SampleMatrix z(MatrixXd(gaussian(3, 3, 17) * gaussian(3, t, 18)));
  const SampleMatrix first(MatrixXd(z.re().leftCols(t / 2)));
  const SampleMatrix second(MatrixXd(z.re().rightCols(t / 2)));
  const MatrixXd cov = isa::covariance(isa::apply_whitening(isa::fit_whitening(first), second).re());
  // Each entry fluctuates with standard error about sqrt(2 / (T/2)).
  EXPECT_LT((cov - MatrixXd::Identity(3, 3)).cwiseAbs().maxCoeff(), 5 * std::sqrt(2.0 / (t / 2)));
}

TEST(FitWhitening, Errors) {
  MatrixXd x = gaussian(3, 100, 19);
  x.row(2) = x.row(0);
  EXPECT_THROW(isa::fit_whitening(SampleMatrix(x)), isa::SingularError);
  EXPECT_THROW(isa::fit_whitening(SampleMatrix(gaussian(4, 4, 20))), isa::DimensionError);
}

TEST(ApplyWhitening, IdentityTransformAndMismatch) {
  const SampleMatrix z(gaussian(3, 10, 21));
  EXPECT_EQ(isa::apply_whitening(isa::WhiteningTransform::identity(3), z), z);
  EXPECT_THROW(isa::apply_whitening(isa::WhiteningTransform::identity(2), z), isa::DimensionError);
}

TEST(FitWhitening, Complex) {
  const MatrixXd re = gaussian(3, 5000, 22), im = gaussian(3, 5000, 23);
  const isa::MatrixXcd mixing = isa::random_unitary(3, 1).matrix().as_complex() * 3.0;
  isa::MatrixXcd x(3, 5000);
  x.real() = re;
  x.imag() = im;
  const auto z = SampleMatrix::from_complex(mixing * x);
  const auto white = isa::apply_whitening(isa::fit_whitening(z), z);
  const isa::MatrixXcd cov = isa::covariance(white.as_complex());
  EXPECT_LT((cov - isa::MatrixXcd::Identity(3, 3)).norm(), 1e-8 * 3);
}

TEST(Mix, OrthogonalMixingPreservesWhiteness) {
  const SampleMatrix s(cholesky_white(gaussian(5, 1000, 24)));
  const MatrixXd cov = isa::covariance(isa::mix(isa::random_orthogonal(5, 25), s).re());
  EXPECT_LT((cov - MatrixXd::Identity(5, 5)).norm(), 1e-10);
}

}  // namespace

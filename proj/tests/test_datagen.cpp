#include <gtest/gtest.h>

#include <cmath>
#include <sstream>

#include "isa/datagen.hpp"
#include "isa/glyphs.hpp"

namespace {

using isa::Index;
using isa::MatrixXd;
using isa::RhoSpec;
using isa::VectorXd;

// Mean and standard error of a sample.
std::pair<double, double> mean_se(const VectorXd& v) {
  const double m = v.mean();
  const double var = (v.array() - m).square().sum() / static_cast<double>(v.size() - 1);
  return {m, std::sqrt(var / static_cast<double>(v.size()))};
}

isa::GlyphSet square_glyph(std::size_t res) {
  isa::Glyph g;
  g.name = "square";
  g.mask.assign(res, std::vector<bool>(res, true));
  return isa::GlyphSet({g});
}

TEST(DSpherical, OneDimensionalUnitRadiusIsSign) {
  // exp(1e-300 * N) rounds to exactly 1.
  const std::vector<RhoSpec> rhos(2, RhoSpec::lognormal(0.0, 1e-300));
  const auto s = isa::gen_d_spherical(2, 1, 500, rhos, 3);
  EXPECT_LE((s.re().array().abs() - 1.0).abs().maxCoeff(), 1e-15);
}

TEST(DSpherical, SquaredNormMatchesSecondMomentOfRho) {
  const Index d = 3, t = 100000;
  const std::vector<RhoSpec> rhos = isa::default_rhos(3);
  const auto s = isa::gen_d_spherical(3, d, t, rhos, 11);
  const double expected[3] = {1.0 / 3.0, 2.0, std::exp(2.0)};
  for (Index m = 0; m < 3; ++m) {
    EXPECT_DOUBLE_EQ(rhos[m].second_moment(), expected[m]);
    const VectorXd norms = s.re().middleRows(m * d, d).colwise().squaredNorm().transpose();
    const auto [mean, se] = mean_se(norms);
    EXPECT_NEAR(mean, expected[m], 3 * se) << "source " << m;
  }
}

TEST(DSpherical, BlockCovarianceIsIsotropic) {
  const Index d = 3, t = 100000;
  const auto rhos = isa::default_rhos(3);
  const auto s = isa::gen_d_spherical(3, d, t, rhos, 12);
  for (Index m = 0; m < 3; ++m) {
    const MatrixXd blk = s.re().middleRows(m * d, d);
    const double target = rhos[m].second_moment() / static_cast<double>(d);
    for (Index i = 0; i < d; ++i)
      for (Index j = 0; j < d; ++j) {
        // The sources are centered by symmetry; check E[s_i s_j] directly.
        const VectorXd prod = (blk.row(i).array() * blk.row(j).array()).transpose();
        const auto [mean, se] = mean_se(prod);
        EXPECT_NEAR(mean, i == j ? target : 0.0, 3 * se) << "source " << m << " entry " << i << "," << j;
      }
  }
}

TEST(DSpherical, CrossBlockNonlinearCovarianceVanishes) {
  const Index t = 10000;
  const auto s = isa::gen_d_spherical(3, 2, t, isa::default_rhos(3), 13);
  const MatrixXd c = isa::covariance(MatrixXd(s.re().array().cos().matrix()));
  for (Index i = 0; i < 6; ++i)
    for (Index j = 0; j < 6; ++j)
      if (i / 2 != j / 2) EXPECT_LE(std::abs(c(i, j)), 5 / std::sqrt(t));
}

TEST(DSpherical, Deterministic) {
  const auto rhos = isa::default_rhos(2);
  EXPECT_EQ(isa::gen_d_spherical(2, 4, 300, rhos, 5), isa::gen_d_spherical(2, 4, 300, rhos, 5));
  EXPECT_FALSE(isa::gen_d_spherical(2, 4, 300, rhos, 5) == isa::gen_d_spherical(2, 4, 300, rhos, 6));
}

TEST(DSpherical, Errors) {
  EXPECT_THROW(isa::gen_d_spherical(2, 2, 10, isa::default_rhos(1), 1), isa::ConfigError);
  EXPECT_THROW(isa::gen_d_spherical(1, 2, 10, {RhoSpec::exponential(0.0)}, 1), isa::ConfigError);
  EXPECT_THROW(isa::gen_d_spherical(1, 2, 10, {RhoSpec::lognormal(0.0, -1.0)}, 1), isa::ConfigError);
  EXPECT_THROW(isa::gen_d_spherical(1, 2, 1, isa::default_rhos(1), 1), isa::DimensionError);
}

TEST(RhoSpec, ParseAndFormat) {
  for (const auto& r : {RhoSpec::uniform_unit(), RhoSpec::exponential(1.5), RhoSpec::lognormal(-0.25, 2.0)})
    EXPECT_EQ(isa::parse_rho(isa::to_string(r)), r);
  const auto list = isa::parse_rho_list("uniform, exp(1), lognormal(0,1)");
  EXPECT_EQ(list, isa::default_rhos(3));
  EXPECT_THROW(isa::parse_rho("gamma(1)"), isa::ConfigError);
  EXPECT_THROW(isa::parse_rho("exp(1,2)"), isa::ConfigError);
  EXPECT_THROW(isa::parse_rho("exp(-1)"), isa::ConfigError);
}

TEST(Glyphs, BuiltInSetMatchesDataFile) {
  const auto& builtin = isa::default_glyphs();
  const auto file = isa::load_glyphs(std::string(ISA_DATA_DIR) + "/glyphs.txt");
  ASSERT_EQ(builtin.size(), 50u);
  ASSERT_EQ(file.size(), builtin.size());
  EXPECT_EQ(builtin.resolution(), 16u);
  for (std::size_t i = 0; i < builtin.size(); ++i) {
    EXPECT_EQ(builtin.glyphs()[i].name, file.glyphs()[i].name);
    EXPECT_EQ(builtin.glyphs()[i].mask, file.glyphs()[i].mask);
    EXPECT_GT(builtin.glyphs()[i].set_pixels(), 0u);
  }
  EXPECT_EQ(builtin.names().front(), "A");
  EXPECT_EQ(builtin.names()[25], "Z");
  EXPECT_EQ(builtin.names()[26], "alpha");
  EXPECT_EQ(builtin.names().back(), "omega");
}

TEST(Glyphs, ParserErrors) {
  std::istringstream ragged("X\n#.\n#\n");
  EXPECT_THROW(isa::parse_glyphs(ragged), isa::ConfigError);
  std::istringstream empty("X\n..\n..\n");
  EXPECT_THROW(isa::parse_glyphs(empty), isa::ConfigError);
  std::istringstream truncated("X\n#..\n");
  EXPECT_THROW(isa::parse_glyphs(truncated), isa::ConfigError);
  std::istringstream dup("X\n#\nX\n#\n");
  EXPECT_THROW(isa::parse_glyphs(dup), isa::ConfigError);
  std::istringstream mixed("X\n#\nY\n##\n##\n");
  EXPECT_THROW(isa::parse_glyphs(mixed), isa::ConfigError);
}

TEST(Glyphs, ResolveLetters) {
  const auto& set = isa::default_glyphs();
  EXPECT_EQ(isa::resolve_letters(set, "all").size(), 50u);
  EXPECT_EQ(isa::resolve_letters(set, "A, omega,B"), (std::vector<std::string>{"A", "omega", "B"}));
  EXPECT_THROW(isa::resolve_letters(set, "A,Q2"), isa::ConfigError);
}

TEST(AOmega, FullSquareIsUniformOnTheSquare) {
  const Index t = 100000;
  const auto s = isa::gen_a_omega(square_glyph(16), {"square"}, t, 21);
  EXPECT_LE(s.re().maxCoeff(), 1.0);
  EXPECT_GE(s.re().minCoeff(), -1.0);
  for (Index i = 0; i < 2; ++i) {
    // Uniform[-1,1]: E x^2 = 1/3, Var(x^2) = 1/5 - 1/9.
    const VectorXd sq = s.re().row(i).array().square().transpose();
    EXPECT_NEAR(sq.mean(), 1.0 / 3.0, 3 * std::sqrt((1.0 / 5 - 1.0 / 9) / t));
  }
}

TEST(AOmega, SinglePixelConfinesSupport) {
  isa::Glyph g;
  g.name = "dot";
  g.mask.assign(4, std::vector<bool>(4, false));
  g.mask[1][2] = true;  // row 1, col 2
  const auto s = isa::gen_a_omega(isa::GlyphSet({g}), {"dot"}, 2000, 22);
  // x in [-1 + 2*2/4, -1 + 2*3/4], y in [1 - 2*2/4, 1 - 2*1/4].
  EXPECT_GE(s.re().row(0).minCoeff(), 0.0);
  EXPECT_LE(s.re().row(0).maxCoeff(), 0.5);
  EXPECT_GE(s.re().row(1).minCoeff(), 0.0);
  EXPECT_LE(s.re().row(1).maxCoeff(), 0.5);
}

TEST(AOmega, LetterIHasNarrowHorizontalSupport) {
  const auto& glyph = isa::default_glyphs().at("I");
  std::size_t c0 = 16, c1 = 0, r0 = 16, r1 = 0;
  for (std::size_t r = 0; r < 16; ++r)
    for (std::size_t c = 0; c < 16; ++c)
      if (glyph.mask[r][c]) {
        c0 = std::min(c0, c), c1 = std::max(c1, c);
        r0 = std::min(r0, r), r1 = std::max(r1, r);
      }
  const auto s = isa::gen_a_omega(isa::default_glyphs(), {"I"}, 20000, 23);
  const double xw = s.re().row(0).maxCoeff() - s.re().row(0).minCoeff();
  const double yw = s.re().row(1).maxCoeff() - s.re().row(1).minCoeff();
  EXPECT_LT(xw, yw);
  EXPECT_LE(xw, 2.0 * static_cast<double>(c1 - c0 + 1) / 16);
  EXPECT_LE(yw, 2.0 * static_cast<double>(r1 - r0 + 1) / 16);
  EXPECT_GE(s.re().row(0).minCoeff(), -1 + 2.0 * c0 / 16);
  EXPECT_LE(s.re().row(0).maxCoeff(), -1 + 2.0 * (c1 + 1) / 16);
}

TEST(AOmega, Errors) {
  EXPECT_THROW(isa::gen_a_omega(isa::default_glyphs(), {"A", "nope"}, 10, 1), isa::ConfigError);
  EXPECT_THROW(isa::gen_a_omega(isa::default_glyphs(), {}, 10, 1), isa::ConfigError);
}

TEST(MakeObservation, IdentityMixing) {
  const auto obs = isa::make_observation(isa::DSphericalDb{2, 2, isa::default_rhos(2)}, 500, 3,
                                         isa::MixingChoice::Identity);
  EXPECT_EQ(obs.z, obs.s);
}

TEST(MakeObservation, DSphericalObservationIsWhite) {
  const Index t = 10000;
  const auto obs = isa::make_observation(isa::DSphericalDb{3, 2, isa::default_rhos(3)}, t, 4);
  const MatrixXd cs = isa::covariance(obs.s.re());
  EXPECT_LT((cs.diagonal().array() - 1.0).abs().maxCoeff(), 1e-12);
  const MatrixXd cz = isa::covariance(obs.z.re());
  EXPECT_LT((cz - MatrixXd::Identity(6, 6)).cwiseAbs().maxCoeff(), 5 / std::sqrt(t));
  EXPECT_LT((obs.a.matrix().re.transpose() * obs.a.matrix().re - MatrixXd::Identity(6, 6)).norm(), 1e-10);
}

TEST(MakeObservation, LetterShapes) {
  const auto obs = isa::make_observation(isa::AOmegaDb{{"A", "B"}}, 1000, 5);
  EXPECT_EQ(obs.z.dim(), 4);
  EXPECT_EQ(obs.z.samples(), 1000);
  EXPECT_EQ(isa::blocks_of(isa::AOmegaDb{{"A", "B"}}), isa::BlockStructure(2, 2));
}

TEST(MakeObservation, Deterministic) {
  const isa::DatabaseSpec db = isa::AOmegaDb{{"C", "alpha"}};
  const auto a = isa::make_observation(db, 300, 9), b = isa::make_observation(db, 300, 9);
  EXPECT_EQ(a.z, b.z);
  EXPECT_EQ(a.a.matrix(), b.a.matrix());
}

}  // namespace

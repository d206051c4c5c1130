#pragma once

// Benchmark source generators: d-spherical sources and letter-shaped 2-D
// sources, plus the composed mixing pipeline.

#include <cmath>
#include <cstdint>
#include <numbers>
#include <string>
#include <variant>
#include <vector>

#include "isa/error.hpp"
#include "isa/glyphs.hpp"
#include "isa/matrix_io.hpp"
#include "isa/model.hpp"
#include "isa/rng.hpp"
#include "isa/types.hpp"

namespace isa {

/// Distribution of the radial variable rho of a spherical source.
struct RhoSpec {
  enum class Kind { UniformUnit, Exponential, Lognormal };
  Kind kind = Kind::UniformUnit;
  double a = 0.0;  // rate, or mu
  double b = 0.0;  // sigma

  static RhoSpec uniform_unit() { return {Kind::UniformUnit, 0.0, 0.0}; }
  static RhoSpec exponential(double rate) { return {Kind::Exponential, rate, 0.0}; }
  static RhoSpec lognormal(double mu, double sigma) { return {Kind::Lognormal, mu, sigma}; }

  void validate() const {
    if (kind == Kind::Exponential && !(a > 0)) throw ConfigError("exponential rho needs rate > 0");
    if (kind == Kind::Lognormal && !(b > 0)) throw ConfigError("lognormal rho needs sigma > 0");
  }

  double sample(Rng& rng) const {
    switch (kind) {
      case Kind::UniformUnit:
        return rng.uniform();
      case Kind::Exponential:
        return rng.exponential(a);
      case Kind::Lognormal:
        return rng.lognormal(a, b);
    }
    return 0.0;
  }

  /// E[rho^2] in closed form.
  double second_moment() const {
    switch (kind) {
      case Kind::UniformUnit:
        return 1.0 / 3.0;
      case Kind::Exponential:
        return 2.0 / (a * a);
      case Kind::Lognormal:
        return std::exp(2.0 * a + 2.0 * b * b);
    }
    return 0.0;
  }

  friend bool operator==(const RhoSpec&, const RhoSpec&) = default;
};

/// "uniform", "exp(rate)", "lognormal(mu,sigma)".
inline std::string to_string(const RhoSpec& r) {
  switch (r.kind) {
    case RhoSpec::Kind::UniformUnit:
      return "uniform";
    case RhoSpec::Kind::Exponential:
      return "exp(" + detail::format_double(r.a) + ")";
    case RhoSpec::Kind::Lognormal:
      return "lognormal(" + detail::format_double(r.a) + "," + detail::format_double(r.b) + ")";
  }
  return {};
}

inline RhoSpec parse_rho(std::string s) {
  std::erase(s, ' ');
  auto args = [&](const std::string& prefix) {
    if (s.size() < prefix.size() + 2 || s.back() != ')') throw ConfigError("malformed rho '" + s + "'");
    std::string inner = s.substr(prefix.size() + 1, s.size() - prefix.size() - 2);
    std::vector<double> out;
    for (auto part : detail::split(inner, ',')) out.push_back(detail::parse_double(part));
    return out;
  };
  RhoSpec r;
  if (s == "uniform") {
    r = RhoSpec::uniform_unit();
  } else if (s.rfind("exp(", 0) == 0) {
    const auto v = args("exp");
    if (v.size() != 1) throw ConfigError("exp rho takes one parameter");
    r = RhoSpec::exponential(v[0]);
  } else if (s.rfind("lognormal(", 0) == 0) {
    const auto v = args("lognormal");
    if (v.size() != 2) throw ConfigError("lognormal rho takes two parameters");
    r = RhoSpec::lognormal(v[0], v[1]);
  } else {
    throw ConfigError("unknown rho '" + s + "'");
  }
  r.validate();
  return r;
}

/// Comma-separated rho list; commas inside parentheses belong to the entry.
inline std::vector<RhoSpec> parse_rho_list(const std::string& s) {
  std::vector<RhoSpec> out;
  std::string cur;
  int depth = 0;
  for (char c : s) {
    if (c == '(') ++depth;
    if (c == ')') --depth;
    if (c == ',' && depth == 0) {
      out.push_back(parse_rho(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (cur.find_first_not_of(' ') != std::string::npos) out.push_back(parse_rho(cur));
  return out;
}

/// Uniform, Exp(1), Lognormal(0,1): one per source, cycled when M > 3.
inline std::vector<RhoSpec> default_rhos(Index m) {
  const RhoSpec triple[3] = {RhoSpec::uniform_unit(), RhoSpec::exponential(1.0), RhoSpec::lognormal(0.0, 1.0)};
  std::vector<RhoSpec> out;
  for (Index i = 0; i < m; ++i) out.push_back(triple[i % 3]);
  return out;
}

/// M independent sources rho_m * u_m, u_m uniform on the unit sphere of R^d.
inline SampleMatrix gen_d_spherical(Index subspaces, Index dim, Index samples, const std::vector<RhoSpec>& rhos,
                                    std::uint64_t seed) {
  if (static_cast<Index>(rhos.size()) != subspaces) throw ConfigError("need one rho per subspace");
  if (subspaces < 1 || dim < 1) throw ConfigError("d-spherical needs M >= 1 and d >= 1");
  if (samples < 2) throw DimensionError("d-spherical needs T >= 2");
  for (const auto& r : rhos) r.validate();
  Rng rng(seed);
  MatrixXd s(subspaces * dim, samples);
  VectorXd g(dim);
  for (Index t = 0; t < samples; ++t) {
    for (Index m = 0; m < subspaces; ++m) {
      const double rho = rhos[m].sample(rng);
      double norm2;
      do {
        for (Index k = 0; k < dim; ++k) g(k) = rng.normal();
        norm2 = g.squaredNorm();
      } while (norm2 == 0.0);
      s.block(m * dim, t, dim, 1) = (rho / std::sqrt(norm2)) * g;
    }
  }
  return SampleMatrix(std::move(s));
}

/// 2-D sources uniform on the set pixels of each glyph: pick a set pixel,
/// jitter uniformly inside its cell, map the raster square onto [-1,1]^2
/// (x to the right, y up).
inline SampleMatrix gen_a_omega(const GlyphSet& glyphs, const std::vector<std::string>& which, Index samples,
                                std::uint64_t seed) {
  if (which.empty()) throw ConfigError("letter subset is empty");
  if (samples < 2) throw DimensionError("letter sources need T >= 2");
  struct Pixels {
    std::vector<std::pair<int, int>> cells;  // (row, col)
  };
  std::vector<Pixels> pixels;
  for (const auto& name : which) {
    const Glyph& g = glyphs.at(name);
    Pixels p;
    for (std::size_t r = 0; r < g.mask.size(); ++r)
      for (std::size_t c = 0; c < g.mask[r].size(); ++c)
        if (g.mask[r][c]) p.cells.emplace_back(static_cast<int>(r), static_cast<int>(c));
    pixels.push_back(std::move(p));
  }
  const double res = static_cast<double>(glyphs.resolution());
  const auto m = static_cast<Index>(which.size());
  Rng rng(seed);
  MatrixXd s(2 * m, samples);
  for (Index t = 0; t < samples; ++t) {
    for (Index k = 0; k < m; ++k) {
      const auto& cells = pixels[k].cells;
      const auto [row, col] = cells[rng.below(cells.size())];
      const double x = (col + rng.uniform()) / res;
      const double y = (row + rng.uniform()) / res;
      s(2 * k, t) = 2.0 * x - 1.0;
      s(2 * k + 1, t) = 1.0 - 2.0 * y;
    }
  }
  return SampleMatrix(std::move(s));
}

/// Per-row centering and scaling to unit (T-1) variance.
inline SampleMatrix standardize_rows(const SampleMatrix& s) {
  if (s.is_complex()) throw FieldError("standardize_rows is real-only");
  MatrixXd x = s.re().colwise() - s.re().rowwise().mean();
  for (Index i = 0; i < x.rows(); ++i) {
    const double sd = std::sqrt(x.row(i).squaredNorm() / static_cast<double>(x.cols() - 1));
    if (!(sd > 0)) throw SingularError("source coordinate " + std::to_string(i) + " is constant");
    x.row(i) /= sd;
  }
  return SampleMatrix(std::move(x));
}

struct DSphericalDb {
  Index subspaces = 3;
  Index dim = 2;
  std::vector<RhoSpec> rhos = default_rhos(3);
  friend bool operator==(const DSphericalDb&, const DSphericalDb&) = default;
};

struct AOmegaDb {
  std::vector<std::string> letters;
  friend bool operator==(const AOmegaDb&, const AOmegaDb&) = default;
};

using DatabaseSpec = std::variant<DSphericalDb, AOmegaDb>;

inline BlockStructure blocks_of(const DatabaseSpec& db) {
  if (const auto* sph = std::get_if<DSphericalDb>(&db)) return {sph->subspaces, sph->dim};
  return {static_cast<Index>(std::get<AOmegaDb>(db).letters.size()), 2};
}

enum class MixingChoice { Haar, Identity };

struct Observation {
  SampleMatrix z;
  MixingModel a;
  SampleMatrix s;
};

/// Sources from the database, standardized per coordinate, mixed by a Haar
/// orthogonal matrix (or the identity).
inline Observation make_observation(const DatabaseSpec& db, Index samples, std::uint64_t seed,
                                    MixingChoice mixing = MixingChoice::Haar, const GlyphSet& glyphs = default_glyphs()) {
  const std::uint64_t source_seed = mix_seed(seed, {stream::sources});
  SampleMatrix raw = std::visit(
      [&](const auto& spec) -> SampleMatrix {
        using T = std::decay_t<decltype(spec)>;
        if constexpr (std::is_same_v<T, DSphericalDb>)
          return gen_d_spherical(spec.subspaces, spec.dim, samples, spec.rhos, source_seed);
        else
          return gen_a_omega(glyphs, spec.letters, samples, source_seed);
      },
      db);
  SampleMatrix s = standardize_rows(raw);
  MixingModel a = mixing == MixingChoice::Identity ? MixingModel::identity(s.dim())
                                                   : random_orthogonal(s.dim(), mix_seed(seed, {stream::mixing}));
  SampleMatrix z = mix(a, s);
  return {std::move(z), std::move(a), std::move(s)};
}

}  // namespace isa

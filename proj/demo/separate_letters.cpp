// Mixes a few letter-shaped 2-D sources, separates them, and draws each
// recovered subspace as ASCII art next to the original.
//
//   separate_letters [--letters A,B,C,D] [--T 20000] [--seed 1]

#include <CLI11.hpp>
#include <iostream>
#include <string>
#include <vector>

#include "isa/isa.hpp"

namespace {

using isa::Index;
using isa::MatrixXd;

constexpr int kRows = 14;
constexpr int kCols = 28;

// Density plot of the points (x(0, t), x(1, t)) inside [-lim, lim]^2.
std::vector<std::string> draw(const MatrixXd& x, double lim) {
  std::vector<std::vector<int>> hist(kRows, std::vector<int>(kCols, 0));
  int peak = 1;
  for (Index t = 0; t < x.cols(); ++t) {
    const int c = static_cast<int>((x(0, t) + lim) / (2 * lim) * kCols);
    const int r = static_cast<int>((lim - x(1, t)) / (2 * lim) * kRows);
    if (r < 0 || r >= kRows || c < 0 || c >= kCols) continue;
    peak = std::max(peak, ++hist[r][c]);
  }
  static const std::string shades = " .:*#";
  std::vector<std::string> lines;
  for (const auto& row : hist) {
    std::string line;
    for (int v : row) line += shades[std::min<std::size_t>(shades.size() - 1, (v * shades.size() * 2) / (peak + 1))];
    lines.push_back(line);
  }
  return lines;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Separate mixed letter sources"};
  std::string letters = "A,B,C,D";
  Index samples = 20000;
  std::uint64_t seed = 1;
  app.add_option("--letters", letters, "Comma list of glyph names");
  app.add_option("--T", samples, "Number of samples")->check(CLI::Range(100, 10000000));
  app.add_option("--seed", seed, "Seed");
  CLI11_PARSE(app, argc, argv);

  try {
    const isa::AOmegaDb db{isa::resolve_letters(isa::default_glyphs(), letters)};
    const isa::BlockStructure blocks = isa::blocks_of(db);
    const auto obs = isa::make_observation(db, samples, seed);
    const auto est = isa::estimate_isa(obs.z, blocks, isa::FunctionSet::standard(), seed);
    const MatrixXd b = isa::multiply(est.w_isa, obs.a.matrix()).re;
    const auto report = isa::amari_index(b, blocks);

    std::cout << "D=" << blocks.total() << " T=" << samples << "  Amari error " << report.percent() << "%  sweeps "
              << est.trace.sweeps << "  ICA iterations " << est.ica->iterations << "\n\n";

    // The ISA solution is unique only up to an invertible map inside each
    // subspace; undo it with the known mixing so the letters are upright.
    const Index m = blocks.subspaces();
    for (Index i = 0; i < m; ++i) {
      Index j = 0;
      double best = -1;
      for (Index k = 0; k < m; ++k) {
        const double mass = b.block(2 * k, 2 * i, 2, 2).cwiseAbs().sum();
        if (mass > best) best = mass, j = k;
      }
      const MatrixXd align = b.block(2 * j, 2 * i, 2, 2).inverse();
      const MatrixXd recovered = align * est.s_hat.re().middleRows(2 * j, 2);
      const auto left = draw(obs.s.re().middleRows(2 * i, 2), 2.0);
      const auto right = draw(recovered, 2.0);
      std::cout << "source " << db.letters[i] << " -> output subspace " << j << '\n';
      for (int r = 0; r < kRows; ++r) std::cout << '|' << left[r] << "|   |" << right[r] << "|\n";
      std::cout << '\n';
    }
  } catch (const isa::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}

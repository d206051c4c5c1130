#pragma once

// Grouping of 1-D ICA outputs into subspaces by greedy pairwise swaps that
// lower the masked f-covariance cost, plus the exhaustive oracle and the full
// two-stage estimator.

#include <Eigen/Dense>
#include <algorithm>
#include <cstdint>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "isa/error.hpp"
#include "isa/fcov.hpp"
#include "isa/ica.hpp"
#include "isa/model.hpp"
#include "isa/rng.hpp"
#include "isa/types.hpp"

namespace isa {

/// perm[i] is the output row that source row i is moved to.
class PermutationMap {
 public:
  PermutationMap() = default;

  explicit PermutationMap(std::vector<Index> perm) : perm_(std::move(perm)) {
    std::vector<bool> seen(perm_.size(), false);
    for (Index p : perm_) {
      if (p < 0 || p >= static_cast<Index>(perm_.size()) || seen[p]) throw ConfigError("not a permutation");
      seen[p] = true;
    }
  }

  static PermutationMap identity(Index n) {
    std::vector<Index> p(n);
    std::iota(p.begin(), p.end(), Index{0});
    return PermutationMap(std::move(p));
  }

  /// From order[pos] = source row placed at output position pos.
  static PermutationMap from_order(const std::vector<Index>& order) {
    std::vector<Index> p(order.size());
    for (std::size_t pos = 0; pos < order.size(); ++pos) p.at(order[pos]) = static_cast<Index>(pos);
    return PermutationMap(std::move(p));
  }

  Index size() const { return static_cast<Index>(perm_.size()); }
  Index operator[](Index i) const { return perm_[i]; }
  const std::vector<Index>& destinations() const { return perm_; }
  bool is_identity() const {
    for (std::size_t i = 0; i < perm_.size(); ++i)
      if (perm_[i] != static_cast<Index>(i)) return false;
    return true;
  }

  MatrixXd matrix() const {
    MatrixXd p = MatrixXd::Zero(size(), size());
    for (Index i = 0; i < size(); ++i) p(perm_[i], i) = 1.0;
    return p;
  }

  /// P * m, i.e. row i of m moves to row perm[i].
  FieldMatrix apply_rows(const FieldMatrix& m) const {
    if (m.rows() != size()) throw DimensionError("permutation size does not match matrix rows");
    FieldMatrix out = m;
    for (Index i = 0; i < size(); ++i) {
      out.re.row(perm_[i]) = m.re.row(i);
      if (m.is_complex()) out.im.row(perm_[i]) = m.im.row(i);
    }
    return out;
  }

  SampleMatrix apply(const SampleMatrix& s) const { return SampleMatrix(apply_rows(s.data())); }

  friend bool operator==(const PermutationMap&, const PermutationMap&) = default;

 private:
  std::vector<Index> perm_;
};

struct SweepTrace {
  int sweeps = 0;
  std::vector<int> accepted_swaps;  // per sweep
  std::vector<double> cost_history;  // initial cost, then the cost after every accepted swap
  bool hit_sweep_cap = false;

  struct Swap {
    int sweep;
    Index p;
    Index q;
    double cost;
  };
  std::vector<Swap> swaps;
};

struct GreedyOptions {
  int max_sweeps = 100;
  double swap_threshold = 1e-12;  // relative decrease a swap must achieve
  friend bool operator==(const GreedyOptions&, const GreedyOptions&) = default;
};

/// Pairwise dependence weights between the D (real or complex) coordinates of
/// the ICA output:
///   G[u, v] = sum_f sum_{r in emb(u), c in emb(v)} Sigma_f(r, c)^2.
/// A permutation only re-indexes rows of the output, so the masked cost of any
/// ordering is the sum of G over pairs placed in different subspaces.
class PairCost {
 public:
  PairCost(const SampleMatrix& s_hat, const FunctionSet& fset, const BlockStructure& blocks)
      : blocks_(blocks), g_(MatrixXd::Zero(s_hat.dim(), s_hat.dim())) {
    if (s_hat.dim() != blocks.total()) throw DimensionError("ICA output dimension does not match block structure");
    const MatrixXd rows = embedded_rows(s_hat);
    const Index k = s_hat.is_complex() ? 2 : 1;
    for (const auto& f : fset) {
      const MatrixXd c = f_covariance_of_rows(rows, f);
      for (Index u = 0; u < g_.rows(); ++u)
        for (Index v = 0; v < g_.cols(); ++v) g_(u, v) += c.block(k * u, k * v, k, k).squaredNorm();
    }
  }

  const MatrixXd& weights() const { return g_; }
  const BlockStructure& blocks() const { return blocks_; }
  Index size() const { return g_.rows(); }

  /// Cost of the ordering order[pos] = source at output position pos.
  double cost(const std::vector<Index>& order) const {
    double total = 0.0;
    const Index n = size();
    for (Index a = 0; a < n; ++a)
      for (Index b = 0; b < n; ++b)
        if (blocks_.block_of(a) != blocks_.block_of(b)) total += g_(order[a], order[b]);
    return total;
  }

  /// Cost change from exchanging output positions p and q (different blocks).
  double swap_delta(const std::vector<Index>& order, Index p, Index q) const {
    const Index u = order[p], v = order[q];
    const Index bp = blocks_.first(blocks_.block_of(p)), bq = blocks_.first(blocks_.block_of(q));
    double delta = 0.0;
    for (Index k = 0; k < blocks_.dim(); ++k) {
      if (bp + k != p) {
        const Index y = order[bp + k];
        delta += g_(u, y) - g_(v, y);
      }
      if (bq + k != q) {
        const Index y = order[bq + k];
        delta += g_(v, y) - g_(u, y);
      }
    }
    return 2.0 * delta;
  }

 private:
  BlockStructure blocks_;
  MatrixXd g_;
};

struct GreedyResult {
  PermutationMap perm;
  SweepTrace trace;
  double cost = 0.0;
};

/// Sweeps all cross-subspace position pairs (p < q) in ascending order and
/// applies every swap that lowers the cost by more than the relative
/// threshold; stops after a sweep without accepted swaps.
inline GreedyResult greedy_permutation(const PairCost& pc, const GreedyOptions& opts = {}) {
  const Index n = pc.size();
  const BlockStructure& blocks = pc.blocks();
  std::vector<Index> order(n);
  std::iota(order.begin(), order.end(), Index{0});
  GreedyResult res;
  double cost = pc.cost(order);
  res.trace.cost_history.push_back(cost);
  for (;;) {
    if (res.trace.sweeps == opts.max_sweeps) {
      res.trace.hit_sweep_cap = true;
      break;
    }
    ++res.trace.sweeps;
    int accepted = 0;
    for (Index p = 0; p < n; ++p) {
      for (Index q = p + 1; q < n; ++q) {
        if (blocks.block_of(p) == blocks.block_of(q)) continue;
        const double delta = pc.swap_delta(order, p, q);
        if (delta < -opts.swap_threshold * cost) {
          std::swap(order[p], order[q]);
          cost = pc.cost(order);
          res.trace.cost_history.push_back(cost);
          res.trace.swaps.push_back({res.trace.sweeps, p, q, cost});
          ++accepted;
        }
      }
    }
    res.trace.accepted_swaps.push_back(accepted);
    if (accepted == 0) break;
  }
  res.perm = PermutationMap::from_order(order);
  res.cost = cost;
  return res;
}

inline GreedyResult greedy_permutation(const SampleMatrix& s_hat, const BlockStructure& blocks,
                                       const FunctionSet& fset, const GreedyOptions& opts = {}) {
  return greedy_permutation(PairCost(s_hat, fset, blocks), opts);
}

inline constexpr Index kExhaustiveMaxDim = 8;

struct ExhaustiveResult {
  PermutationMap perm;
  double cost = 0.0;
};

/// Minimum-cost permutation over all D! candidates, visited in lexicographic
/// order of the destination array; a later candidate replaces the incumbent
/// only if it is cheaper by more than `tie_tolerance` relative.
inline ExhaustiveResult exhaustive_permutation(const PairCost& pc, double tie_tolerance = 1e-12) {
  const Index n = pc.size();
  if (n > kExhaustiveMaxDim) throw ConfigError("exhaustive search is limited to D <= 8");
  std::vector<Index> perm(n), order(n);
  std::iota(perm.begin(), perm.end(), Index{0});
  ExhaustiveResult best{PermutationMap::identity(n), pc.cost(perm)};
  while (std::next_permutation(perm.begin(), perm.end())) {
    for (Index i = 0; i < n; ++i) order[perm[i]] = i;
    const double c = pc.cost(order);
    if (c < best.cost - tie_tolerance * best.cost) best = {PermutationMap(perm), c};
  }
  return best;
}

inline ExhaustiveResult exhaustive_permutation(const SampleMatrix& s_hat, const BlockStructure& blocks,
                                               const FunctionSet& fset) {
  return exhaustive_permutation(PairCost(s_hat, fset, blocks));
}

struct IsaOptions {
  IcaOptions ica;
  GreedyOptions search;
};

struct IsaEstimate {
  FieldMatrix w_isa;  // P * W_ICA * V, applies to centered observations
  SampleMatrix s_hat;
  PermutationMap perm;
  SweepTrace trace;
  double cost = 0.0;
  std::optional<IcaResult> ica;
  std::optional<WhiteningTransform> whitening;
};

/// Whitening, symmetric FastICA, then greedy grouping of the ICA outputs.
inline IsaEstimate estimate_isa(const SampleMatrix& z, const BlockStructure& blocks, const FunctionSet& fset,
                                std::uint64_t seed, const IsaOptions& opts = {}) {
  if (z.is_complex()) throw FieldError("estimate_isa is real-only; use estimate_isa_given_w for complex data");
  if (z.dim() != blocks.total()) throw DimensionError("observation dimension does not match block structure");
  WhiteningTransform white = fit_whitening(z);
  IcaResult ica = fastica(apply_whitening(white, z), mix_seed(seed, {stream::ica_init}), opts.ica);
  GreedyResult g = greedy_permutation(ica.s_hat, blocks, fset, opts.search);

  IsaEstimate est;
  est.w_isa = FieldMatrix(MatrixXd(g.perm.matrix() * ica.w * white.v.re));
  est.s_hat = g.perm.apply(ica.s_hat);
  est.perm = std::move(g.perm);
  est.trace = std::move(g.trace);
  est.cost = g.cost;
  est.ica = std::move(ica);
  est.whitening = std::move(white);
  return est;
}

/// Grouping stage alone, for an externally supplied separation matrix (the
/// complex pathway). Complex coordinates are the permutation unit.
inline IsaEstimate estimate_isa_given_w(const SampleMatrix& z, const FieldMatrix& w, const BlockStructure& blocks,
                                        const FunctionSet& fset, const GreedyOptions& opts = {}) {
  if (w.rows() != w.cols() || w.cols() != z.dim()) throw DimensionError("separation matrix does not match observations");
  if (z.dim() != blocks.total()) throw DimensionError("observation dimension does not match block structure");
  if (!Eigen::FullPivLU<MatrixXcd>(w.as_complex()).isInvertible())
    throw SingularError("separation matrix is not invertible");
  const SampleMatrix y = transform(w, z);
  GreedyResult g = greedy_permutation(y, blocks, fset, opts);
  IsaEstimate est;
  est.w_isa = g.perm.apply_rows(w);
  est.s_hat = g.perm.apply(y);
  est.perm = std::move(g.perm);
  est.trace = std::move(g.trace);
  est.cost = g.cost;
  return est;
}

}  // namespace isa

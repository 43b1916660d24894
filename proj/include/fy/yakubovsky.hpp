#pragma once

// Four-body component machinery: components indexed by the 18 chains
// (two-cluster partition a, pair alpha), the 18x18 block operator of the
// component equations, and consistency checks against Faddeev components.

#include <string>
#include <vector>

#include "fy/blockops.hpp"
#include "fy/combinatorics.hpp"
#include "fy/faddeev.hpp"
#include "fy/lattice.hpp"

namespace fy::yakubovsky {

using blockops::BlockOperator;
using blockops::EigenResult;
using blockops::Vector;
using combinatorics::Chain;
using faddeev::FaddeevComponents;
using faddeev::FewBodySplit;

/// Six pair potentials (canonical pair order) plus the index tables derived
/// from the 18 canonical chains.
class YakubovskySystem {
 public:
  explicit YakubovskySystem(FewBodySplit split);

  const FewBodySplit& split() const noexcept { return split_; }
  const std::vector<Chain>& chains() const noexcept { return chains_; }
  const std::vector<combinatorics::PairIndex>& pairs() const noexcept { return pairs_; }
  const std::vector<combinatorics::TwoClusterPartition>& partitions() const noexcept {
    return partitions_;
  }
  std::size_t chain_count() const noexcept { return chains_.size(); }
  blockops::Index dimension() const noexcept { return split_.dimension(); }

  std::size_t pair_of(std::size_t chain) const { return chain_pair_[chain]; }
  std::size_t partition_of(std::size_t chain) const { return chain_partition_[chain]; }
  bool pair_in_partition(std::size_t pair, std::size_t partition) const;

  /// Off-diagonal coupling rule: row chain a-alpha sees V_alpha in column
  /// b-beta iff beta lies in a, beta != alpha (b-beta is a chain by
  /// construction, so beta lies in b as well).
  bool couples(std::size_t row, std::size_t col) const;

 private:
  FewBodySplit split_;
  std::vector<Chain> chains_;
  std::vector<combinatorics::PairIndex> pairs_;
  std::vector<combinatorics::TwoClusterPartition> partitions_;
  std::vector<std::size_t> chain_pair_;
  std::vector<std::size_t> chain_partition_;
};

struct YakubovskyComponents {
  double z = 0.0;
  std::vector<Vector> components;  // one per chain, canonical order
};

/// psi_{a alpha} = -(H0+V_alpha-z)^{-1} V_alpha sum_{beta in a, beta != alpha} psi_beta.
/// Throws ChannelEnergyError when a channel operator is singular at z.
YakubovskyComponents yakubovsky_components(const YakubovskySystem& sys, double z,
                                           const FaddeevComponents& faddeev);

struct ChainSumReport {
  /// ||sum_{a contains alpha} psi_{a alpha} - psi_alpha|| / max(||psi_alpha||, eps)
  std::vector<double> per_pair;
  /// ||sum over all chains - sum over all pairs|| / max(||sum psi_beta||, eps)
  double total = 0.0;
};

ChainSumReport chain_sum_consistency(const YakubovskySystem& sys,
                                     const YakubovskyComponents& comps,
                                     const FaddeevComponents& faddeev);

/// 18x18 block operator: diagonal H0+V_alpha, V_alpha wherever couples()
/// holds, absent elsewhere (90 off-diagonal blocks).
BlockOperator assemble_yakubovsky_operator(const YakubovskySystem& sys);

/// Per-chain residual of the component equations, normalized by
/// max(||psi_{a alpha}||, eps). Evaluated term by term (own-partition sum and
/// cross-partition sum) without going through the assembled operator.
std::vector<double> yakubovsky_residual(const YakubovskySystem& sys,
                                        const YakubovskyComponents& comps);

/// Sum of the 18 components.
Vector reconstruct(const YakubovskyComponents& comps);

struct FourBodySolution {
  EigenResult result;
  YakubovskyComponents components;
  Vector psi;                       // sum over chains
  double schrodinger_residual = 0;  // ||(H - z) Psi|| / ||Psi||
  double spurious_distance = 0;     // dist(z, sigma(H0) u channel spectra); inf if not computed
  std::vector<std::string> warnings;
};

struct FourBodyOptions {
  blockops::ShiftInvertOptions solver;
  /// Proximity below which z is reported as a spurious-spectrum point.
  double spurious_window = 1e-6;
};

/// Eigenpair of the flattened 18-chain operator nearest `target`.
FourBodySolution solve_fourbody_ground_state(const YakubovskySystem& sys, double target,
                                             const FourBodyOptions& opts = {});

struct PermutationDeviation {
  combinatorics::Permutation permutation;
  double sign = 0.0;       // measured <U Psi, Psi> / <Psi, Psi>
  double deviation = 0.0;  // max_c ||U psi_c - s psi_{pi(c)}|| / max_c ||psi_c||
};

struct SymmetryReport {
  bool skipped = false;
  std::string notice;
  double max_deviation = 0.0;
  std::vector<PermutationDeviation> per_permutation;
  /// Orbit id -> relative spread of component norms inside the orbit.
  std::vector<double> orbit_norm_spread;
};

/// Checks U_pi psi_c = s(pi) psi_{pi(c)} for every supplied relabeling. Works
/// for the three-body degenerate chains (Faddeev components) and the 18
/// four-body chains alike. Levels with `level_gap` below 1e-8 are skipped.
SymmetryReport component_symmetry_check(const std::vector<Chain>& chains,
                                        const FewBodySplit& split,
                                        const std::vector<Vector>& comps, const Vector& psi,
                                        const std::vector<lattice::PermutationOperator>& perms,
                                        double level_gap);

}  // namespace fy::yakubovsky

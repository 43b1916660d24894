#include "fy/yakubovsky.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>

#include "fy/error.hpp"

namespace fy::yakubovsky {

using blockops::Index;
using blockops::Operator;
using blockops::ShiftedSolver;

namespace {

constexpr double kTiny = 1e-300;

std::vector<ShiftedSolver> factor_channels(const FewBodySplit& split, double z) {
  std::vector<ShiftedSolver> out;
  out.reserve(split.channels());
  for (std::size_t a = 0; a < split.channels(); ++a) {
    try {
      out.emplace_back(split.channel(a), z);
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::SingularMatrix) throw;
      throw ChannelEnergyError(static_cast<int>(a),
                               "H0 + V_" + std::to_string(a + 1) + " - z is singular at z=" +
                                   std::to_string(z));
    }
  }
  return out;
}

void check_chain_components(const YakubovskySystem& sys, const YakubovskyComponents& comps) {
  require(comps.components.size() == sys.chain_count(),
          "expected " + std::to_string(sys.chain_count()) + " chain components, got " +
              std::to_string(comps.components.size()));
  for (const auto& c : comps.components)
    require(c.size() == sys.dimension(), "chain component length does not match dimension");
}

// Two-sided relative tolerance used for exact covariance checks.
bool close(const Vector& a, const Vector& b, double scale) {
  return (a - b).norm() <= 1e-12 * std::max(1.0, scale);
}

}  // namespace

YakubovskySystem::YakubovskySystem(FewBodySplit split)
    : split_(std::move(split)),
      chains_(combinatorics::enumerate_chains(4)),
      pairs_(combinatorics::enumerate_pairs(4)),
      partitions_(combinatorics::enumerate_two_cluster_partitions(4)) {
  split_.validate();
  require(split_.channels() == pairs_.size(),
          "four-body system needs 6 pair potentials, got " + std::to_string(split_.channels()));
  for (const auto& chain : chains_) {
    chain_pair_.push_back(combinatorics::index_of(pairs_, chain.pair));
    chain_partition_.push_back(combinatorics::index_of(partitions_, chain.partition));
  }
}

bool YakubovskySystem::pair_in_partition(std::size_t pair, std::size_t partition) const {
  return partitions_[partition].contains(pairs_[pair]);
}

bool YakubovskySystem::couples(std::size_t row, std::size_t col) const {
  const std::size_t beta = chain_pair_[col];
  return beta != chain_pair_[row] && pair_in_partition(beta, chain_partition_[row]);
}

Vector reconstruct(const YakubovskyComponents& comps) {
  return faddeev::component_sum(comps.components);
}

YakubovskyComponents yakubovsky_components(const YakubovskySystem& sys, double z,
                                           const FaddeevComponents& faddeev) {
  const auto& split = sys.split();
  require(faddeev.components.size() == split.channels(),
          "need one Faddeev component per pair");
  const auto solvers = factor_channels(split, z);

  YakubovskyComponents out;
  out.z = z;
  out.components.reserve(sys.chain_count());
  for (std::size_t c = 0; c < sys.chain_count(); ++c) {
    const std::size_t alpha = sys.pair_of(c);
    Vector source = Vector::Zero(sys.dimension());
    for (std::size_t beta = 0; beta < sys.pairs().size(); ++beta)
      if (beta != alpha && sys.pair_in_partition(beta, sys.partition_of(c)))
        source += faddeev.components[beta];
    out.components.push_back(-solvers[alpha].solve(split.potentials[alpha].apply(source)));
  }
  return out;
}

ChainSumReport chain_sum_consistency(const YakubovskySystem& sys,
                                     const YakubovskyComponents& comps,
                                     const FaddeevComponents& faddeev) {
  check_chain_components(sys, comps);
  require(faddeev.components.size() == sys.pairs().size(), "need one Faddeev component per pair");
  ChainSumReport report;
  for (std::size_t alpha = 0; alpha < sys.pairs().size(); ++alpha) {
    Vector sum = Vector::Zero(sys.dimension());
    for (std::size_t c = 0; c < sys.chain_count(); ++c)
      if (sys.pair_of(c) == alpha) sum += comps.components[c];
    const Vector& target = faddeev.components[alpha];
    report.per_pair.push_back((sum - target).norm() / std::max(target.norm(), kTiny));
  }
  const Vector psi = faddeev::component_sum(faddeev.components);
  report.total = (reconstruct(comps) - psi).norm() / std::max(psi.norm(), kTiny);
  return report;
}

BlockOperator assemble_yakubovsky_operator(const YakubovskySystem& sys) {
  const auto& split = sys.split();
  BlockOperator m(sys.chain_count(), sys.dimension());
  for (std::size_t row = 0; row < sys.chain_count(); ++row) {
    const std::size_t alpha = sys.pair_of(row);
    m.set(row, row, split.channel(alpha));
    for (std::size_t col = 0; col < sys.chain_count(); ++col)
      if (sys.couples(row, col)) m.set(row, col, split.potentials[alpha]);
  }
  return m;
}

std::vector<double> yakubovsky_residual(const YakubovskySystem& sys,
                                        const YakubovskyComponents& comps) {
  check_chain_components(sys, comps);
  const auto& split = sys.split();
  const auto& chains = sys.chains();
  std::vector<double> out;
  out.reserve(sys.chain_count());
  for (std::size_t c = 0; c < sys.chain_count(); ++c) {
    const auto& a = chains[c].partition;
    const auto& alpha = chains[c].pair;
    const std::size_t va = sys.pair_of(c);
    const Vector& psi = comps.components[c];

    // sum over beta in a, beta != alpha, of psi_{a beta}
    Vector own = Vector::Zero(sys.dimension());
    // sum over b != a, beta in a, beta != alpha, beta in b, of psi_{b beta}
    Vector cross = Vector::Zero(sys.dimension());
    for (std::size_t d = 0; d < sys.chain_count(); ++d) {
      const auto& beta = chains[d].pair;
      if (beta == alpha || !a.contains(beta)) continue;
      if (chains[d].partition == a)
        own += comps.components[d];
      else
        cross += comps.components[d];
    }
    Vector r = split.channel(va).apply(psi) - comps.z * psi;
    split.potentials[va].apply_add(own, r);
    split.potentials[va].apply_add(cross, r);
    out.push_back(r.norm() / std::max(psi.norm(), kTiny));
  }
  return out;
}

FourBodySolution solve_fourbody_ground_state(const YakubovskySystem& sys, double target,
                                             const FourBodyOptions& opts) {
  const Operator flat = blockops::flatten(assemble_yakubovsky_operator(sys));
  FourBodySolution sol;
  sol.result = blockops::shift_invert_eigenpair(flat, nullptr, target, opts.solver);
  sol.result.method = "yakubovsky-" + sol.result.method;
  const double z = sol.result.eigenvalue.real();

  const Index d = sys.dimension();
  sol.components.z = z;
  for (std::size_t c = 0; c < sys.chain_count(); ++c)
    sol.components.components.push_back(sol.result.eigenvector.segment(static_cast<Index>(c) * d, d));
  sol.psi = reconstruct(sol.components);

  const double psi_norm = sol.psi.norm();
  if (psi_norm <= 1e-8 * sol.result.eigenvector.norm()) {
    sol.schrodinger_residual = std::numeric_limits<double>::infinity();
    sol.warnings.push_back("spurious root: component sum vanishes");
  } else {
    sol.schrodinger_residual =
        blockops::pencil_residual(sys.split().total(), nullptr, z, sol.psi);
  }

  sol.spurious_distance = std::numeric_limits<double>::infinity();
  if (static_cast<std::size_t>(d) <= blockops::dense_limit()) {
    std::vector<blockops::Complex> reference = blockops::dense_eigenvalues(sys.split().h0);
    for (std::size_t a = 0; a < sys.split().channels(); ++a) {
      const auto ch = blockops::dense_eigenvalues(sys.split().channel(a));
      reference.insert(reference.end(), ch.begin(), ch.end());
    }
    for (const auto& p : reference)
      sol.spurious_distance = std::min(sol.spurious_distance, std::abs(p - sol.result.eigenvalue));
    if (sol.spurious_distance <= opts.spurious_window)
      sol.warnings.push_back("spurious root: z lies within " +
                             std::to_string(opts.spurious_window) +
                             " of sigma(H0) or a channel spectrum");
  }
  return sol;
}

SymmetryReport component_symmetry_check(const std::vector<Chain>& chains,
                                        const FewBodySplit& split,
                                        const std::vector<Vector>& comps, const Vector& psi,
                                        const std::vector<lattice::PermutationOperator>& perms,
                                        double level_gap) {
  split.validate();
  require(comps.size() == chains.size(), "one component per chain required");
  require(psi.size() == split.dimension(), "Psi length does not match dimension");
  const int n = chains.front().partition.particle_count();
  const auto pairs = combinatorics::enumerate_pairs(n);
  require(split.channels() == pairs.size(), "split channel count does not match particle count");

  SymmetryReport report;
  if (!(level_gap >= 1e-8)) {
    report.skipped = true;
    report.notice = "degenerate level (gap " + std::to_string(level_gap) + "); check skipped";
    return report;
  }

  // Deterministic probe vectors for the covariance preconditions.
  const Index d = split.dimension();
  Vector probe(d);
  for (Index i = 0; i < d; ++i) probe[i] = std::sin(1.0 + 0.7 * static_cast<double>(i));
  const double h0_scale = split.h0.apply(probe).norm();

  double scale = 0.0;
  for (const auto& c : comps) scale = std::max(scale, c.norm());
  scale = std::max(scale, kTiny);

  for (const auto& u : perms) {
    require(u.dimension() == d, "permutation operator dimension mismatch");
    const auto& pi = u.permutation();
    require(combinatorics::is_permutation(pi, n), "permutation acts on the wrong label set");

    const Vector up = u.apply(probe);
    require(close(u.apply(split.h0.apply(probe)), split.h0.apply(up), h0_scale),
            "H0 does not commute with the relabeling");
    for (std::size_t a = 0; a < pairs.size(); ++a) {
      const std::size_t image = combinatorics::index_of(pairs, combinatorics::apply(pi, pairs[a]));
      const Vector lhs = u.apply(split.potentials[a].apply(u.apply_inverse(probe)));
      require(close(lhs, split.potentials[image].apply(probe), lhs.norm()),
              "potentials are not covariant under the relabeling");
    }

    PermutationDeviation entry;
    entry.permutation = pi;
    entry.sign = u.apply(psi).dot(psi) / psi.squaredNorm();
    if (std::abs(std::abs(entry.sign) - 1.0) > 1e-6)
      fail(ErrorKind::PreconditionViolation,
           "Psi is not an eigenvector of the relabeling (overlap " + std::to_string(entry.sign) +
               ")");
    const double s = entry.sign > 0 ? 1.0 : -1.0;
    for (std::size_t c = 0; c < chains.size(); ++c) {
      const std::size_t image = combinatorics::index_of(chains, combinatorics::apply(pi, chains[c]));
      entry.deviation =
          std::max(entry.deviation, (u.apply(comps[c]) - s * comps[image]).norm() / scale);
    }
    report.max_deviation = std::max(report.max_deviation, entry.deviation);
    report.per_permutation.push_back(std::move(entry));
  }

  if (chains.size() == 18 || chains.size() == 3) {
    const auto orbits = combinatorics::chain_orbits(n);
    for (const auto& orbit : orbits.orbits) {
      double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
      for (std::size_t c : orbit) {
        lo = std::min(lo, comps[c].norm());
        hi = std::max(hi, comps[c].norm());
      }
      report.orbit_norm_spread.push_back((hi - lo) / scale);
    }
  }
  return report;
}

}  // namespace fy::yakubovsky

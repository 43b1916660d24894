#pragma once

// Hard-core interactions on the lattice: potentials vanish inside the core
// (separation <= c) and the component sum is constrained to vanish there.
// Three-body: a generalized pencil (A, B) solved by shift-invert.
// Four-body: evaluation of the chain boundary condition only.

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "fy/blockops.hpp"
#include "fy/lattice.hpp"
#include "fy/yakubovsky.hpp"

namespace fy::hardcore {

using blockops::BlockOperator;
using blockops::EigenResult;
using blockops::Index;
using blockops::Vector;
using lattice::LatticeModel;

struct CoreRegion {
  combinatorics::PairIndex pair;
  std::vector<Index> sites;  // ascending configuration indices
};

/// Configurations with separation(pair) <= c. Empty when the model has no core.
CoreRegion core_region(const LatticeModel& model, const combinatorics::PairIndex& pair);

/// Union of all pair cores as a mask over configurations.
std::vector<bool> core_mask(const LatticeModel& model);

struct PencilOptions {
  /// Constrain only sites at separation exactly c; sites strictly inside keep
  /// their free kinetic rows. Measured alternative, not the default model.
  bool surface_only = false;
};

struct HardcorePencil {
  BlockOperator a;
  BlockOperator b;
  /// (pair position, configuration) -> global row of the constraint.
  std::map<std::pair<std::size_t, Index>, Index> constraint_rows;
  /// Sum over pairs of constrained-core sizes.
  std::size_t core_incidences = 0;
  /// Incidences whose site already carries a constraint from an earlier pair;
  /// those rows keep the free kinetic equation.
  std::size_t duplicate_incidences = 0;
};

/// Three-body pencil. For pair alpha and each site of its core that is not
/// yet constrained, the component-alpha row becomes sum_beta psi_beta(site) = 0
/// with a zero B row; every potential vanishes on its own core.
HardcorePencil assemble_hardcore3_pencil(const LatticeModel& model, const PencilOptions& opts = {});

struct HardcoreOptions {
  blockops::ShiftInvertOptions solver;
  PencilOptions pencil;
  std::size_t count = 1;          // physical eigenpairs to return
  double vanish_tol = 1e-10;      // max |Psi| on core sites, relative to ||Psi||
  double restricted_tol = 1e-8;   // restricted Schrodinger residual
};

struct HardcoreState {
  EigenResult pencil;              // eigenpair of (A, B)
  std::vector<Vector> components;  // psi_1..psi_3
  Vector psi;                      // sum of components
  double core_max = 0.0;           // max_{core} |Psi| / ||Psi||
  double restricted_residual = 0.0;
};

struct HardcoreSolution {
  std::vector<HardcoreState> states;  // nearest to target first
  std::vector<std::string> warnings;
};

/// Physical eigenpairs of the pencil nearest `target`. Subspace inverse
/// iteration runs on the component sum Psi (directions with vanishing sum are
/// spurious and form an invariant subspace of the shifted inverse), then each
/// pair is polished on the full pencil. Accepted states pass the core
/// vanishing and restricted-equation tests.
HardcoreSolution solve_hardcore3(const LatticeModel& model, double target,
                                 const HardcoreOptions& opts = {});

/// ||P_R (H - z) Psi_R|| / ||Psi_R|| with Psi_R = Psi zeroed on the core and
/// P_R the projection onto non-core sites.
double restricted_residual(const LatticeModel& model, double z, const Vector& psi);

struct RestrictedSpectrum {
  std::vector<EigenResult> states;  // eigenvectors embedded in the full space
  std::vector<Index> kept;          // configurations outside every core
};

/// Deletes every core configuration from H and diagonalizes the rest densely.
RestrictedSpectrum restricted_oracle(const LatticeModel& model, std::size_t k);

struct Hardcore4Defect {
  std::size_t constraint_sites = 0;
  /// max |C_{a alpha}(site)| with the own-partition sum over all beta in a.
  double max_defect = 0.0;
  /// Same with beta != alpha in the own-partition sum.
  double max_defect_excluding_self = 0.0;
  double component_scale = 0.0;  // max chain component norm
};

/// Evaluator for the four-body chain boundary condition at every core site
/// of pair alpha, for every chain a-alpha:
///   psi_{a alpha} + sum_{beta in a} psi_{a beta}
///     + sum_{b != a} sum_{beta in a, beta != alpha, beta in b} psi_{b beta}.
class Hardcore4Constraints {
 public:
  Hardcore4Constraints(const yakubovsky::YakubovskySystem& sys, const LatticeModel& model);

  std::size_t constraint_sites() const noexcept;
  Hardcore4Defect evaluate(const yakubovsky::YakubovskyComponents& comps) const;

 private:
  const yakubovsky::YakubovskySystem* sys_;
  std::vector<std::vector<Index>> sites_;  // per chain
};

struct Hardcore4Components {
  faddeev::FaddeevComponents faddeev;
  yakubovsky::YakubovskyComponents chains;
  /// Resolvents that were singular at z and replaced by the minimum-norm
  /// solve (H0 - z counts as -1, channel alpha as alpha).
  std::vector<int> pseudo_inverse_channels;
};

/// Components of a restricted eigenpair (z, Psi) through the resolvent
/// construction with in-core potentials zeroed:
///   psi_alpha = -(H0 - z)^+ V_alpha Psi,
///   psi_{a alpha} = -(H0 + V_alpha - z)^+ V_alpha sum_{beta in a, beta != alpha} psi_beta.
/// The pseudo-inverse coincides with the inverse whenever the resolvent
/// exists. Dense; throws TooLarge above the dense limit.
Hardcore4Components hardcore4_components(const yakubovsky::YakubovskySystem& sys, double z,
                                         const Vector& psi);

Hardcore4Constraints assemble_hardcore4_constraints(const yakubovsky::YakubovskySystem& sys,
                                                    const LatticeModel& model);

}  // namespace fy::hardcore

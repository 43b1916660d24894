#pragma once

// n-component Faddeev decomposition of H = H0 + V_1 + ... + V_n over a
// finite-dimensional real space.

#include <cstdint>
#include <vector>

#include "fy/blockops.hpp"

namespace fy::faddeev {

using blockops::BlockOperator;
using blockops::Operator;
using blockops::Vector;

struct FewBodySplit {
  Operator h0;
  std::vector<Operator> potentials;

  /// Throws InvalidInput unless n >= 2 and all dimensions agree.
  void validate() const;
  std::size_t channels() const noexcept { return potentials.size(); }
  blockops::Index dimension() const noexcept { return h0.dimension(); }
  Operator total() const;
  /// H0 + V_alpha
  Operator channel(std::size_t alpha) const;
};

struct FaddeevComponents {
  double z = 0.0;
  std::vector<Vector> components;
  /// Reciprocal condition estimate of H0 - z (NaN when not available).
  double rcond = 0.0;
  /// Set when 1/rcond exceeds 1e10: z is close to the unperturbed spectrum.
  bool ill_conditioned = false;
};

/// Residual tolerance used to accept (z, Psi) as an eigenpair of H, relative
/// to (1 + |z|) ||Psi||.
inline constexpr double kEigenpairTolerance = 1e-8;
inline constexpr double kConditionLimit = 1e10;

/// ||Psi + (H0 - z)^{-1} sum V_alpha Psi|| / ||Psi||. Throws SpuriousEnergy when
/// H0 - z is singular.
double lippmann_schwinger_residual(const FewBodySplit& split, double z, const Vector& psi);

/// psi_alpha = -(H0 - z)^{-1} V_alpha Psi. With `check_eigenpair` the pair
/// (z, Psi) must solve H Psi = z Psi within kEigenpairTolerance, otherwise
/// PreconditionViolation is raised with the measured residual.
FaddeevComponents faddeev_components(const FewBodySplit& split, double z, const Vector& psi,
                                     bool check_eigenpair = true);

/// n x n operator with H0+V_alpha on the diagonal and V_alpha in every other
/// column of row alpha.
BlockOperator assemble_faddeev_operator(const FewBodySplit& split);

/// r_alpha = ||(H0+V_alpha-z)psi_alpha + V_alpha sum_{beta!=alpha} psi_beta||
///           / max(||psi_alpha||, eps)
std::vector<double> faddeev_residual(const FewBodySplit& split, const FaddeevComponents& comps);

/// out_alpha = -(H0+V_alpha-z)^{-1} V_alpha sum_{beta!=alpha} comps_beta.
/// Throws ChannelEnergyError naming alpha if a channel operator is singular.
std::vector<Vector> faddeev_integral_map(const FewBodySplit& split, double z,
                                         const std::vector<Vector>& comps);

/// Sum of the components.
Vector component_sum(const std::vector<Vector>& comps);

struct MultiplicityEntry {
  blockops::Complex point;     // representative of a cluster of sigma(H0)
  std::size_t in_h0 = 0;       // members of sigma(H0) in the cluster
  std::size_t in_faddeev = 0;  // eigenvalues of H_F within the cluster radius
  std::size_t in_h = 0;        // eigenvalues of H within the cluster radius
};

struct SpectrumUnionReport {
  std::size_t channels = 0;
  blockops::Index dimension = 0;
  /// max over p in sigma(H) u sigma(H0) of dist(p, sigma(H_F))
  double max_matching_distance = 0.0;
  /// max over q in sigma(H_F) of dist(q, sigma(H) u sigma(H0))
  double reverse_distance = 0.0;
  double tolerance = 0.0;
  bool passed = false;
  std::vector<MultiplicityEntry> multiplicity;
};

/// Dense check of sigma(H_F) = sigma(H) u sigma(H0). Never throws on a
/// mismatch; `passed` carries the verdict.
SpectrumUnionReport spectrum_union_check(const FewBodySplit& split, double tol = 1e-8);

/// Seeded abstract test model: n channels of dimension d with entries drawn
/// uniformly from [-1, 1]. Symmetric H0 and V_alpha when `hermitian`, general
/// real matrices otherwise. Identical output on every platform for a seed.
FewBodySplit random_split(std::uint64_t seed, std::size_t n, blockops::Index d, bool hermitian);

}  // namespace fy::faddeev

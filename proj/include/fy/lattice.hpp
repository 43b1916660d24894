#pragma once

// N particles on a one-dimensional lattice of L sites, in particle
// coordinates. Configuration (x_1, ..., x_N), x_i in [0, L), has index
// sum_i x_i L^(N-i); particle 1 is the most significant digit.

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "fy/blockops.hpp"
#include "fy/combinatorics.hpp"
#include "fy/faddeev.hpp"

namespace fy::lattice {

using blockops::EigenResult;
using blockops::Index;
using blockops::Operator;
using blockops::Vector;
using combinatorics::PairIndex;
using combinatorics::Permutation;

enum class Boundary { Box, Ring };

enum class PotentialKind { Table, OnSite, SquareWell, Gaussian };

const char* to_string(Boundary b) noexcept;
const char* to_string(PotentialKind k) noexcept;
Boundary parse_boundary(std::string_view s);
PotentialKind parse_potential_kind(std::string_view s);

/// Pair potential v(r) as a function of lattice separation r >= 0.
///   table:   params = v(0), v(1), ... (missing entries are zero)
///   onsite:  params = {g}              v(0) = g
///   square:  params = {depth, range}   v(r) = depth for r <= range
///   gaussian: params = {depth, width}  v(r) = depth exp(-(r/width)^2)
struct PairPotential {
  PotentialKind kind = PotentialKind::OnSite;
  std::vector<double> params{0.0};

  double value(int r) const;
  void validate() const;
};

inline constexpr Index kMatrixFreeCap = 20736;

struct LatticeModel {
  int particles = 3;
  int sites = 6;
  Boundary boundary = Boundary::Box;
  double hopping = 1.0;
  PairPotential potential;
  /// Per-pair multipliers of v(r) in canonical pair order; empty means all
  /// pairs share v (identical particles).
  std::vector<double> pair_scales;
  /// Hard-core radius in sites; nullopt means no core at all.
  std::optional<int> core_radius;

  Index dimension() const;
  /// Throws InvalidInput on malformed parameters, TooLarge above `cap`.
  void validate(Index cap = kMatrixFreeCap) const;
  std::size_t pair_count() const {
    return static_cast<std::size_t>(particles * (particles - 1) / 2);
  }
};

/// `tiny3`: N=3, L=6, box, t=1, Gaussian depth -4 width 1.
/// `tiny4`: N=4, L=4, box, t=1, on-site g=-6.
LatticeModel preset(std::string_view name);
std::vector<std::string> preset_names();

std::vector<int> coordinates(const LatticeModel& model, Index config);
Index config_index(const LatticeModel& model, std::span<const int> coords);
/// |x_i - x_j| on a box, minimal image on a ring.
int separation(const LatticeModel& model, std::span<const int> coords, const PairIndex& pair);

/// v(r) for a pair, with the per-pair scale and zero inside the core.
double pair_value(const LatticeModel& model, std::size_t pair_position, int r);

/// Sum over particles of t (2I - S - S^T) with the chosen boundary, as a
/// sparse operator.
Operator build_h0(const LatticeModel& model);

/// Diagonal operator v(sep(x)) for the given pair.
Operator build_pair_potential(const LatticeModel& model, const PairIndex& pair);

/// H0 and the pair potentials in canonical pair order.
faddeev::FewBodySplit build_split(const LatticeModel& model);

Operator build_hamiltonian(const LatticeModel& model);

/// Lowest k eigenpairs of H by dense symmetric diagonalization.
std::vector<EigenResult> dense_oracle_spectrum(const LatticeModel& model, std::size_t k);

/// Exact relabeling operator: (U f)(y) = f(x) with y_{pi(i)} = x_i, so that
/// U V_alpha U^{-1} = V_{pi(alpha)} and U_{pi o rho} = U_pi U_rho.
class PermutationOperator {
 public:
  PermutationOperator(Permutation perm, std::vector<Index> image);

  const Permutation& permutation() const noexcept { return perm_; }
  /// image()[x] is the configuration x is sent to.
  const std::vector<Index>& image() const noexcept { return image_; }
  Index dimension() const noexcept { return static_cast<Index>(image_.size()); }

  Vector apply(const Vector& f) const;
  Vector apply_inverse(const Vector& f) const;
  blockops::SparseMatrix matrix() const;

 private:
  Permutation perm_;
  std::vector<Index> image_;
};

PermutationOperator build_permutation(const LatticeModel& model, const Permutation& perm);

}  // namespace fy::lattice

#pragma once

// Index machinery for few-body decompositions: particle pairs, two-cluster
// partitions, chains (partition, pair) and the relabeling action of S_N.
// Particle labels are 1..N throughout.

#include <array>
#include <compare>
#include <cstddef>
#include <string>
#include <vector>

namespace fy::combinatorics {

/// Relabeling of particles: image[i-1] is the new label of particle i.
using Permutation = std::vector<int>;

struct PairIndex {
  std::array<int, 2> members{};  // strictly ascending

  static PairIndex make(int i, int j);

  bool contains(int label) const noexcept {
    return members[0] == label || members[1] == label;
  }

  auto operator<=>(const PairIndex&) const = default;
  bool operator==(const PairIndex&) const = default;
};

enum class PartitionKind { TwoPlusOne, ThreePlusOne, TwoPlusTwo, Other };

const char* to_string(PartitionKind kind) noexcept;

/// Bipartition of 1..N into two nonempty clusters. Canonical form keeps the
/// larger cluster first; equal sizes are ordered lexicographically.
struct TwoClusterPartition {
  std::vector<int> first;
  std::vector<int> second;

  static TwoClusterPartition make(std::vector<int> a, std::vector<int> b);

  PartitionKind kind() const noexcept;
  int particle_count() const noexcept {
    return static_cast<int>(first.size() + second.size());
  }
  /// True when both members of the pair lie in one cluster.
  bool contains(const PairIndex& pair) const noexcept;

  bool operator==(const TwoClusterPartition&) const = default;
};

/// Ordering used for every partition list: larger first cluster first, then
/// lexicographic on the first cluster.
bool partition_less(const TwoClusterPartition& a, const TwoClusterPartition& b);

struct Chain {
  TwoClusterPartition partition;
  PairIndex pair;

  static Chain make(TwoClusterPartition partition, PairIndex pair);

  bool operator==(const Chain&) const = default;
};

std::string format(const PairIndex& pair);
std::string format(const TwoClusterPartition& partition);
std::string format(const Chain& chain);

std::vector<PairIndex> enumerate_pairs(int n);
/// Same as enumerate_pairs but returns an empty list for n < 2.
std::vector<PairIndex> enumerate_pairs_or_empty(int n);
std::vector<TwoClusterPartition> enumerate_two_cluster_partitions(int n);

/// Four-body chains in partition-major, pair-minor order. For n = 3 the three
/// pairs come back as degenerate chains ({i,j},{k}) so that three- and
/// four-body code share one indexing path.
std::vector<Chain> enumerate_chains(int n);

std::vector<TwoClusterPartition> partitions_containing(const PairIndex& pair, int n);

/// Position of a value inside the canonical list; throws if absent.
std::size_t index_of(const std::vector<PairIndex>& pairs, const PairIndex& pair);
std::size_t index_of(const std::vector<TwoClusterPartition>& parts,
                     const TwoClusterPartition& part);
std::size_t index_of(const std::vector<Chain>& chains, const Chain& chain);

struct ChainIdentityReport {
  std::size_t chains_checked = 0;
  std::size_t pairs_checked = 0;
  bool reindexing_holds = false;  // sum_{beta}sum_{b>beta} == sum_b sum_{beta}
  bool pair_cover_holds = false;  // union_{a>alpha}{beta != alpha, beta < a}
  std::vector<std::string> violations;
};

/// Exhaustive check of the two index identities behind the four-body
/// component equations. Throws InternalConsistency when either fails.
ChainIdentityReport verify_chain_identity(int n);

// Symmetric-group action.

bool is_permutation(const Permutation& perm, int n);
Permutation identity_permutation(int n);
Permutation compose(const Permutation& outer, const Permutation& inner);
Permutation inverse(const Permutation& perm);
std::vector<Permutation> all_permutations(int n);

PairIndex apply(const Permutation& perm, const PairIndex& pair);
TwoClusterPartition apply(const Permutation& perm, const TwoClusterPartition& part);
Chain apply(const Permutation& perm, const Chain& chain);

struct ChainOrbits {
  std::vector<std::vector<std::size_t>> orbits;  // chain indices, ascending
  std::vector<std::size_t> orbit_of;             // chain index -> orbit id
};

/// Orbits of S_N on the canonical chain list; orbits are numbered by their
/// smallest member.
ChainOrbits chain_orbits(int n);

}  // namespace fy::combinatorics

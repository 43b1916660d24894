#include "fy/combinatorics.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <sstream>

#include "fy/error.hpp"

namespace fy::combinatorics {

namespace {

std::string join(const std::vector<int>& labels) {
  std::string s;
  for (int l : labels) s += std::to_string(l);
  return s;
}

void check_n(int n, int min_n) {
  require(n >= min_n, "particle count " + std::to_string(n) +
                          " below minimum " + std::to_string(min_n));
}

}  // namespace

PairIndex PairIndex::make(int i, int j) {
  require(i != j && i >= 1 && j >= 1, "pair needs two distinct positive labels");
  return PairIndex{{std::min(i, j), std::max(i, j)}};
}

const char* to_string(PartitionKind kind) noexcept {
  switch (kind) {
    case PartitionKind::TwoPlusOne: return "2+1";
    case PartitionKind::ThreePlusOne: return "3+1";
    case PartitionKind::TwoPlusTwo: return "2+2";
    case PartitionKind::Other: return "other";
  }
  return "?";
}

TwoClusterPartition TwoClusterPartition::make(std::vector<int> a, std::vector<int> b) {
  require(!a.empty() && !b.empty(), "partition clusters must be nonempty");
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  std::vector<int> all(a);
  all.insert(all.end(), b.begin(), b.end());
  std::sort(all.begin(), all.end());
  for (std::size_t i = 0; i < all.size(); ++i) {
    require(all[i] == static_cast<int>(i) + 1,
            "partition clusters must be a disjoint cover of 1..N");
  }
  if (b.size() > a.size() || (b.size() == a.size() && b < a)) std::swap(a, b);
  return TwoClusterPartition{std::move(a), std::move(b)};
}

PartitionKind TwoClusterPartition::kind() const noexcept {
  const auto p = first.size(), q = second.size();
  if (p == 2 && q == 1) return PartitionKind::TwoPlusOne;
  if (p == 3 && q == 1) return PartitionKind::ThreePlusOne;
  if (p == 2 && q == 2) return PartitionKind::TwoPlusTwo;
  return PartitionKind::Other;
}

bool TwoClusterPartition::contains(const PairIndex& pair) const noexcept {
  auto in = [&](const std::vector<int>& c) {
    return std::binary_search(c.begin(), c.end(), pair.members[0]) &&
           std::binary_search(c.begin(), c.end(), pair.members[1]);
  };
  return in(first) || in(second);
}

bool partition_less(const TwoClusterPartition& a, const TwoClusterPartition& b) {
  if (a.first.size() != b.first.size()) return a.first.size() > b.first.size();
  return a.first < b.first;
}

Chain Chain::make(TwoClusterPartition partition, PairIndex pair) {
  require(partition.contains(pair), "chain pair " + format(pair) +
                                        " is not inside partition " +
                                        format(partition));
  return Chain{std::move(partition), pair};
}

std::string format(const PairIndex& pair) {
  return std::to_string(pair.members[0]) + std::to_string(pair.members[1]);
}

std::string format(const TwoClusterPartition& partition) {
  return "(" + join(partition.first) + ")(" + join(partition.second) + ")";
}

std::string format(const Chain& chain) {
  return format(chain.partition) + "/" + format(chain.pair);
}

std::vector<PairIndex> enumerate_pairs(int n) {
  check_n(n, 2);
  std::vector<PairIndex> out;
  out.reserve(static_cast<std::size_t>(n * (n - 1) / 2));
  for (int i = 1; i <= n; ++i)
    for (int j = i + 1; j <= n; ++j) out.push_back(PairIndex{{i, j}});
  return out;
}

std::vector<PairIndex> enumerate_pairs_or_empty(int n) {
  return n < 2 ? std::vector<PairIndex>{} : enumerate_pairs(n);
}

std::vector<TwoClusterPartition> enumerate_two_cluster_partitions(int n) {
  check_n(n, 3);
  require(n <= 20, "particle count too large for bipartition enumeration");
  std::vector<TwoClusterPartition> out;
  // Masks containing particle 1 and leaving a nonempty complement enumerate
  // each unordered bipartition once.
  const unsigned full = (1u << n) - 1;
  for (unsigned mask = 1; mask < full; mask += 2) {
    std::vector<int> a, b;
    for (int i = 0; i < n; ++i) ((mask >> i) & 1u ? a : b).push_back(i + 1);
    out.push_back(TwoClusterPartition::make(std::move(a), std::move(b)));
  }
  std::sort(out.begin(), out.end(), partition_less);
  return out;
}

std::vector<Chain> enumerate_chains(int n) {
  require(n == 3 || n == 4, "chains are defined for 3 or 4 particles, got " +
                                std::to_string(n));
  const auto pairs = enumerate_pairs(n);
  std::vector<Chain> out;
  if (n == 3) {
    for (const auto& p : pairs) {
      const int spectator = 6 - p.members[0] - p.members[1];
      out.push_back(Chain::make(
          TwoClusterPartition::make({p.members[0], p.members[1]}, {spectator}), p));
    }
    return out;
  }
  for (const auto& part : enumerate_two_cluster_partitions(n))
    for (const auto& p : pairs)
      if (part.contains(p)) out.push_back(Chain{part, p});
  return out;
}

std::vector<TwoClusterPartition> partitions_containing(const PairIndex& pair, int n) {
  require(pair.members[0] >= 1 && pair.members[1] <= n && pair.members[0] < pair.members[1],
          "pair " + format(pair) + " invalid for N=" + std::to_string(n));
  std::vector<TwoClusterPartition> out;
  for (auto& part : enumerate_two_cluster_partitions(n))
    if (part.contains(pair)) out.push_back(std::move(part));
  return out;
}

std::size_t index_of(const std::vector<PairIndex>& pairs, const PairIndex& pair) {
  const auto it = std::find(pairs.begin(), pairs.end(), pair);
  require(it != pairs.end(), "unknown pair " + format(pair));
  return static_cast<std::size_t>(it - pairs.begin());
}

std::size_t index_of(const std::vector<TwoClusterPartition>& parts,
                     const TwoClusterPartition& part) {
  const auto it = std::find(parts.begin(), parts.end(), part);
  require(it != parts.end(), "unknown partition " + format(part));
  return static_cast<std::size_t>(it - parts.begin());
}

std::size_t index_of(const std::vector<Chain>& chains, const Chain& chain) {
  const auto it = std::find(chains.begin(), chains.end(), chain);
  require(it != chains.end(), "unknown chain " + format(chain));
  return static_cast<std::size_t>(it - chains.begin());
}

ChainIdentityReport verify_chain_identity(int n) {
  require(n == 4, "chain identity is stated for four particles");
  const auto pairs = enumerate_pairs(n);
  const auto parts = enumerate_two_cluster_partitions(n);
  const auto chains = enumerate_chains(n);

  ChainIdentityReport report;
  report.reindexing_holds = true;
  report.pair_cover_holds = true;

  using Entry = std::pair<std::size_t, std::size_t>;  // (partition b, pair beta)
  for (const auto& chain : chains) {
    const auto& a = chain.partition;
    // Route 1: beta over pairs of a (beta != alpha), then b over partitions
    // containing beta.
    std::vector<Entry> lhs;
    for (std::size_t beta = 0; beta < pairs.size(); ++beta) {
      if (pairs[beta] == chain.pair || !a.contains(pairs[beta])) continue;
      for (const auto& b : partitions_containing(pairs[beta], n))
        lhs.emplace_back(index_of(parts, b), beta);
    }
    // Route 2: b over all partitions, beta over pairs of a (beta != alpha),
    // keeping only valid chains b-beta.
    std::vector<Entry> rhs;
    for (std::size_t b = 0; b < parts.size(); ++b)
      for (std::size_t beta = 0; beta < pairs.size(); ++beta)
        if (pairs[beta] != chain.pair && a.contains(pairs[beta]) &&
            parts[b].contains(pairs[beta]))
          rhs.emplace_back(b, beta);
    std::sort(lhs.begin(), lhs.end());
    std::sort(rhs.begin(), rhs.end());
    if (lhs != rhs) {
      report.reindexing_holds = false;
      report.violations.push_back("reindexing fails for chain " + format(chain));
    }
    ++report.chains_checked;
  }

  for (std::size_t alpha = 0; alpha < pairs.size(); ++alpha) {
    std::vector<std::size_t> seen(pairs.size(), 0);
    for (const auto& a : partitions_containing(pairs[alpha], n))
      for (std::size_t beta = 0; beta < pairs.size(); ++beta)
        if (beta != alpha && a.contains(pairs[beta])) ++seen[beta];
    for (std::size_t beta = 0; beta < pairs.size(); ++beta) {
      const std::size_t expected = beta == alpha ? 0 : 1;
      if (seen[beta] != expected) {
        report.pair_cover_holds = false;
        report.violations.push_back("pair " + format(pairs[beta]) + " covered " +
                                    std::to_string(seen[beta]) + " times for alpha=" +
                                    format(pairs[alpha]));
      }
    }
    ++report.pairs_checked;
  }

  if (!report.reindexing_holds || !report.pair_cover_holds) {
    std::ostringstream msg;
    msg << "chain identity violated:";
    for (const auto& v : report.violations) msg << ' ' << v << ';';
    fail(ErrorKind::InternalConsistency, msg.str());
  }
  return report;
}

bool is_permutation(const Permutation& perm, int n) {
  if (static_cast<int>(perm.size()) != n) return false;
  std::vector<int> sorted(perm);
  std::sort(sorted.begin(), sorted.end());
  for (int i = 0; i < n; ++i)
    if (sorted[static_cast<std::size_t>(i)] != i + 1) return false;
  return true;
}

Permutation identity_permutation(int n) {
  Permutation p(static_cast<std::size_t>(n));
  std::iota(p.begin(), p.end(), 1);
  return p;
}

Permutation compose(const Permutation& outer, const Permutation& inner) {
  require(outer.size() == inner.size(), "permutation sizes differ");
  Permutation out(inner.size());
  for (std::size_t i = 0; i < inner.size(); ++i)
    out[i] = outer[static_cast<std::size_t>(inner[i] - 1)];
  return out;
}

Permutation inverse(const Permutation& perm) {
  Permutation out(perm.size());
  for (std::size_t i = 0; i < perm.size(); ++i)
    out[static_cast<std::size_t>(perm[i] - 1)] = static_cast<int>(i) + 1;
  return out;
}

std::vector<Permutation> all_permutations(int n) {
  require(n >= 1 && n <= 8, "permutation enumeration limited to N<=8");
  std::vector<Permutation> out;
  auto p = identity_permutation(n);
  do {
    out.push_back(p);
  } while (std::next_permutation(p.begin(), p.end()));
  return out;
}

PairIndex apply(const Permutation& perm, const PairIndex& pair) {
  return PairIndex::make(perm[static_cast<std::size_t>(pair.members[0] - 1)],
                         perm[static_cast<std::size_t>(pair.members[1] - 1)]);
}

TwoClusterPartition apply(const Permutation& perm, const TwoClusterPartition& part) {
  auto map = [&](const std::vector<int>& c) {
    std::vector<int> out;
    out.reserve(c.size());
    for (int l : c) out.push_back(perm[static_cast<std::size_t>(l - 1)]);
    return out;
  };
  return TwoClusterPartition::make(map(part.first), map(part.second));
}

Chain apply(const Permutation& perm, const Chain& chain) {
  return Chain{apply(perm, chain.partition), apply(perm, chain.pair)};
}

ChainOrbits chain_orbits(int n) {
  const auto chains = enumerate_chains(n);
  const auto perms = all_permutations(n);
  constexpr auto unset = static_cast<std::size_t>(-1);

  ChainOrbits result;
  result.orbit_of.assign(chains.size(), unset);
  for (std::size_t c = 0; c < chains.size(); ++c) {
    if (result.orbit_of[c] != unset) continue;
    const std::size_t id = result.orbits.size();
    std::vector<std::size_t> members;
    for (const auto& p : perms) {
      const std::size_t image = index_of(chains, apply(p, chains[c]));
      if (result.orbit_of[image] == unset) {
        result.orbit_of[image] = id;
        members.push_back(image);
      }
    }
    std::sort(members.begin(), members.end());
    result.orbits.push_back(std::move(members));
  }
  return result;
}

}  // namespace fy::combinatorics

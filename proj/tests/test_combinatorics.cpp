#include <gtest/gtest.h>

#include <algorithm>
#include <map>
#include <set>

#include "fy/combinatorics.hpp"
#include "fy/error.hpp"
#include "support.hpp"

using namespace fy::combinatorics;

namespace {

// Brute-force bipartitions of 1..n as sets of the cluster holding particle 1.
std::set<std::set<int>> brute_bipartitions(int n) {
  std::set<std::set<int>> out;
  for (int mask = 1; mask < (1 << n) - 1; ++mask) {
    if (!(mask & 1)) continue;
    std::set<int> a;
    for (int i = 0; i < n; ++i)
      if (mask & (1 << i)) a.insert(i + 1);
    out.insert(a);
  }
  return out;
}

}  // namespace

TEST(Pairs, Counts) {
  EXPECT_EQ(enumerate_pairs(4).size(), 6u);
  ASSERT_EQ(enumerate_pairs(2).size(), 1u);
  EXPECT_EQ(enumerate_pairs(2)[0], PairIndex::make(1, 2));
  for (int n = 2; n <= 7; ++n) {
    std::size_t brute = 0;
    for (int i = 1; i <= n; ++i)
      for (int j = i + 1; j <= n; ++j) ++brute;
    EXPECT_EQ(enumerate_pairs(n).size(), brute);
  }
  EXPECT_EQ(enumerate_pairs(5).size(), 10u);
  EXPECT_THROW(enumerate_pairs(1), fy::Error);
  EXPECT_TRUE(enumerate_pairs_or_empty(1).empty());
}

TEST(Pairs, CanonicalOrderAndFormat) {
  const auto p = enumerate_pairs(4);
  EXPECT_TRUE(std::is_sorted(p.begin(), p.end()));
  EXPECT_EQ(format(p.front()), "12");
  EXPECT_EQ(format(p.back()), "34");
  EXPECT_EQ(PairIndex::make(3, 1), PairIndex::make(1, 3));
  EXPECT_THROW(PairIndex::make(2, 2), fy::Error);
}

TEST(Partitions, FourBody) {
  const auto parts = enumerate_two_cluster_partitions(4);
  ASSERT_EQ(parts.size(), 7u);
  EXPECT_EQ(parts.size(), brute_bipartitions(4).size());
  int k31 = 0, k22 = 0;
  for (const auto& p : parts) {
    if (p.kind() == PartitionKind::ThreePlusOne) ++k31;
    if (p.kind() == PartitionKind::TwoPlusTwo) ++k22;
  }
  EXPECT_EQ(k31, 4);
  EXPECT_EQ(k22, 3);
  EXPECT_EQ(format(parts.front()), "(123)(4)");
  EXPECT_EQ(parts.front().first, (std::vector<int>{1, 2, 3}));
  EXPECT_EQ(parts.front().second, (std::vector<int>{4}));
}

TEST(Partitions, ThreeBody) {
  const auto parts = enumerate_two_cluster_partitions(3);
  ASSERT_EQ(parts.size(), 3u);
  for (const auto& p : parts) EXPECT_EQ(p.kind(), PartitionKind::TwoPlusOne);
}

TEST(Partitions, MatchBruteForceForLargerN) {
  for (int n = 3; n <= 6; ++n) {
    const auto parts = enumerate_two_cluster_partitions(n);
    std::set<std::set<int>> seen;
    for (const auto& p : parts) {
      const auto& cl = std::count(p.first.begin(), p.first.end(), 1) ? p.first : p.second;
      seen.insert(std::set<int>(cl.begin(), cl.end()));
    }
    EXPECT_EQ(seen, brute_bipartitions(n)) << "n=" << n;
  }
}

TEST(Chains, CountsAndKinds) {
  const auto chains = enumerate_chains(4);
  ASSERT_EQ(chains.size(), 18u);
  int k31 = 0, k22 = 0;
  for (const auto& c : chains) {
    EXPECT_TRUE(c.partition.contains(c.pair));
    (c.partition.kind() == PartitionKind::ThreePlusOne ? k31 : k22)++;
  }
  EXPECT_EQ(k31, 12);
  EXPECT_EQ(k22, 6);
  EXPECT_EQ(k31 + k22, 18);
}

TEST(Chains, PerPartition) {
  const auto chains = enumerate_chains(4);
  const auto a = TwoClusterPartition::make({1, 2, 3}, {4});
  const auto b = TwoClusterPartition::make({1, 2}, {3, 4});
  std::vector<std::string> in_a, in_b;
  for (const auto& c : chains) {
    if (c.partition == a) in_a.push_back(format(c.pair));
    if (c.partition == b) in_b.push_back(format(c.pair));
  }
  EXPECT_EQ(in_a, (std::vector<std::string>{"12", "13", "23"}));
  EXPECT_EQ(in_b, (std::vector<std::string>{"12", "34"}));
  EXPECT_EQ(format(chains.front()), "(123)(4)/12");
}

TEST(Chains, ThreeBodyDegenerate) {
  const auto chains = enumerate_chains(3);
  ASSERT_EQ(chains.size(), 3u);
  const auto pairs = enumerate_pairs(3);
  for (std::size_t i = 0; i < 3; ++i) EXPECT_EQ(chains[i].pair, pairs[i]);
  EXPECT_THROW(enumerate_chains(5), fy::Error);
  EXPECT_THROW(Chain::make(TwoClusterPartition::make({1, 2}, {3, 4}), PairIndex::make(1, 3)),
               fy::Error);
}

TEST(PartitionsContaining, Examples) {
  const auto p12 = partitions_containing(PairIndex::make(1, 2), 4);
  ASSERT_EQ(p12.size(), 3u);
  EXPECT_EQ(format(p12[0]), "(123)(4)");
  EXPECT_EQ(format(p12[1]), "(124)(3)");
  EXPECT_EQ(format(p12[2]), "(12)(34)");
  const auto q = partitions_containing(PairIndex::make(1, 2), 3);
  ASSERT_EQ(q.size(), 1u);
  EXPECT_EQ(format(q[0]), "(12)(3)");
  for (const auto& pair : enumerate_pairs(4)) EXPECT_EQ(partitions_containing(pair, 4).size(), 3u);
}

TEST(ChainIdentity, Holds) {
  const auto r = verify_chain_identity(4);
  EXPECT_TRUE(r.reindexing_holds);
  EXPECT_TRUE(r.pair_cover_holds);
  EXPECT_EQ(r.chains_checked, 18u);
  EXPECT_EQ(r.pairs_checked, 6u);
  EXPECT_TRUE(r.violations.empty());
}

TEST(ChainIdentity, PairCoverForTwelve) {
  // Union over the three partitions containing {1,2} of the other pairs in
  // the same partition: every other pair exactly once.
  const auto alpha = PairIndex::make(1, 2);
  std::map<std::string, int> hits;
  for (const auto& a : partitions_containing(alpha, 4))
    for (const auto& beta : enumerate_pairs(4))
      if (beta != alpha && a.contains(beta)) ++hits[format(beta)];
  ASSERT_EQ(hits.size(), 5u);
  for (const auto& [k, v] : hits) EXPECT_EQ(v, 1) << k;
}

TEST(Orbits, FourBody) {
  const auto o = chain_orbits(4);
  ASSERT_EQ(o.orbits.size(), 2u);
  std::multiset<std::size_t> sizes;
  for (const auto& orb : o.orbits) sizes.insert(orb.size());
  EXPECT_EQ(sizes, (std::multiset<std::size_t>{6, 12}));
  const auto chains = enumerate_chains(4);
  for (std::size_t c = 0; c < chains.size(); ++c)
    EXPECT_EQ(o.orbit_of[c], chains[c].partition.kind() == PartitionKind::ThreePlusOne ? 0u : 1u);
}

TEST(Orbits, TranspositionFixesOwnPair) {
  const Permutation swap12{2, 1, 3, 4};
  const auto c = Chain::make(TwoClusterPartition::make({1, 2}, {3, 4}), PairIndex::make(1, 2));
  EXPECT_EQ(fy::combinatorics::apply(swap12, c), c);
}

TEST(GroupAction, PropertiesOverAllPermutations) {
  const auto perms = all_permutations(4);
  ASSERT_EQ(perms.size(), 24u);
  const auto chains = enumerate_chains(4);
  fytest::Rng rng(7);
  for (int trial = 0; trial < 200; ++trial) {
    const auto& p = perms[static_cast<std::size_t>(rng.integer(0, 23))];
    const auto& q = perms[static_cast<std::size_t>(rng.integer(0, 23))];
    EXPECT_EQ(compose(p, inverse(p)), identity_permutation(4));
    for (const auto& c : chains) {
      const Chain image = fy::combinatorics::apply(p, c);
      EXPECT_TRUE(image.partition.contains(image.pair));
      EXPECT_EQ(fy::combinatorics::apply(compose(p, q), c),
                fy::combinatorics::apply(p, fy::combinatorics::apply(q, c)));
    }
  }
  // The action permutes the chain list.
  for (const auto& p : perms) {
    std::set<std::size_t> images;
    for (const auto& c : chains) images.insert(index_of(chains, fy::combinatorics::apply(p, c)));
    EXPECT_EQ(images.size(), 18u);
  }
}

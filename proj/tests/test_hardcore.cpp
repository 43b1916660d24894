#include <gtest/gtest.h>

#include <algorithm>

#include "fy/error.hpp"
#include "fy/hardcore.hpp"
#include "support.hpp"

using namespace fy::hardcore;
using fy::blockops::Operator;
using fy::combinatorics::PairIndex;
using fy::lattice::LatticeModel;
using fytest::Mat;

namespace {

LatticeModel tiny3(std::optional<int> core) {
  auto m = fy::lattice::preset("tiny3");
  m.core_radius = core;
  return m;
}

std::size_t union_size(const LatticeModel& m) {
  const auto mask = core_mask(m);
  return static_cast<std::size_t>(std::count(mask.begin(), mask.end(), true));
}

}  // namespace

TEST(CoreRegion, CoincidenceSet) {
  for (int l : {3, 4, 6}) {
    auto m = tiny3(0);
    m.sites = l;
    for (const auto& p : fy::combinatorics::enumerate_pairs(3))
      EXPECT_EQ(core_region(m, p).sites.size(), static_cast<std::size_t>(l * l));
  }
}

TEST(CoreRegion, RadiusOneCount) {
  const auto r = core_region(tiny3(1), PairIndex::make(1, 2));
  EXPECT_EQ(r.sites.size(), 96u);  // (3L - 2) L with L = 6
  EXPECT_TRUE(std::is_sorted(r.sites.begin(), r.sites.end()));
}

TEST(CoreRegion, PairCoresMeetOnTripleCoincidence) {
  const auto m = tiny3(0);
  const auto a = core_region(m, PairIndex::make(1, 2)).sites;
  const auto b = core_region(m, PairIndex::make(1, 3)).sites;
  std::vector<fy::blockops::Index> both;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(both));
  ASSERT_EQ(both.size(), 6u);
  for (auto s : both) {
    const auto x = fy::lattice::coordinates(m, s);
    EXPECT_TRUE(x[0] == x[1] && x[1] == x[2]);
  }
}

TEST(CoreRegion, NoCoreIsEmpty) {
  EXPECT_TRUE(core_region(tiny3(std::nullopt), PairIndex::make(1, 2)).sites.empty());
}

TEST(RestrictedOracle, DimensionByInclusionExclusion) {
  // c = 0: |A| = L^2 per pair, pairwise and triple intersections = L.
  for (int l : {3, 5, 6}) {
    auto m = tiny3(0);
    m.sites = l;
    EXPECT_EQ(union_size(m), static_cast<std::size_t>(3 * l * l - 3 * l + l));
  }
  // c = 1, L = 6: |A| = 96, pairwise 44, triple 36.
  EXPECT_EQ(union_size(tiny3(1)), static_cast<std::size_t>(3 * 96 - 3 * 44 + 36));
  const auto r = restricted_oracle(tiny3(1), 1);
  EXPECT_EQ(r.kept.size(), 24u);
}

TEST(RestrictedOracle, NoCoreEqualsFullOracle) {
  const auto r = restricted_oracle(tiny3(std::nullopt), 4);
  const auto full = fy::lattice::dense_oracle_spectrum(tiny3(std::nullopt), 4);
  for (std::size_t k = 0; k < 4; ++k)
    EXPECT_NEAR(r.states[k].eigenvalue.real(), full[k].eigenvalue.real(), 1e-12);
}

TEST(RestrictedOracle, OnSiteSupportDeleted) {
  auto m = tiny3(0);
  m.potential = fy::lattice::PairPotential{fy::lattice::PotentialKind::OnSite, {-9.0}};
  auto free = m;
  free.potential.params = {0.0};
  const auto a = restricted_oracle(m, 10), b = restricted_oracle(free, 10);
  for (std::size_t k = 0; k < 10; ++k)
    EXPECT_NEAR(a.states[k].eigenvalue.real(), b.states[k].eigenvalue.real(), 1e-12);
}

TEST(RestrictedOracle, FrozenValuesAndMonotone) {
  const double e_none = restricted_oracle(tiny3(std::nullopt), 1).states[0].eigenvalue.real();
  const double e0 = restricted_oracle(tiny3(0), 1).states[0].eigenvalue.real();
  const double e1 = restricted_oracle(tiny3(1), 1).states[0].eigenvalue.real();
  EXPECT_NEAR(e_none, fytest::kTiny3Ground, 1e-10);
  EXPECT_NEAR(e0, fytest::kTiny3Core0, 1e-10);
  EXPECT_NEAR(e1, fytest::kTiny3Core1, 1e-10);
  EXPECT_LE(e_none, e0);
  EXPECT_LE(e0, e1);
}

TEST(Pencil, NoCoreIsFaddeevPencil) {
  const auto m = tiny3(std::nullopt);
  const auto p = assemble_hardcore3_pencil(m);
  const auto f = fy::faddeev::assemble_faddeev_operator(fy::lattice::build_split(m));
  EXPECT_EQ((fy::blockops::flatten(p.a).to_dense() - fy::blockops::flatten(f).to_dense()).norm(), 0.0);
  EXPECT_EQ(Mat(fy::blockops::flatten(p.b).to_dense()), Mat::Identity(648, 648));
  EXPECT_TRUE(p.constraint_rows.empty());
}

TEST(Pencil, StructureAndCounting) {
  for (int c : {0, 1}) {
    const auto m = tiny3(c);
    const auto p = assemble_hardcore3_pencil(m);
    std::size_t incidences = 0;
    for (const auto& pair : fy::combinatorics::enumerate_pairs(3))
      incidences += core_region(m, pair).sites.size();
    EXPECT_EQ(p.core_incidences, incidences);
    EXPECT_EQ(p.constraint_rows.size(), incidences - p.duplicate_incidences);
    EXPECT_EQ(p.constraint_rows.size(), union_size(m));

    const Mat a = fy::blockops::flatten(p.a).to_dense();
    const Mat b = fy::blockops::flatten(p.b).to_dense();
    const Mat ref = fy::blockops::flatten(
                        fy::faddeev::assemble_faddeev_operator(fy::lattice::build_split(m)))
                        .to_dense();
    const auto d = m.dimension();
    std::vector<bool> is_constraint(static_cast<std::size_t>(3 * d), false);
    for (const auto& [key, row] : p.constraint_rows) {
      is_constraint[static_cast<std::size_t>(row)] = true;
      const auto site = key.second;
      EXPECT_EQ(b.row(row).norm(), 0.0);
      for (int beta = 0; beta < 3; ++beta) EXPECT_EQ(a(row, beta * d + site), 1.0);
      EXPECT_EQ(a.row(row).sum(), 3.0);
    }
    for (Eigen::Index r = 0; r < 3 * d; ++r)
      if (!is_constraint[static_cast<std::size_t>(r)]) {
        EXPECT_EQ((a.row(r) - ref.row(r)).norm(), 0.0) << r;
        EXPECT_EQ(b(r, r), 1.0);
      }
  }
}

TEST(Solve, MatchesRestrictedOracle) {
  const std::pair<int, double> cases[] = {{0, fytest::kTiny3Core0}, {1, fytest::kTiny3Core1}};
  double prev = fytest::kTiny3Ground;
  for (const auto& [c, expect] : cases) {
    const auto m = tiny3(c);
    const auto sol = solve_hardcore3(m, -8.0);
    ASSERT_FALSE(sol.states.empty());
    const auto& st = sol.states.front();
    const double z = st.pencil.eigenvalue.real();
    EXPECT_NEAR(z, expect, 1e-8) << c;
    EXPECT_LE(st.core_max, 1e-10);
    EXPECT_LE(st.restricted_residual, 1e-8);
    EXPECT_LE(restricted_residual(m, z, st.psi), 1e-8);
    const auto p = assemble_hardcore3_pencil(m);
    const Operator a = fy::blockops::flatten(p.a), b = fy::blockops::flatten(p.b);
    EXPECT_LE(fy::blockops::pencil_residual(a, &b, z, st.pencil.eigenvector), 1e-9);
    EXPECT_GE(z, prev - 1e-12);
    prev = z;
  }
}

TEST(Solve, SpuriousRootsBelowAreSkipped) {
  // sigma(H0) has points below the c = 0 restricted ground state; targeting
  // just below the physical level must still return it.
  const double h0_min = fytest::dirichlet_levels(3, 6, 1.0).front();
  ASSERT_LT(h0_min, fytest::kTiny3Core0);
  const auto sol = solve_hardcore3(tiny3(0), h0_min + 1e-3);
  EXPECT_NEAR(sol.states.front().pencil.eigenvalue.real(), fytest::kTiny3Core0, 1e-8);
}

TEST(Solve, FindsEveryLowRestrictedState) {
  const auto m = tiny3(1);
  const auto oracle = restricted_oracle(m, 24);
  HardcoreOptions opts;
  opts.count = 10;
  const auto sol = solve_hardcore3(m, 0.0, opts);
  ASSERT_EQ(sol.states.size(), 10u);
  std::vector<double> got;
  for (const auto& st : sol.states) got.push_back(st.pencil.eigenvalue.real());
  std::sort(got.begin(), got.end());
  for (std::size_t k = 0; k < 10; ++k) EXPECT_NEAR(got[k], oracle.states[k].eigenvalue.real(), 1e-8);
}

TEST(Solve, CoreBeyondAttractionHasNoBinding) {
  auto m = tiny3(1);
  m.potential = fy::lattice::PairPotential{fy::lattice::PotentialKind::SquareWell, {-3.0, 1.0}};
  const double free_min = fytest::dirichlet_levels(3, 6, 1.0).front();
  const auto sol = solve_hardcore3(m, 0.0);
  EXPECT_GE(sol.states.front().pencil.eigenvalue.real(), free_min);
}

TEST(Solve, SurfaceOnlyAgreesForZeroCore) {
  HardcoreOptions opts;
  opts.pencil.surface_only = true;
  const auto sol = solve_hardcore3(tiny3(0), -8.0, opts);
  EXPECT_NEAR(sol.states.front().pencil.eigenvalue.real(), fytest::kTiny3Core0, 1e-8);
}

TEST(FourBody, TrivialCases) {
  const auto m4 = fy::lattice::preset("tiny4");
  const fy::yakubovsky::YakubovskySystem sys(fy::lattice::build_split(m4));
  const auto none = assemble_hardcore4_constraints(sys, m4);
  EXPECT_EQ(none.constraint_sites(), 0u);

  auto core = m4;
  core.core_radius = 0;
  const fy::yakubovsky::YakubovskySystem sys0(fy::lattice::build_split(core));
  const auto ev = assemble_hardcore4_constraints(sys0, core);
  EXPECT_EQ(ev.constraint_sites(), 18u * 64u);
  fy::yakubovsky::YakubovskyComponents zero{0.0, std::vector<fy::blockops::Vector>(
                                                     18, fy::blockops::Vector::Zero(256))};
  const auto d = ev.evaluate(zero);
  EXPECT_EQ(d.max_defect, 0.0);
  EXPECT_EQ(d.max_defect_excluding_self, 0.0);
}

TEST(FourBody, LiteralConditionByHand) {
  // One chain lit: C on that chain = 2 psi (own term plus itself in the
  // partition sum); chains sharing the partition see psi once.
  auto m = fy::lattice::preset("tiny4");
  m.sites = 2;
  m.core_radius = 0;
  const fy::yakubovsky::YakubovskySystem sys(fy::lattice::build_split(m));
  const auto ev = assemble_hardcore4_constraints(sys, m);
  fy::yakubovsky::YakubovskyComponents c{0.0, std::vector<fy::blockops::Vector>(
                                                  18, fy::blockops::Vector::Zero(16))};
  c.components[0].setConstant(1.0);
  const auto d = ev.evaluate(c);
  EXPECT_EQ(d.max_defect, 2.0);
  EXPECT_EQ(d.max_defect_excluding_self, 1.0);
}

TEST(FourBody, RestrictedComponentsGiveFiniteDefect) {
  auto m = fy::lattice::preset("tiny4");
  m.core_radius = 0;
  const fy::yakubovsky::YakubovskySystem sys(fy::lattice::build_split(m));
  const auto g = restricted_oracle(m, 1).states.front();
  const auto comps = hardcore4_components(sys, g.eigenvalue.real(), g.eigenvector);
  const auto d = assemble_hardcore4_constraints(sys, m).evaluate(comps.chains);
  EXPECT_TRUE(std::isfinite(d.max_defect));
  // On-site potentials vanish with the core, so every component is zero.
  EXPECT_EQ(d.component_scale, 0.0);
}

TEST(FourBody, ComponentsMatchResolventConstructionWhenRegular) {
  const auto m = fy::lattice::preset("tiny4");
  const fy::yakubovsky::YakubovskySystem sys(fy::lattice::build_split(m));
  const auto g = fy::lattice::dense_oracle_spectrum(m, 1).front();
  const double z = g.eigenvalue.real();
  const auto hc = hardcore4_components(sys, z, g.eigenvector);
  EXPECT_TRUE(hc.pseudo_inverse_channels.empty());
  const auto f = fy::faddeev::faddeev_components(sys.split(), z, g.eigenvector);
  const auto y = fy::yakubovsky::yakubovsky_components(sys, z, f);
  for (std::size_t k = 0; k < 18; ++k)
    EXPECT_LE((hc.chains.components[k] - y.components[k]).norm(), 1e-10);
}

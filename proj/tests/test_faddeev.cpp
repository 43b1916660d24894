#include <gtest/gtest.h>

#include <Eigen/Eigenvalues>

#include "fy/error.hpp"
#include "fy/faddeev.hpp"
#include "fy/lattice.hpp"
#include "support.hpp"

using namespace fy::faddeev;
using fy::blockops::Complex;
using fy::blockops::Operator;
using fytest::Mat;
using fytest::Rng;

namespace {

FewBodySplit split_from(const Mat& h0, const std::vector<Mat>& v) {
  FewBodySplit s{Operator::dense(h0), {}};
  for (const auto& m : v) s.potentials.push_back(Operator::dense(m));
  return s;
}

// Symmetric model with a ground state of H below sigma(H0).
FewBodySplit bound_model(std::uint64_t seed, int n, int d) {
  Rng rng(seed);
  Mat h0 = rng.matrix(d, true) + 3.0 * Mat::Identity(d, d);
  std::vector<Mat> v;
  for (int a = 0; a < n; ++a) v.push_back(rng.matrix(d, true) - 1.0 * Mat::Identity(d, d));
  return split_from(h0, v);
}

struct Pair {
  double z;
  fy::blockops::Vector psi;
};

Pair ground(const FewBodySplit& s) {
  Eigen::SelfAdjointEigenSolver<Mat> es(s.total().to_dense());
  return {es.eigenvalues()[0], es.eigenvectors().col(0)};
}

}  // namespace

TEST(FaddeevOperator, TwoChannelScalar) {
  const auto s = split_from(Mat::Zero(1, 1), {Mat::Constant(1, 1, 1.0), Mat::Constant(1, 1, 2.0)});
  Mat expect(2, 2);
  expect << 1, 1, 2, 2;
  EXPECT_EQ(fy::blockops::flatten(assemble_faddeev_operator(s)).to_dense(), expect);
}

TEST(FaddeevOperator, ZeroPotentialsGiveBlockDiagonal) {
  Rng rng(1);
  const Mat h0 = rng.matrix(3, false);
  const auto s = split_from(h0, {Mat::Zero(3, 3), Mat::Zero(3, 3), Mat::Zero(3, 3)});
  const Mat f = fy::blockops::flatten(assemble_faddeev_operator(s)).to_dense();
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      const Mat blk = f.block(3 * i, 3 * j, 3, 3);
      EXPECT_EQ(blk, i == j ? h0 : Mat::Zero(3, 3));
    }
}

TEST(FaddeevOperator, SumMapIntertwines) {
  // S H_F = H S with S the component sum: the structural reason behind the
  // spectral inclusion, checked on random vectors.
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const auto s = random_split(seed, 3, 4, false);
    const auto hf = assemble_faddeev_operator(s);
    const Mat h = s.total().to_dense();
    const auto x = Rng(seed).vector(12);
    const auto y = hf.apply(x);
    const auto sum = [](const fy::blockops::Vector& v) {
      return fy::blockops::Vector(v.segment(0, 4) + v.segment(4, 4) + v.segment(8, 4));
    };
    EXPECT_LE((sum(y) - h * sum(x)).norm(), 1e-12);
  }
}

TEST(SpectrumUnion, ZeroPerturbation) {
  Mat h0 = Mat::Zero(2, 2);
  h0.diagonal() << 1, 2;
  const auto s = split_from(h0, {Mat::Zero(2, 2), Mat::Zero(2, 2)});
  const auto r = spectrum_union_check(s);
  EXPECT_TRUE(r.passed);
  EXPECT_EQ(r.max_matching_distance, 0.0);
  const auto ev = fy::blockops::dense_eigenvalues(fy::blockops::flatten(assemble_faddeev_operator(s)));
  ASSERT_EQ(ev.size(), 4u);
  EXPECT_EQ(ev[0], Complex(1, 0));
  EXPECT_EQ(ev[1], Complex(1, 0));
  EXPECT_EQ(ev[2], Complex(2, 0));
  EXPECT_EQ(ev[3], Complex(2, 0));
}

TEST(SpectrumUnion, AgainstCharacteristicPolynomialOracle) {
  // Both sides computed by the test oracle, independent of the library's QR.
  for (std::uint64_t seed = 1; seed <= 15; ++seed) {
    const auto s = random_split(seed, 2 + seed % 2, 3, seed % 3 == 0);
    const Mat hf = fy::blockops::flatten(assemble_faddeev_operator(s)).to_dense();
    const auto f = fytest::charpoly_eigenvalues(hf);
    auto u = fytest::charpoly_eigenvalues(s.total().to_dense());
    const auto h0 = fytest::charpoly_eigenvalues(s.h0.to_dense());
    u.insert(u.end(), h0.begin(), h0.end());
    EXPECT_LE(fytest::nearest(u, f), 1e-7) << "seed " << seed;
    EXPECT_LE(fytest::nearest(f, u), 1e-7) << "seed " << seed;
  }
}

TEST(SpectrumUnion, SeededHermitianAndFourBodyCounts) {
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    EXPECT_TRUE(spectrum_union_check(random_split(seed, 3, 5, true)).passed) << seed;
    EXPECT_TRUE(spectrum_union_check(random_split(seed, 6, 3, false)).passed) << seed;
  }
}

TEST(SpectrumUnion, MultiplicityOfUnperturbedPoints) {
  // Measured: sigma(H0) appears n-1 times in sigma(H_F) on generic models.
  const auto r = spectrum_union_check(random_split(42, 3, 4, true));
  ASSERT_TRUE(r.passed);
  for (const auto& m : r.multiplicity) EXPECT_EQ(m.in_faddeev, 2 * m.in_h0 + m.in_h);
}

TEST(RandomSplit, Deterministic) {
  const auto a = random_split(5, 3, 4, true), b = random_split(5, 3, 4, true);
  EXPECT_EQ(a.h0.to_dense(), b.h0.to_dense());
  for (int k = 0; k < 3; ++k) {
    EXPECT_EQ(a.potentials[k].to_dense(), b.potentials[k].to_dense());
    const Mat v = a.potentials[k].to_dense();
    EXPECT_EQ(v, v.transpose());
    EXPECT_LE(v.cwiseAbs().maxCoeff(), 1.0);
  }
  EXPECT_NE(random_split(6, 3, 4, true).h0.to_dense(), a.h0.to_dense());
}

TEST(LippmannSchwinger, EigenpairHasSmallResidual) {
  const auto s = bound_model(3, 3, 6);
  const auto g = ground(s);
  EXPECT_LE(lippmann_schwinger_residual(s, g.z, g.psi), 1e-10);
}

TEST(LippmannSchwinger, FreeSystemGivesOne) {
  Rng rng(2);
  const Mat h0 = rng.matrix(4, true) + 3.0 * Mat::Identity(4, 4);
  const auto s = split_from(h0, {Mat::Zero(4, 4), Mat::Zero(4, 4)});
  EXPECT_DOUBLE_EQ(lippmann_schwinger_residual(s, -10.0, rng.vector(4)), 1.0);
}

TEST(LippmannSchwinger, NonEigenvectorIsLarge) {
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const auto s = bound_model(seed, 3, 6);
    const auto g = ground(s);
    EXPECT_GT(lippmann_schwinger_residual(s, g.z, Rng(seed + 100).vector(6)), 1e-3);
  }
}

TEST(LippmannSchwinger, SpuriousEnergyThrows) {
  Mat h0 = Mat::Zero(2, 2);
  h0.diagonal() << 1, 2;
  const auto s = split_from(h0, {Mat::Identity(2, 2), Mat::Identity(2, 2)});
  try {
    lippmann_schwinger_residual(s, 1.0, fy::blockops::Vector::Ones(2));
    FAIL();
  } catch (const fy::Error& e) {
    EXPECT_EQ(e.kind(), fy::ErrorKind::SpuriousEnergy);
  }
}

TEST(Components, SumToPsiAndSatisfyEquations) {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const auto s = bound_model(seed, 3, 6);
    const auto g = ground(s);
    const auto c = faddeev_components(s, g.z, g.psi);
    EXPECT_LE((component_sum(c.components) - g.psi).norm(), 1e-10);
    for (double r : faddeev_residual(s, c)) EXPECT_LE(r, 1e-9);
    const auto mapped = faddeev_integral_map(s, g.z, c.components);
    for (std::size_t a = 0; a < 3; ++a)
      EXPECT_LE((mapped[a] - c.components[a]).norm(), 1e-9 * (1 + c.components[a].norm()));
  }
}

TEST(Components, TwoChannelsWithOneZeroPotential) {
  Rng rng(8);
  const Mat h0 = rng.matrix(5, true) + 3.0 * Mat::Identity(5, 5);
  const Mat v1 = rng.matrix(5, true) - 2.0 * Mat::Identity(5, 5);
  const auto s = split_from(h0, {v1, Mat::Zero(5, 5)});
  const auto g = ground(s);
  const auto c = faddeev_components(s, g.z, g.psi);
  EXPECT_LE((c.components[0] - g.psi).norm(), 1e-10);
  EXPECT_EQ(c.components[1].norm(), 0.0);
  // H0 + V_1 = H, so channel 1 is singular at every eigenvalue of H.
  try {
    faddeev_integral_map(s, g.z, c.components);
    FAIL();
  } catch (const fy::ChannelEnergyError& e) {
    EXPECT_EQ(e.channel(), 0);
  }
}

TEST(Components, RejectsNonEigenpair) {
  const auto s = bound_model(4, 3, 6);
  const auto g = ground(s);
  try {
    faddeev_components(s, g.z + 0.1, g.psi);
    FAIL();
  } catch (const fy::Error& e) {
    EXPECT_EQ(e.kind(), fy::ErrorKind::PreconditionViolation);
  }
}

TEST(Residual, ZeroComponentsAndPerturbation) {
  const auto s = bound_model(6, 3, 6);
  FaddeevComponents zero{0.5, std::vector<fy::blockops::Vector>(3, fy::blockops::Vector::Zero(6))};
  for (double r : faddeev_residual(s, zero)) EXPECT_EQ(r, 0.0);

  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const auto m = bound_model(seed, 3, 6);
    const auto g = ground(m);
    auto c = faddeev_components(m, g.z, g.psi);
    c.components[1] += 1e-3 * Rng(seed + 50).vector(6);
    EXPECT_GE(faddeev_residual(m, c)[1], 1e-5) << seed;
  }
}

TEST(IntegralMap, ZeroPotentialsAnnihilate) {
  Rng rng(12);
  const Mat h0 = rng.matrix(4, true) + 3.0 * Mat::Identity(4, 4);
  const auto s = split_from(h0, {Mat::Zero(4, 4), Mat::Zero(4, 4), Mat::Zero(4, 4)});
  const auto out = faddeev_integral_map(s, -1.0, {rng.vector(4), rng.vector(4), rng.vector(4)});
  for (const auto& v : out) EXPECT_EQ(v.norm(), 0.0);
}

TEST(IntegralMap, SingularChannelNamesChannel) {
  Mat h0 = Mat::Zero(2, 2);
  h0.diagonal() << 1, 2;
  Mat v = Mat::Zero(2, 2);
  v(0, 0) = 1.0;  // channel 1: diag(2, 2)
  const auto s = split_from(h0, {Mat::Identity(2, 2) * 5.0, v});
  try {
    faddeev_integral_map(s, 2.0, {fy::blockops::Vector::Ones(2), fy::blockops::Vector::Ones(2)});
    FAIL();
  } catch (const fy::ChannelEnergyError& e) {
    EXPECT_EQ(e.channel(), 1);
  }
}

TEST(Components, ThreeBosonLattice) {
  const auto model = fy::lattice::preset("tiny3");
  const auto split = fy::lattice::build_split(model);
  const auto g = fy::lattice::dense_oracle_spectrum(model, 1).front();
  const auto c = faddeev_components(split, g.eigenvalue.real(), g.eigenvector);
  for (double r : faddeev_residual(split, c)) EXPECT_LE(r, 1e-9);
  EXPECT_LE((component_sum(c.components) - g.eigenvector).norm(), 1e-10);
}

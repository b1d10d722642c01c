#include <gtest/gtest.h>

#include <chrono>

#include "test_support.hpp"
#include "weil/chainlab/verifier.hpp"

using namespace weil::chainlab;
using weil::exactalg::IntMatrix;
using weil::exactalg::IntVector;

namespace {

FiniteModule z5_times2() { return FiniteModule::from_moduli({5}, IntMatrix{{2}}); }

LevelElement<IntVector> scalars(std::initializer_list<long> xs) {
  LevelElement<IntVector> f;
  for (long x : xs) f.entries.push_back(IntVector{x});
  return f;
}

}  // namespace

TEST(Level, TwistedShift) {
  const auto M = z5_times2();
  EXPECT_TRUE(level_equal(M, t_twisted(M, scalars({1, 3})), scalars({1, 2})));
  EXPECT_TRUE(level_equal(M, t_plain(scalars({1, 3})), scalars({3, 1})));
  EXPECT_TRUE(level_equal(M, tau(scalars({1, 2, 3}), 1), scalars({2, 3, 1})));
  EXPECT_TRUE(level_equal(M, tau(scalars({1, 2, 3}), -4), scalars({3, 1, 2})));
}

TEST(Level, DeltaAndNorm) {
  const auto M = z5_times2();
  EXPECT_TRUE(level_equal(M, delta(scalars({1, 2}), 3), scalars({1, 2, 1, 2, 1, 2})));
  EXPECT_TRUE(level_equal(M, big_delta(M, IntVector{1}, 4), scalars({1, 2, 4, 3})));
  EXPECT_THROW(big_delta(M, IntVector{1}, 2), weil::NotFixed);

  const auto Z7 = FiniteModule::from_moduli({7}, IntMatrix{{3}});
  EXPECT_EQ(norm(Z7, IntVector{1}, 1, 2), (IntVector{6}));
  EXPECT_EQ(norm(Z7, IntVector{1}, 1, 6), (IntVector{0}));
  EXPECT_EQ(big_s(M, scalars({1, 2, 4, 3})), (IntVector{4}));
}

TEST(Level, RWitness) {
  const auto M = z5_times2();
  EXPECT_TRUE(level_equal(M, r_witness(M, IntVector{1}, 2, 3), scalars({4, 3, 0})));
  EXPECT_TRUE(level_equal(M, r_witness(M, IntVector{1}, 0, 3), scalars({0, 0, 0})));
  EXPECT_THROW(r_witness(M, IntVector{1}, 3, 3), weil::IndexOutOfRange);
  // (t - 1) R_2(1) has 1 at index 2 and -phi^{-2} = -4 at index 0.
  EXPECT_TRUE(level_equal(M, t_minus_one(M, r_witness(M, IntVector{1}, 2, 3)), scalars({1, 0, 1})));
}

TEST(Level, NuNeedsTheDiagonalAction) {
  const auto M = z5_times2();
  const auto f = scalars({1, 0, 0, 0});
  EXPECT_FALSE(level_equal(M, nu(M, tau(f, 1)), tau(nu(M, f), 1)));
  EXPECT_TRUE(level_equal(M, nu(M, tau_diagonal(M, f, 1)), tau(nu(M, f), 1)));
  EXPECT_THROW(nu(M, scalars({1, 0})), weil::NotFixed);
}

TEST(Level, MuWorkedValues) {
  EXPECT_EQ(mu(scalars({2})), KahnM(0, -2));
  EXPECT_EQ(mu(scalars({1, 0})), KahnM(Rational(1, 2), Rational(-1, 2)));
  EXPECT_EQ(mu(scalars({0, 1})), KahnM(0, Rational(-1, 2)));
  EXPECT_EQ(KahnM(Rational(7, 3), 1).first(), Rational(1, 3));
  EXPECT_EQ(KahnM(Rational(1, 3), Rational(1, 3)).act(2), KahnM(0, Rational(1, 3)));
  EXPECT_EQ(norm_colimit_value(6, 4), Rational(3, 2));
  LevelElement<IntVector> wide{{IntVector{1, 2}}};
  EXPECT_THROW(mu(wide), weil::UnsupportedVariant);
}

TEST(LevelCohomology, FiniteExamples) {
  const CoefModule M = z5_times2();
  auto two = level_cohomology(M, 2);
  EXPECT_TRUE(two.h0.is_trivial());
  EXPECT_TRUE(two.h1.is_trivial());
  EXPECT_TRUE(two.consistent());
  auto four = level_cohomology(M, 4);
  EXPECT_EQ(four.h0.invariant_factors(), (IntVector{5}));
  EXPECT_EQ(four.h1.invariant_factors(), (IntVector{5}));
  EXPECT_TRUE(four.consistent());
}

TEST(LevelCohomology, LatticeExamples) {
  const CoefModule rot = LatticeModule(IntMatrix{{0, -1}, {1, 0}});
  EXPECT_TRUE(level_cohomology(rot, 1).h0.is_trivial());
  EXPECT_EQ(level_cohomology(rot, 1).h1.invariant_factors(), (IntVector{2}));
  EXPECT_EQ(level_cohomology(rot, 2).h1.invariant_factors(), (IntVector{2, 2}));
  EXPECT_EQ(level_cohomology(rot, 4).h0.rank(), 2u);
  for (std::size_t m = 1; m <= 5; ++m) EXPECT_TRUE(level_cohomology(rot, m).consistent());
  EXPECT_THROW(level_cohomology(RationalModule(RatMatrix{{2}}), 1), weil::UnsupportedVariant);
}

// Brute-force count of level-m cycles of small finite modules.
TEST(LevelCohomology, CycleCountMatchesEnumeration) {
  std::mt19937_64 rng(41);
  for (int trial = 0; trial < 40; ++trial) {
    const FiniteModule M = random_finite_module(rng, 24);
    const std::size_t m = std::uniform_int_distribution<std::size_t>(1, 3)(rng);
    const auto elems = weil::testing::enumerate_elements(M.smith_group());
    std::vector<std::size_t> idx(m, 0);
    long cycles = 0;
    for (;;) {
      LevelElement<IntVector> f;
      for (std::size_t i = 0; i < m; ++i) f.entries.push_back(M.reduce(elems[idx[i]]));
      if (level_equal(M, t_minus_one(M, f), level_zero(M, m))) ++cycles;
      std::size_t p = 0;
      while (p < m && ++idx[p] == elems.size()) idx[p++] = 0;
      if (p == m) break;
    }
    auto h = level_cohomology(CoefModule(M), m);
    ASSERT_EQ(*h.h0.order(), cycles);
    ASSERT_EQ(*h.h1.order(), cycles);
    ASSERT_TRUE(h.consistent());
  }
}

TEST(LevelCohomology, RationalDimensions) {
  const RationalModule M(RatMatrix{{1, 0}, {0, 2}});
  auto h = rational_level_cohomology(M, 3);
  EXPECT_EQ(h.h0, 1u);
  EXPECT_EQ(h.h1, 1u);
  EXPECT_TRUE(h.consistent());
  auto s = splitting_check(RationalModule(RatMatrix{{0, -1}, {1, 0}}), 4);
  EXPECT_EQ(s.fixed_dimension, 2u);
  EXPECT_TRUE(s.identity_verified);
}

TEST(ConnectingHom, ExtensionClassIsN) {
  for (long n = -3; n <= 3; ++n) {
    const FpMorphism d = connecting_hom(extension_sequence(n));
    ASSERT_EQ(d.source().rank(), 1u);
    ASSERT_EQ(abs(d.matrix()(0, 0)), std::abs(n));
  }
}

TEST(ConnectingHom, FiniteSequence) {
  // 0 -> Z/2 -> Z/4 -> Z/2 -> 0 with trivial action: boundary is zero.
  ShortExactSequence ses{FiniteModule::from_moduli({2}, IntMatrix{{1}}),
                         FiniteModule::from_moduli({4}, IntMatrix{{1}}),
                         FiniteModule::from_moduli({2}, IntMatrix{{1}}), IntMatrix{{2}},
                         IntMatrix{{1}}};
  EXPECT_TRUE(connecting_hom(ses).is_zero_map());
  // phi = -1 on Z/4 makes the boundary Z/2 -> Z/2 an isomorphism.
  ses.middle = FiniteModule::from_moduli({4}, IntMatrix{{3}});
  EXPECT_FALSE(connecting_hom(ses).is_zero_map());
}

TEST(ConnectingHom, RejectsBadSequences) {
  auto ses = extension_sequence(1);
  ses.projection = IntMatrix{{1, 0}};
  EXPECT_THROW(connecting_hom(ses), weil::NotEquivariant);
  ses = extension_sequence(0);
  ses.projection = IntMatrix{{0, 2}};
  EXPECT_THROW(connecting_hom(ses), weil::NotExact);
  ses = extension_sequence(0);
  ses.inclusion = IntMatrix{{2}, {0}};
  EXPECT_THROW(connecting_hom(ses), weil::NotExact);
}

TEST(StableInvariants, Examples) {
  EXPECT_EQ(stable_invariants(LatticeModule(IntMatrix{{0, -1}, {1, 0}})).rank(), 2u);
  EXPECT_EQ(stable_invariants(LatticeModule(IntMatrix{{1, 1}, {0, 1}})).rank(), 1u);
  EXPECT_EQ(stable_invariants(LatticeModule(IntMatrix{{2, 1}, {1, 1}})).rank(), 0u);
  EXPECT_EQ(stable_invariants(RationalModule(RatMatrix{{-1, 0}, {0, 3}})).rank(), 1u);
  EXPECT_EQ(stable_invariants(z5_times2()).invariant_factors(), (IntVector{5}));
  EXPECT_EQ(stable_period(RatMatrix{{0, -1}, {1, 0}}), 4u);
  EXPECT_EQ(stable_period(RatMatrix{{-1, 0, 0}, {0, 0, -1}, {0, 1, -1}}), 6u);
}

TEST(Lab, StandardIdentitiesHold) {
  const auto start = std::chrono::steady_clock::now();
  LabConfig config;
  config.seed = 17;
  const LabReport report = run_lab(config);
  EXPECT_TRUE(report.ok()) << report.summary();
  EXPECT_LT(std::chrono::steady_clock::now() - start, std::chrono::seconds(60));
  for (const auto& r : report.results) EXPECT_GT(r.passed, 0u) << r.name;
}

TEST(Lab, DeterministicForASeed) {
  LabConfig config;
  config.seed = 5;
  config.cases = 30;
  EXPECT_EQ(run_lab(config).summary(), run_lab(config).summary());
}

TEST(Lab, FalseIdentityIsMinimized) {
  LabIdentity bogus{"c vanishes", [](const LabCase& k) {
                      return k.module.equal(k.c, k.module.zero()) ? Verdict::Pass : Verdict::Fail;
                    }};
  LabConfig config;
  config.cases = 20;
  const LabReport report = run_lab(config, {bogus});
  ASSERT_FALSE(report.ok());
  ASSERT_FALSE(report.results[0].counterexamples.empty());

  std::mt19937_64 rng(3);
  LabCase k = random_case(rng, config);
  while (k.module.equal(k.c, k.module.zero())) k = random_case(rng, config);
  const LabCase small = minimize(k, bogus);
  EXPECT_EQ(small.m, 1u);
  EXPECT_EQ(small.n, 1u);
  EXPECT_EQ(small.a, 0);
  EXPECT_TRUE(level_equal(small.module, small.f, level_zero(small.module, 1)));
  std::size_t nonzero = 0;
  for (const auto& x : small.c) nonzero += (x != 0);
  EXPECT_EQ(nonzero, 1u);
  EXPECT_NE(serialize(small, bogus.name).find("\"identity\":\"c vanishes\""), std::string::npos);
}

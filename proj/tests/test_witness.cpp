#include <gtest/gtest.h>

#include <cmath>

#include "cvring/gaussian.hpp"
#include "cvring/witness.hpp"
#include "support/oracles.hpp"

using namespace cvring;

namespace {

constexpr double kHalfPi = oracle::kPi / 2;

ArrayConfig make(int n, double j, double eta, PumpProfile pump = UniformPhase{}) {
  ArrayConfig c;
  c.n_modes = n;
  c.coupling = j;
  c.eta_mag = eta;
  c.pump = pump;
  return c;
}

}  // namespace

TEST(VlfPair, VacuumIsFour) {
  oracle::ConfigGenerator gen(1);
  const CovarianceMatrix v = vacuum(6);
  for (int trial = 0; trial < 50; ++trial) {
    const int a = gen.integer(1, 6);
    const int b = 1 + (a + gen.integer(0, 4)) % 6;
    EXPECT_NEAR(vlf_pair(v, a, b, gen.uniform(0, 7), gen.uniform(0, 7)), 4.0, 1e-14);
  }
  EXPECT_EQ(vlf_pair(v, 1, 2, 0.0, kHalfPi), 4.0);
}

TEST(VlfPair, MatchesQuadratureVectorOracle) {
  oracle::ConfigGenerator gen(7);
  for (int trial = 0; trial < 40; ++trial) {
    const ArrayConfig c = gen.shift_config(3, 10);
    const CovarianceMatrix v = propagated_covariance(c, gen.uniform(0, 20));
    const int a = gen.integer(1, c.n_modes);
    const int b = 1 + (a + gen.integer(0, c.n_modes - 2)) % c.n_modes;
    const double ta = gen.uniform(0, 2 * oracle::kPi);
    const double tb = gen.uniform(0, 2 * oracle::kPi);
    const double value = vlf_pair(v, a, b, ta, tb);
    EXPECT_NEAR(value, oracle::vlf(v.matrix, a, b, ta, tb), 1e-12 * std::max(1.0, value));
    EXPECT_GE(value, 0.0);
  }
}

TEST(VlfPair, Errors) {
  const CovarianceMatrix v = vacuum(4);
  EXPECT_THROW(vlf_pair(v, 2, 2, 0, 0), std::invalid_argument);
  EXPECT_THROW(vlf_pair(v, 0, 2, 0, 0), std::invalid_argument);
  EXPECT_THROW(vlf_pair(v, 1, 5, 0, 0), std::invalid_argument);
  EXPECT_THROW(vlf_pair(vacuum(4, Basis::kFourier), 1, 2, 0, 0), std::invalid_argument);
}

TEST(VlfPair, FourModeRingBelowThreshold) {
  const ArrayConfig c = make(4, 0.45, 0.015);
  for (double z : {5.0, 10.0, 20.0}) {
    EXPECT_LT(vlf_pair(closed_form_covariance(c, z), 1, 3, 0.0, kHalfPi), 4.0) << z;
  }
}

TEST(VlfPair, AngleSwapWithinPairIsEquivalent) {
  // x(pi/2) = y and y(pi/2) = -x, so (pi/2, 0) and (0, pi/2) give the same sum.
  const CovarianceMatrix v = closed_form_covariance(make(8, 0.45, 0.015, AlternatingHalfPi{}), 12.0);
  EXPECT_NEAR(vlf_pair(v, 3, 5, kHalfPi, 0.0), vlf_pair(v, 3, 5, 0.0, kHalfPi), 1e-13);
}

TEST(Loss, AffineLaw) {
  oracle::ConfigGenerator gen(13);
  for (int trial = 0; trial < 40; ++trial) {
    const ArrayConfig c = gen.special_config();
    const CovarianceMatrix v = closed_form_covariance(c, gen.uniform(0, 20));
    const double t = gen.uniform(0, 1);
    const CovarianceMatrix lossy = apply_loss(v, t);
    const int a = gen.integer(1, c.n_modes);
    const int b = 1 + a % c.n_modes;
    const double ta = gen.uniform(0, 6.3), tb = gen.uniform(0, 6.3);
    const double expected = t * vlf_pair(v, a, b, ta, tb) + 4.0 * (1.0 - t);
    EXPECT_NEAR(vlf_pair(lossy, a, b, ta, tb), expected, 1e-12 * std::max(1.0, expected));
  }
}

TEST(ModeSets, Partition) {
  EXPECT_EQ(partition_mode_sets(4).odd, (std::vector<int>{1, 3}));
  EXPECT_EQ(partition_mode_sets(4).even, (std::vector<int>{2, 4}));
  EXPECT_EQ(partition_mode_sets(8).odd, (std::vector<int>{1, 3, 5, 7}));
  EXPECT_EQ(partition_mode_sets(8).even, (std::vector<int>{2, 4, 6, 8}));
  const ModeSets twelve = partition_mode_sets(12);
  EXPECT_EQ(twelve.odd, (std::vector<int>{1, 3, 5, 7, 9, 11}));
  EXPECT_EQ(twelve.even, (std::vector<int>{2, 4, 6, 8, 10, 12}));
  EXPECT_EQ(partition_mode_sets(5).odd.size(), 3u);
}

TEST(ModeSets, DefaultAnglesAlternate) {
  EXPECT_EQ(default_chain_angles(4), (std::vector<double>{0.0, kHalfPi, 0.0, kHalfPi}));
}

TEST(FullInseparability, Vacuum) {
  const std::vector<int> modes{1, 3, 5, 7};
  const VlfReport r = full_inseparability_check(vacuum(8), modes);
  ASSERT_EQ(r.pairs.size(), 3u);
  for (const auto& p : r.pairs) EXPECT_EQ(p.value, 4.0);
  EXPECT_FALSE(r.fully_inseparable);
  EXPECT_TRUE(r.pure_state);
  EXPECT_FALSE(r.genuine_by_purity());
}

TEST(FullInseparability, UniformPumpOddSet) {
  const CovarianceMatrix v = closed_form_covariance(make(8, 0.45, 0.015), 20.0);
  const std::vector<int> modes{1, 3, 5, 7};
  const VlfReport r = full_inseparability_check(v, modes);
  ASSERT_EQ(r.pairs.size(), 3u);
  for (const auto& p : r.pairs) EXPECT_LT(p.value, 4.0);
  EXPECT_TRUE(r.fully_inseparable);
  EXPECT_TRUE(r.genuine_by_purity());
  EXPECT_EQ(r.pairs[1].mode_a, 3);
  EXPECT_EQ(r.pairs[1].mode_b, 5);
}

TEST(FullInseparability, AlternatingPiIsSeparable) {
  const CovarianceMatrix v = closed_form_covariance(make(8, 0.45, 0.015, AlternatingPi{}), 20.0);
  const ModeSets sets = partition_mode_sets(8);
  for (const auto& set : {sets.odd, sets.even}) {
    const VlfReport r = full_inseparability_check(v, set);
    for (const auto& p : r.pairs) EXPECT_GE(p.value, 4.0);
    EXPECT_FALSE(r.fully_inseparable);
  }
}

TEST(FullInseparability, VerdictMatchesPairs) {
  oracle::ConfigGenerator gen(29);
  for (int trial = 0; trial < 30; ++trial) {
    const ArrayConfig c = gen.special_config();
    const CovarianceMatrix v = closed_form_covariance(c, gen.uniform(0, 20));
    const ModeSets sets = partition_mode_sets(c.n_modes);
    const VlfReport r = full_inseparability_check(v, sets.even);
    bool all_below = true;
    for (const auto& p : r.pairs) all_below = all_below && p.value < 4.0;
    EXPECT_EQ(r.fully_inseparable, all_below);
    EXPECT_EQ(r.pairs.size(), sets.even.size() - 1);
  }
}

TEST(FullInseparability, Errors) {
  const CovarianceMatrix v = vacuum(4);
  EXPECT_THROW(full_inseparability_check(v, std::vector<int>{1}), std::invalid_argument);
  EXPECT_THROW(full_inseparability_check(v, std::vector<int>{1, 5}), std::invalid_argument);
  EXPECT_THROW(full_inseparability_check(v, std::vector<int>{1, 3, 1}), std::invalid_argument);
  EXPECT_THROW(full_inseparability_check(v, std::vector<int>{1, 3}, std::vector<double>{0.0}),
               std::invalid_argument);
}

TEST(FullInseparability, LossAnnotation) {
  const CovarianceMatrix v = apply_loss(closed_form_covariance(make(4, 0.45, 0.015), 20.0), 0.7);
  const VlfReport r = full_inseparability_check(v, std::vector<int>{1, 3}, {}, 0.7);
  EXPECT_EQ(r.transmittance_applied, 0.7);
  EXPECT_FALSE(r.pure_state);
  EXPECT_FALSE(r.genuine_by_purity());
}

TEST(AngleScan, VacuumIsFlat) {
  const AngleScanResult r = angle_scan(vacuum(4), 1, 2, 16);
  EXPECT_NEAR(r.value, 4.0, 1e-14);
}

TEST(AngleScan, NeverWorseThanDefault) {
  const CovarianceMatrix v = closed_form_covariance(make(4, 100.0, 0.015), 20.0);
  for (int grid : {2, 3, 7, 32}) {
    const AngleScanResult r = angle_scan(v, 1, 3, grid);
    EXPECT_LE(r.value, vlf_pair(v, 1, 3, 0.0, kHalfPi));
    EXPECT_NEAR(r.value, vlf_pair(v, 1, 3, r.theta_a, r.theta_b), 1e-15);
  }
}

TEST(AngleScan, ConvergesUnderRefinement) {
  const CovarianceMatrix v = closed_form_covariance(make(4, 0.45, 0.015), 20.0);
  const double coarse = angle_scan(v, 1, 3, 64).value;
  const double fine = angle_scan(v, 1, 3, 256).value;
  EXPECT_LE(fine, coarse);
  EXPECT_LT(coarse - fine, 1e-3);
}

TEST(AngleScan, TieBreakIsLexicographic) {
  // Product of identical squeezed states: many exact ties on a coarse grid.
  CovarianceMatrix v = vacuum(2);
  v.matrix(0, 0) = v.matrix(2, 2) = 2.0;
  v.matrix(1, 1) = v.matrix(3, 3) = 0.5;
  const AngleScanResult r = angle_scan(v, 1, 2, 4);
  for (int i = 0; i < 4; ++i) {
    for (int k = 0; k < 4; ++k) {
      const double ta = i * oracle::kPi / 2, tb = k * oracle::kPi / 2;
      const double value = vlf_pair(v, 1, 2, ta, tb);
      if (value == r.value) {
        EXPECT_TRUE(r.theta_a < ta || (r.theta_a == ta && r.theta_b <= tb));
      }
    }
  }
  EXPECT_THROW(angle_scan(v, 1, 2, 1), std::invalid_argument);
}

#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "monobound/bounds.hpp"
#include "monobound/error.hpp"
#include "monobound/transform.hpp"
#include "oracles.hpp"

namespace mb = monobound;
using mb::Density;
using mb::MonotoneFunction;
using mb::WeightVector;

TEST(Cdf, ClosedForms) {
  const auto u = mb::cdf_of(Density::uniform());
  for (double x : {0.0, 0.3, 0.77, 1.0}) EXPECT_EQ(u(x), x);

  const auto lin = mb::cdf_of(Density::polynomial({0.0, 2.0}));
  for (double x : {0.0, 0.3, 0.77, 1.0}) EXPECT_NEAR(lin(x), x * x, 1e-15);

  const auto tri = mb::cdf_of(Density::triangular(0.5));
  EXPECT_EQ(tri(0.5), 0.5);
  EXPECT_EQ(tri(0.0), 0.0);
  EXPECT_EQ(tri(1.0), 1.0);
}

TEST(Cdf, AgreesWithQuadratureOfDensity) {
  for (const auto& f : mb::density_catalog()) {
    const auto F = mb::cdf_of(f);
    for (double x : {0.1, 0.25, 0.5, 0.61, 0.9}) {
      const long double ref = oracle::simpson(
          [&f](long double t) { return static_cast<long double>(f(static_cast<double>(t))); },
          0.0L, x, 40000);
      EXPECT_NEAR(F(x), static_cast<double>(ref), 1e-6) << f.describe() << " at " << x;
    }
  }
}

TEST(Cdf, MonotoneWithUnitEndpoints) {
  for (const auto& f : mb::density_catalog()) {
    const auto F = mb::cdf_of(f);
    EXPECT_NEAR(F(0.0), 0.0, 1e-9);
    EXPECT_NEAR(F(1.0), 1.0, 1e-9);
    double prev = F(0.0);
    for (int i = 1; i <= 1000; ++i) {
      const double cur = F(i / 1000.0);
      ASSERT_GE(cur, prev) << f.describe() << " at " << i;
      prev = cur;
    }
  }
}

TEST(Density, Validation) {
  try {
    Density::polynomial({0.0, 1.0});  // mass 1/2
    FAIL();
  } catch (const mb::Error& e) {
    EXPECT_EQ(e.code(), mb::ErrorCode::NotNormalized);
    EXPECT_NEAR(*e.value(), 0.5, 1e-12);
  }
  EXPECT_NO_THROW(Density::polynomial({2.0, -2.0, 0.0}));         // 2 - 2x touches 0 at 1
  EXPECT_THROW(Density::polynomial({-0.5, 3.0}), mb::Error);       // negative at 0
  EXPECT_THROW(Density::triangular(1.5), mb::Error);
  EXPECT_THROW(Density::tabulated({{0.0, 1.0}, {0.5, -1.0}, {1.0, 1.0}}), mb::Error);
  EXPECT_THROW(Density::tabulated({{0.0, 0.0}, {1.0, 0.0}}), mb::Error);
  EXPECT_NO_THROW(Density::triangular(0.0));
  EXPECT_NO_THROW(Density::triangular(1.0));
}

TEST(Density, TabulatedIsRenormalized) {
  const auto f = Density::tabulated({{0.0, 2.0}, {1.0, 2.0}});
  EXPECT_DOUBLE_EQ(f(0.3), 1.0);
  EXPECT_NEAR(mb::density_mass(f), 1.0, 1e-14);
}

TEST(PitIdentity, UniformDensity) {
  for (const auto& g : mb::catalog_entries()) {
    const auto r = mb::pit_identity_check(Density::uniform(), g, 1e-10);
    EXPECT_TRUE(r.pass) << g.formula();
    EXPECT_LE(r.residual, 1e-10);
  }
}

TEST(PitIdentity, LinearDensityPowerComplement) {
  // integral of 2x (1 - x^4) = 1 - 2/6 = 2/3.
  const auto r = mb::pit_identity_check(Density::polynomial({0.0, 2.0}),
                                        MonotoneFunction::power_complement(2), 1e-10);
  EXPECT_NEAR(r.lhs, 2.0 / 3.0, 1e-10);
  EXPECT_DOUBLE_EQ(r.rhs, 2.0 / 3.0);
  EXPECT_TRUE(r.pass);

  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> kd(0.1, 12.0);
  for (int i = 0; i < 50; ++i) {
    const double k = kd(rng);
    const auto rk = mb::pit_identity_check(Density::polynomial({0.0, 2.0}),
                                           MonotoneFunction::power_complement(k), 1e-10);
    EXPECT_NEAR(rk.rhs, k / (k + 1.0), 1e-10);
    EXPECT_NEAR(rk.lhs, k / (k + 1.0), 1e-10) << k;
  }
}

TEST(PitIdentity, TabulatedFunctionAndDensity) {
  const auto g = MonotoneFunction::tabulated({{0, 1}, {0.3, 0.2}, {1, 0}});
  for (const auto& f : mb::density_catalog()) {
    const auto r = mb::pit_identity_check(f, g, 1e-9);
    EXPECT_TRUE(r.pass) << f.describe() << " residual " << r.residual;
  }
}

TEST(PitIdentity, SubstitutionMatters) {
  // Without the F inside g, the weighted integral differs from the rhs.
  const auto f = Density::polynomial({0.0, 2.0});
  const auto g = MonotoneFunction::linear(-1, 1);
  const auto r = mb::pit_identity_check(f, g, 1e-10);
  EXPECT_TRUE(r.pass);
  const double wrong = oracle::simpson(
      [](long double x) { return 2.0L * x * (1.0L - x); }, 0.0L, 1.0L);
  EXPECT_GT(std::abs(wrong - r.rhs), 0.1);
}

TEST(Empirical, Weightings) {
  const std::vector<double> data{3.0, -1.0, 2.5, 9.0};
  const auto u = mb::empirical_partition(data, mb::EmpiricalWeighting::uniform);
  EXPECT_EQ(std::vector<double>(u.values().begin(), u.values().end()),
            std::vector<double>(4, 0.25));
  const std::vector<double> three{1.0, 2.0, 3.0};
  const std::vector<double> given{2.0, 3.0, 5.0};
  const auto gw = mb::empirical_partition(three, mb::EmpiricalWeighting::given, given);
  EXPECT_DOUBLE_EQ(gw[0], 0.2);
  EXPECT_DOUBLE_EQ(gw[1], 0.3);
  EXPECT_DOUBLE_EQ(gw[2], 0.5);
  const std::vector<double> one{42.0};
  EXPECT_EQ(mb::empirical_partition(one, mb::EmpiricalWeighting::uniform)[0], 1.0);
  EXPECT_THROW(mb::empirical_partition({}, mb::EmpiricalWeighting::uniform), mb::Error);
  EXPECT_THROW(mb::empirical_partition(three, mb::EmpiricalWeighting::given, one), mb::Error);
  const std::vector<double> bad{1.0, 0.0, 1.0};
  EXPECT_THROW(mb::empirical_partition(three, mb::EmpiricalWeighting::given, bad), mb::Error);
}

TEST(ExpectationBound, Examples) {
  const auto w = WeightVector::from_weights(std::vector<double>{0.2, 0.3, 0.5});
  const auto b = mb::expectation_upper_bound(MonotoneFunction::power_complement(2), w);
  EXPECT_DOUBLE_EQ(b.expectation, 2.0 / 3.0);
  EXPECT_NEAR(b.sum, 0.417, 1e-12);
  EXPECT_TRUE(b.holds);

  const auto c = mb::expectation_upper_bound(MonotoneFunction::constant(1.5), w);
  EXPECT_EQ(c.expectation, 1.5);
  EXPECT_NEAR(c.sum, 1.5, 1e-15);
  EXPECT_TRUE(c.holds);

  const auto e = mb::expectation_upper_bound(MonotoneFunction::exponential(1),
                                             WeightVector::uniform(10));
  EXPECT_NEAR(e.expectation, 1.0 - std::exp(-1.0), 1e-15);
  const long double brute = oracle::uniform_right_sum(
      [](long double x) { return std::exp(-x); }, 10);
  EXPECT_NEAR(e.sum, static_cast<double>(brute), 1e-15);
  EXPECT_TRUE(e.holds);

  EXPECT_THROW(mb::expectation_upper_bound(MonotoneFunction::linear(1, 0), w), mb::Error);
}

TEST(ExpectationBound, HoldsOnRandomCorpus) {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 500; ++trial) {
    const auto w = WeightVector::from_weights(oracle::random_weights(rng, 64), true);
    for (const auto& g : mb::catalog_entries()) {
      if (g.direction() == mb::Direction::increasing) continue;
      const auto b = mb::expectation_upper_bound(g, w);
      ASSERT_TRUE(b.holds);
      ASSERT_LE(b.sum, b.expectation + 1e-12);
    }
  }
}

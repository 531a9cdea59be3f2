#include <gtest/gtest.h>

#include <cmath>

#include "fixtures.hpp"
#include "smspsa/heuristics.hpp"
#include "smspsa/instances.hpp"

using namespace smspsa;

TEST(CenteredMass, RingSplitsFreeMassEvenly) {
  const auto mask = fixtures::ring_mask();
  const auto p = centered_mass(fixtures::ring_matrix(), mask);
  for (Index m = 0; m < 3; ++m) {
    EXPECT_EQ(p(m, m), 0.001);
    for (Index n : mask.row(m)) EXPECT_NEAR(p(m, n), 0.4995, 1e-15);
  }
}

TEST(CenteredMass, IdempotentAndRowStochastic) {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    SamplerConfig sc;
    sc.seed = seed;
    const auto net = sample_network(sc);
    const auto once = centered_mass(net.matrix, net.mask);
    EXPECT_EQ(centered_mass(once, net.mask), once);
    for (Index m = 0; m < 10; ++m) {
      EXPECT_NEAR(once.entries().row(m).sum(), 1.0, 1e-12);
      for (Index n = 0; n < 10; ++n) {
        if (!net.mask.adjustable(m, n)) {
          EXPECT_EQ(once(m, n), net.matrix(m, n));
        }
      }
    }
  }
}

TEST(CenteredMass, NoAdjustableEntriesIsIdentity) {
  const auto p = fixtures::ring_matrix();
  EXPECT_EQ(centered_mass(p, AdjustmentMask::none(3)), p);
}

TEST(CenteredMass, RowWithoutFreeMassIsDomainError) {
  MatrixX<double> p(2, 2);
  p << 0.0, 1.0,
       0.5, 0.5;
  MatrixX<double> c(2, 2);
  c << 1, 0,
       0, 0;
  try {
    centered_mass(StochasticMatrix(p), AdjustmentMask::from_numeric(c));
    FAIL();
  } catch (const DomainError& e) {
    EXPECT_EQ(e.row(), 0);
  }
}

TEST(Inflictions, SmoothLogisticHasNone) {
  std::vector<std::size_t> it;
  std::vector<double> f;
  for (std::size_t k = 0; k < 2000; ++k) {
    it.push_back(k * 100);
    f.push_back(0.5 / (1.0 + std::exp(-(static_cast<double>(k) - 300.0) / 150.0)));
  }
  EXPECT_TRUE(detect_inflictions(it, f, 1e-4, 100, 5e-3).empty());
}

TEST(Inflictions, PlateauThenRampIsOneEvent) {
  std::vector<std::size_t> it;
  std::vector<double> f;
  for (std::size_t k = 0; k < 10000; ++k) f.push_back(0.45 + (k % 2 ? 1e-6 : -1e-6));
  for (std::size_t k = 0; k < 500; ++k) f.push_back(f.back() + 2e-4);
  for (std::size_t k = 0; k < f.size(); ++k) it.push_back(k);
  const auto r = detect_inflictions(it, f, 1e-4, 500, 5e-3);
  ASSERT_EQ(r.events.size(), 1u);
  EXPECT_EQ(r.events[0].index, 10000u);
  EXPECT_EQ(r.events[0].plateau_points, 10000u);
  EXPECT_GT(r.events[0].jump, 0.09);
}

TEST(Inflictions, DropAfterPlateauIsSigned) {
  std::vector<double> f(300, 0.3);
  for (int k = 0; k < 50; ++k) f.push_back(0.3 - 0.01 * (k + 1));
  std::vector<std::size_t> it(f.size());
  for (std::size_t k = 0; k < it.size(); ++k) it[k] = k;
  const auto r = detect_inflictions(it, f, 1e-4, 20, 5e-3);
  ASSERT_EQ(r.events.size(), 1u);
  EXPECT_LT(r.events[0].jump, 0.0);
}

TEST(Inflictions, ShortPathsAndMismatch) {
  std::vector<std::size_t> it{0, 1};
  std::vector<double> f{0.1, 0.2};
  EXPECT_TRUE(detect_inflictions(it, f, 1e-4, 5, 5e-3).empty());
  std::vector<double> g{0.1};
  EXPECT_THROW(detect_inflictions(it, g, 1e-4, 5, 5e-3), StructuralError);
}

TEST(Inflictions, DefaultPlateauLength) {
  InflictionThresholds t;
  EXPECT_EQ(t.plateau_points(1000), 50u);
  EXPECT_EQ(t.plateau_points(10), 2u);
  t.min_plateau = 7;
  EXPECT_EQ(t.plateau_points(1000), 7u);
}

TEST(Inflictions, JsonReport) {
  std::vector<double> f(100, 0.2);
  for (int k = 0; k < 20; ++k) f.push_back(0.3);
  std::vector<std::size_t> it(f.size());
  for (std::size_t k = 0; k < it.size(); ++k) it[k] = 10 * k;
  const auto doc = to_json(detect_inflictions(it, f, 1e-4, 10, 5e-3));
  EXPECT_EQ(doc["event_count"], 1);
  EXPECT_EQ(doc["events"][0]["iteration"], 1000);
  EXPECT_EQ(doc["thresholds"]["min_plateau"], 10);
}

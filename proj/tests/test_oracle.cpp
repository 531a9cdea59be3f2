#include <gtest/gtest.h>

#include <cstdlib>
#include <regex>
#include <sstream>

#include "fixtures.hpp"
#include "smspsa/instances.hpp"
#include "smspsa/optimizer.hpp"
#include "smspsa/oracle.hpp"

using namespace smspsa;

namespace {

std::size_t count_prefix(const std::string& text, const std::string& prefix) {
  std::istringstream in(text);
  std::size_t count = 0;
  for (std::string line; std::getline(in, line);) count += line.rfind(prefix, 0) == 0;
  return count;
}

MatrixX<double> positive3() {
  MatrixX<double> p(3, 3);
  p << 0.2, 0.3, 0.5,
       0.4, 0.2, 0.4,
       0.3, 0.3, 0.4;
  return p;
}

}  // namespace

TEST(GridSize, CountsLatticePoints) {
  // One row with two adjustable entries: the lattice is the points on a segment.
  MatrixX<double> c = MatrixX<double>::Zero(3, 3);
  c(0, 1) = c(0, 2) = 1;
  EXPECT_DOUBLE_EQ(grid_size(AdjustmentMask::from_numeric(c), 11), 11.0);
  // A full row of three: C(points + 1, 2).
  c(0, 0) = 1;
  EXPECT_DOUBLE_EQ(grid_size(AdjustmentMask::from_numeric(c), 11), 66.0);
  EXPECT_DOUBLE_EQ(grid_size(fixtures::ring_mask(), 101), 101.0 * 101.0 * 101.0);
}

TEST(BruteForce, LinearObjectiveHitsVertex) {
  const StochasticMatrix p0(positive3());
  MatrixX<double> c = MatrixX<double>::Zero(3, 3);
  c(0, 1) = c(0, 2) = 1;
  const auto mask = AdjustmentMask::from_numeric(c);
  GridSpec grid;
  grid.points = 21;
  grid.gamma = 1e-6;
  const auto r = brute_force_max(p0, mask, Objective::single_node(1), grid);
  EXPECT_NEAR(r.matrix(0, 1), 0.8 - 1e-6, 1e-12);
  EXPECT_NEAR(r.matrix(0, 2), 1e-6, 1e-15);
  EXPECT_EQ(r.evaluated, 21u);
  EXPECT_NEAR(r.objective, stationary(r.matrix)[1], 1e-15);
}

TEST(BruteForce, NoAdjustableEntriesReturnsStart) {
  const StochasticMatrix p0(positive3());
  const auto r = brute_force_max(p0, AdjustmentMask::none(3), Objective::single_node(2));
  EXPECT_EQ(r.matrix, p0);
  EXPECT_DOUBLE_EQ(r.objective, stationary(p0)[2]);
}

TEST(BruteForce, RefusesOverBudget) {
  GridSpec grid;
  grid.budget = 1000;
  try {
    brute_force_max(fixtures::ring_matrix(), fixtures::ring_mask(), Objective::single_node(0), grid);
    FAIL();
  } catch (const BudgetError& e) {
    EXPECT_DOUBLE_EQ(e.required(), 101.0 * 101.0 * 101.0);
  }
}

TEST(BruteForce, DeterministicAndThreadIndependent) {
  SamplerConfig sc;
  sc.n = 4;
  sc.seed = 6;
  sc.max_free_dimensions = 3;
  const auto net = sample_network(sc);
  GridSpec grid;
  grid.points = 15;
  const auto obj = Objective::single_node(net.target);
  const auto a = brute_force_max(net.matrix, net.mask, obj, grid);
  const char* previous = std::getenv("SMSPSA_THREADS");
  const std::string saved = previous ? previous : "";
  setenv("SMSPSA_THREADS", "1", 1);
  const auto b = brute_force_max(net.matrix, net.mask, obj, grid);
  if (previous) {
    setenv("SMSPSA_THREADS", saved.c_str(), 1);
  } else {
    unsetenv("SMSPSA_THREADS");
  }
  EXPECT_EQ(a.matrix, b.matrix);
  EXPECT_EQ(a.objective, b.objective);
  EXPECT_EQ(a.evaluated, b.evaluated);
  EXPECT_TRUE(validate(a.matrix, net.mask, 1e-12).feasible());
}

TEST(BruteForce, NeverBelowStart) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    SamplerConfig sc;
    sc.n = 3;
    sc.seed = seed;
    sc.max_free_dimensions = 3;
    const auto net = sample_network(sc);
    GridSpec grid;
    grid.points = 31;
    const auto obj = Objective::single_node(net.target);
    const auto r = brute_force_max(net.matrix, net.mask, obj, grid);
    EXPECT_GE(r.objective, stationary(net.matrix)[net.target] - 0.02);
  }
}

TEST(BruteForce, RingGridAgreesWithLongRun) {
  const auto p0 = fixtures::ring_matrix();
  const auto mask = fixtures::ring_mask();
  const auto grid = brute_force_max(p0, mask, Objective::single_node(0));
  OptimizerConfig oc;
  oc.iterations = 500000;
  oc.seed = 1;
  oc.record_stride = 500000;
  const auto r = run(p0, mask, Objective::single_node(0), oc);
  EXPECT_LE(std::abs(grid.objective - r.trajectory.back().objective) / grid.objective, 0.02);
}

TEST(FiniteDiff, ConstantObjectiveAndMaskedOff) {
  const auto p0 = fixtures::ring_matrix();
  const auto mask = fixtures::ring_mask();
  const auto theta = inverse_entry(p0, mask, TransformConfig::for_matrix(p0, mask));
  const auto one = Objective::custom("one", [](const RowVectorX<double>&, const MatrixX<double>&) { return 1.0; });
  EXPECT_EQ(finite_diff_gradient(theta, p0, mask, one, 1e-4).cwiseAbs().maxCoeff(), 0.0);
  const auto g = finite_diff_gradient(theta, p0, mask, Objective::single_node(0), 1e-4);
  for (Index m = 0; m < 3; ++m) EXPECT_EQ(g(m, m), 0.0);
  EXPECT_GT(g.cwiseAbs().maxCoeff(), 0.0);
  EXPECT_THROW(finite_diff_gradient(theta, p0, mask, one, 0.0), DomainError);
}

TEST(FiniteDiff, RichardsonDifferencesShrink) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    SamplerConfig sc;
    sc.n = 3;
    sc.seed = seed;
    const auto net = sample_network(sc);
    if (net.mask.count() == 0) continue;
    const auto obj = Objective::single_node(net.target);
    const auto theta = inverse_entry(net.matrix, net.mask, TransformConfig::for_matrix(net.matrix, net.mask));
    double prev = std::numeric_limits<double>::infinity();
    for (double h : {0.2, 0.1, 0.05, 0.025}) {
      const double d = (finite_diff_gradient(theta, net.matrix, net.mask, obj, h) -
                        finite_diff_gradient(theta, net.matrix, net.mask, obj, h / 2))
                           .norm();
      EXPECT_LE(d, prev + 1e-13) << "seed " << seed << " h " << h;
      prev = d;
    }
  }
}

TEST(ModelExport, TwoStateCounts) {
  MatrixX<double> p(2, 2);
  p << 0.5, 0.5,
       0.3, 0.7;
  const auto text = model_text(StochasticMatrix(p), AdjustmentMask::all(2), Objective::single_node(1), 1e-8);
  EXPECT_EQ(count_prefix(text, "  row_sum["), 2u);
  EXPECT_EQ(count_prefix(text, "  balance["), 2u);
  EXPECT_EQ(count_prefix(text, "  normalization:"), 1u);
  EXPECT_EQ(count_prefix(text, "  fixed["), 0u);
  EXPECT_EQ(count_prefix(text, "  bound["), 4u);
  EXPECT_NE(text.find("objective maximize 1 * pi_1"), std::string::npos);
}

TEST(ModelExport, RingFixesDiagonal) {
  const auto text = model_text(fixtures::ring_matrix(), fixtures::ring_mask(), Objective::single_node(0), 1e-8);
  EXPECT_EQ(count_prefix(text, "  fixed["), 3u);
  EXPECT_NE(text.find("fixed[1,1]: P_1_1 = 0.001"), std::string::npos);
  EXPECT_NE(text.find("row_sum[0]: 0.001 + P_0_1 + P_0_2 = 1"), std::string::npos);
  EXPECT_EQ(count_prefix(text, "  nonnegative["), 3u);
}

TEST(ModelExport, LinearWeights) {
  RowVectorX<double> w(3);
  w << 0.5, 0.0, -1.0;
  const auto text = model_text(fixtures::ring_matrix(), fixtures::ring_mask(), Objective::linear(w), 1e-8);
  EXPECT_NE(text.find("objective maximize 0.5 * pi_0 + -1 * pi_2"), std::string::npos);
}

TEST(ModelExport, WebrankIsUnsupported) {
  EXPECT_THROW(model_text(fixtures::ring_matrix(), fixtures::ring_mask(), Objective::webrank(0), 1e-8),
               UnsupportedObjective);
}

#include <gtest/gtest.h>

#include <cmath>

#include "fixtures.hpp"
#include "smspsa/instances.hpp"
#include "smspsa/rng.hpp"
#include "smspsa/transform.hpp"

using namespace smspsa;

TEST(EntrySigmoid, ClosedForms) {
  EXPECT_DOUBLE_EQ(entry_sigmoid(0.0), 0.5);
  EXPECT_NEAR(entry_sigmoid(std::log(3.0)), 0.75, 1e-15);
  const double tiny = entry_sigmoid(-50.0);
  EXPECT_GT(tiny, 0.0);
  EXPECT_LT(tiny, 1e-20);
}

TEST(EntrySigmoid, MonotoneAndBounded) {
  double prev = entry_sigmoid(-30.0);
  for (double t = -29.5; t <= 30.0; t += 0.5) {
    const double v = entry_sigmoid(t);
    EXPECT_GT(v, prev);
    EXPECT_LE(v, 1.0);
    prev = v;
  }
}

TEST(ApplyT, ZeroThetaOnRing) {
  const auto p = apply_T(ThetaMatrix::zeros(3), fixtures::ring_matrix(), fixtures::ring_mask());
  for (Index m = 0; m < 3; ++m) {
    for (Index n = 0; n < 3; ++n) EXPECT_NEAR(p(m, n), m == n ? 0.001 : 0.4995, 1e-15);
  }
}

TEST(ApplyT, FullyAdjustableRowIsUniform) {
  const Index n = 5;
  const StochasticMatrix p0(MatrixX<double>::Constant(n, n, 1.0 / n));
  const auto p = apply_T(ThetaMatrix::zeros(n), p0, AdjustmentMask::all(n));
  for (Index k = 0; k < n; ++k) EXPECT_NEAR(p(2, k), 0.2, 1e-15);
}

TEST(ApplyT, NormalizeThenScale) {
  // Sigmoids 0.2 and 0.6 with fixed mass 0.4: normalized (0.25, 0.75), scaled (0.15, 0.45).
  MatrixX<double> p0(3, 3);
  p0 << 0.4, 0.3, 0.3,
        0.2, 0.4, 0.4,
        0.3, 0.3, 0.4;
  MatrixX<double> c = MatrixX<double>::Zero(3, 3);
  c(0, 1) = 1;
  c(0, 2) = 1;
  MatrixX<double> theta = MatrixX<double>::Zero(3, 3);
  theta(0, 1) = logit(0.2);
  theta(0, 2) = logit(0.6);
  const auto p = apply_T(ThetaMatrix(theta), StochasticMatrix(p0), AdjustmentMask::from_numeric(c));
  EXPECT_NEAR(p(0, 1), 0.15, 1e-15);
  EXPECT_NEAR(p(0, 2), 0.45, 1e-15);
  EXPECT_EQ(p(0, 0), 0.4);
  EXPECT_EQ(p.entries().row(1), p0.row(1));
}

TEST(ApplyT, DegenerateRowIsDomainError) {
  MatrixX<double> p0(2, 2);
  p0 << 1.0, 0.0,
        0.5, 0.5;
  MatrixX<double> c(2, 2);
  c << 0, 1,
       0, 0;
  try {
    apply_T(ThetaMatrix::zeros(2), StochasticMatrix(p0), AdjustmentMask::from_numeric(c));
    FAIL();
  } catch (const DomainError& e) {
    EXPECT_EQ(e.row(), 0);
  }
}

TEST(ApplyT, NaNThetaIsInputError) {
  MatrixX<double> theta = MatrixX<double>::Zero(3, 3);
  theta(0, 1) = std::nan("");
  EXPECT_THROW(ThetaMatrix{theta}, InputError);
  const Transform<double> t(fixtures::ring_matrix(), fixtures::ring_mask());
  MatrixX<double> out;
  EXPECT_THROW(t.apply(theta, out), InputError);
}

TEST(ApplyT, ExtremeThetaStaysFeasible) {
  MatrixX<double> theta = MatrixX<double>::Constant(3, 3, -800.0);
  theta(0, 2) = -790.0;
  const auto p = apply_T(ThetaMatrix(theta), fixtures::ring_matrix(), fixtures::ring_mask());
  for (Index m = 0; m < 3; ++m) EXPECT_NEAR(p.entries().row(m).sum(), 1.0, 1e-12);
  EXPECT_TRUE(p.entries().allFinite());
  EXPECT_GT(p(0, 2), p(0, 1));
}

TEST(InverseEntry, ClosedForms) {
  MatrixX<double> p0(2, 2);
  p0 << 0.5, 0.5,
        0.25, 0.75;
  const auto theta = inverse_entry(StochasticMatrix(p0), AdjustmentMask::all(2), TransformConfig{1e-3});
  EXPECT_NEAR(theta(0, 0), 0.0, 1e-15);
  EXPECT_NEAR(theta(1, 1), std::log(3.0), 1e-15);
}

TEST(InverseEntry, ClipsZeroToGamma) {
  MatrixX<double> p0(2, 2);
  p0 << 0.0, 1.0,
        0.5, 0.5;
  const auto theta = inverse_entry(StochasticMatrix(p0), AdjustmentMask::all(2), TransformConfig{1e-3});
  EXPECT_NEAR(theta(0, 0), std::log(0.001 / 0.999), 1e-12);
  EXPECT_NEAR(theta(0, 0), -6.9068, 1e-4);
  EXPECT_NEAR(entry_sigmoid(theta(0, 0)), 1e-3, 1e-15);
}

TEST(InverseEntry, MaskedOffPositionsAreZero) {
  const auto theta = inverse_entry(fixtures::ring_matrix(), fixtures::ring_mask(), TransformConfig{1e-4});
  for (Index m = 0; m < 3; ++m) EXPECT_EQ(theta(m, m), 0.0);
}

TEST(TransformConfig, DefaultGammaIsHalfSmallestEntry) {
  EXPECT_DOUBLE_EQ(default_gamma(fixtures::ring_matrix()), 0.0005);
  const auto cfg = TransformConfig::for_matrix(fixtures::ring_matrix(), fixtures::ring_mask());
  EXPECT_DOUBLE_EQ(cfg.gamma, 0.0005);
}

TEST(TransformConfig, GammaMustSitBelowFixedEntries) {
  EXPECT_THROW(TransformConfig::for_matrix(fixtures::ring_matrix(), fixtures::ring_mask(), 0.002), DomainError);
  EXPECT_THROW(TransformConfig::for_matrix(fixtures::ring_matrix(), fixtures::ring_mask(), 0.0), DomainError);
  EXPECT_THROW(TransformConfig::for_matrix(fixtures::ring_matrix(), fixtures::ring_mask(), 0.5), DomainError);
}

TEST(ApplyT, RoundTripOnSampledNetworks) {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    SamplerConfig sc;
    sc.n = 2 + static_cast<Index>(seed % 9);
    sc.seed = seed;
    const auto net = sample_network(sc);
    const auto cfg = TransformConfig::for_matrix(net.matrix, net.mask);
    const auto back = apply_T(inverse_entry(net.matrix, net.mask, cfg), net.matrix, net.mask);
    EXPECT_LE((back.entries() - net.matrix.entries()).lpNorm<Eigen::Infinity>(), 1e-12) << "seed " << seed;
  }
}

TEST(ApplyT, MonotoneInOwnCoordinate) {
  SamplerConfig sc;
  sc.n = 5;
  sc.seed = 4;
  const auto net = sample_network(sc);
  const Transform<double> t(net.matrix, net.mask);
  Rng rng(9);
  MatrixX<double> theta(5, 5);
  for (Index k = 0; k < 25; ++k) theta.data()[k] = 4.0 * rng.uniform() - 2.0;
  MatrixX<double> base;
  MatrixX<double> bumped;
  t.apply(theta, base);
  for (const auto& [m, n] : net.mask.positions()) {
    if (net.mask.row(m).size() < 2) continue;
    MatrixX<double> th = theta;
    th(m, n) += 0.3;
    t.apply(th, bumped);
    EXPECT_GT(bumped(m, n), base(m, n));
    for (Index k : net.mask.row(m)) {
      if (k != n) {
        EXPECT_LT(bumped(m, k), base(m, k));
      }
    }
  }
}

TEST(ApplyT, RowJacobianHasFullTangentRank) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    SamplerConfig sc;
    sc.n = 4;
    sc.seed = 100 + seed;
    sc.mask_probability = 0.8;
    const auto net = sample_network(sc);
    const Transform<double> t(net.matrix, net.mask);
    Rng rng(seed);
    MatrixX<double> theta(4, 4);
    for (Index k = 0; k < 16; ++k) theta.data()[k] = 2.0 * rng.uniform() - 1.0;
    for (Index m = 0; m < 4; ++m) {
      const auto& cols = net.mask.row(m);
      const auto k = static_cast<Index>(cols.size());
      if (k < 2) continue;
      MatrixX<double> jac(k, k);
      const double h = 1e-6;
      MatrixX<double> up;
      MatrixX<double> down;
      for (Index j = 0; j < k; ++j) {
        MatrixX<double> tp = theta;
        MatrixX<double> tm = theta;
        tp(m, cols[j]) += h;
        tm(m, cols[j]) -= h;
        t.apply(tp, up);
        t.apply(tm, down);
        for (Index i = 0; i < k; ++i) jac(i, j) = (up(m, cols[i]) - down(m, cols[i])) / (2 * h);
      }
      Eigen::JacobiSVD<MatrixX<double>> svd(jac);
      // Rows sum to a constant, so rank k - 1 is maximal.
      EXPECT_GT(svd.singularValues()(k - 2), 1e-8);
    }
  }
}

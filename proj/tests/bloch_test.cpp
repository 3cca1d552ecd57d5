#include <gtest/gtest.h>

#include "test_util.hpp"

namespace sepdetect {
namespace {

using testing::max_abs;

TEST(Generators, RejectsDimensionBelowTwo) {
  EXPECT_THROW(generators(0), InvalidInput);
  EXPECT_THROW(generators(1), InvalidInput);
}

TEST(Generators, QubitOrderIsZXY) {
  const auto& g = *generators(2);
  ASSERT_EQ(g.size(), 3u);
  EXPECT_EQ(max_abs(g[0] - testing::pauli_z()), 0.0);
  EXPECT_EQ(max_abs(g[1] - testing::pauli_x()), 0.0);
  EXPECT_EQ(max_abs(g[2] - testing::pauli_y()), 0.0);
  EXPECT_EQ(g.labels, (std::vector<std::string>{"w0", "u0_1", "v0_1"}));
}

TEST(Generators, QutritSecondDiagonal) {
  const auto& g = *generators(3);
  ASSERT_EQ(g.size(), 8u);
  ComplexMatrix w1 = ComplexMatrix::Zero(3, 3);
  w1.diagonal() << 1, 1, -2;
  EXPECT_LT(max_abs(g[1] - w1 / std::sqrt(3.0)), 1e-15);
  EXPECT_EQ(g.labels[2], "u0_1");
  EXPECT_EQ(g.labels[4], "u1_2");
  EXPECT_EQ(g.labels[7], "v1_2");
}

TEST(Generators, TracelessHermitianOrthogonal) {
  for (std::size_t d = 2; d <= 6; ++d) {
    const auto& g = *generators(d);
    ASSERT_EQ(g.size(), d * d - 1);
    for (std::size_t i = 0; i < g.size(); ++i) {
      EXPECT_LT(std::abs(g[i].trace()), 1e-12);
      EXPECT_EQ(max_abs(g[i] - g[i].adjoint()), 0.0);
      for (std::size_t j = 0; j < g.size(); ++j)
        EXPECT_LT(std::abs((g[i] * g[j]).trace() - Complex(i == j ? 2.0 : 0.0)), 1e-12)
            << "d=" << d << " i=" << i << " j=" << j;
    }
  }
}

TEST(Generators, CachedPerDimension) { EXPECT_EQ(generators(4).get(), generators(4).get()); }

TEST(Decompose, MaximallyMixedIsZero) {
  for (Dims d : {Dims{2, 2}, Dims{2, 3}, Dims{3, 3}}) {
    const auto b = decompose(DensityMatrix::maximally_mixed(d));
    EXPECT_LT(b.r.cwiseAbs().maxCoeff(), 1e-15);
    EXPECT_LT(b.s.cwiseAbs().maxCoeff(), 1e-15);
    EXPECT_LT(b.T.cwiseAbs().maxCoeff(), 1e-15);
  }
}

TEST(Decompose, BellStateCorrelations) {
  const auto b = decompose(testing::psi_plus());
  EXPECT_LT(b.r.norm(), 1e-15);
  EXPECT_LT(b.s.norm(), 1e-15);
  RealMatrix expected = RealMatrix::Zero(3, 3);
  expected.diagonal() << -1, 1, 1;
  EXPECT_LT((b.T - expected).cwiseAbs().maxCoeff(), 1e-14);
}

TEST(Decompose, MatchesBruteForceTraces) {
  std::vector<DensityMatrix> states{bound_2x4(0.9), bound_2x4_mixture(0.9, 0.3)};
  for (std::uint64_t seed = 0; seed < 4; ++seed)
    states.push_back(random_density({2 + seed % 2, 3}, 2, seed));
  for (const auto& rho : states) {
    const auto b = decompose(rho);
    EXPECT_LT((b.T - testing::brute_force_correlations(rho)).cwiseAbs().maxCoeff(), 1e-13);
    EXPECT_LT((b.r - testing::brute_force_local_first(rho)).cwiseAbs().maxCoeff(), 1e-13);
  }
}

TEST(Decompose, NeedsQuditSubsystems) {
  EXPECT_THROW(decompose(DensityMatrix::maximally_mixed({1, 4})), InvalidInput);
}

TEST(Reconstruct, ZeroDataIsMaximallyMixed) {
  BlochDecomposition b{{2, 3}, RealVector::Zero(3), RealVector::Zero(8), RealMatrix::Zero(3, 8)};
  EXPECT_LT(max_abs(reconstruct(b).matrix() - ComplexMatrix::Identity(6, 6) / 6.0), 1e-15);
}

TEST(Reconstruct, ShapeMismatch) {
  BlochDecomposition b{{2, 3}, RealVector::Zero(3), RealVector::Zero(3), RealMatrix::Zero(3, 8)};
  EXPECT_THROW(reconstruct(b), InvalidInput);
  b.s = RealVector::Zero(8);
  b.T = RealMatrix::Zero(8, 3);
  EXPECT_THROW(reconstruct(b), InvalidInput);
}

TEST(Reconstruct, NonFinite) {
  BlochDecomposition b{{2, 2}, RealVector::Zero(3), RealVector::Zero(3), RealMatrix::Zero(3, 3)};
  b.r(1) = std::nan("");
  EXPECT_THROW(reconstruct(b), InvalidInput);
}

TEST(Reconstruct, DoesNotRequirePositivity) {
  BlochDecomposition b{{2, 2}, RealVector::Zero(3), RealVector::Zero(3), RealMatrix::Identity(3, 3)};
  const DensityMatrix rho = reconstruct(b);  // SWAP/2
  EXPECT_FALSE(rho.is_psd());
  EXPECT_EQ(rho.warnings().size(), 1u);
  EXPECT_NEAR(rho.min_eigenvalue(), -0.5, 1e-14);
}

TEST(BlochProperties, RoundTripOnRandomStates) {
  for (Dims d : {Dims{2, 2}, Dims{2, 3}, Dims{2, 4}, Dims{3, 3}})
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
      const auto rho = random_density(d, 1 + seed % d.total(), 100 + seed);
      ASSERT_LT(max_abs(reconstruct(decompose(rho)).matrix() - rho.matrix()), 1e-12);
    }
}

TEST(BlochProperties, LocalVectorsInsideBlochBall) {
  for (Dims d : {Dims{2, 2}, Dims{2, 3}, Dims{3, 4}})
    for (std::uint64_t seed = 0; seed < 30; ++seed) {
      const auto b = decompose(random_density(d, 1 + seed % 3, seed));
      EXPECT_LE(b.r.norm(), std::sqrt(d.M * (d.M - 1) / 2.0) + 1e-9);
      EXPECT_LE(b.s.norm(), std::sqrt(d.N * (d.N - 1) / 2.0) + 1e-9);
    }
}

TEST(BlochProperties, PureProductStatesSitOnTheSphere) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto b = decompose(random_separable({3, 2}, 1, seed));
    EXPECT_NEAR(b.r.norm(), std::sqrt(3.0), 1e-12);
    EXPECT_NEAR(b.s.norm(), 1.0, 1e-12);
    EXPECT_LT((b.T - b.r * b.s.transpose()).cwiseAbs().maxCoeff(), 1e-12);
  }
}

TEST(BlochProperties, Linear) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const Dims d{2 + seed % 2, 2 + seed % 3};
    const auto r1 = random_density(d, 2, seed);
    const auto r2 = random_density(d, 3, seed + 1000);
    const double p = 0.05 * static_cast<double>(seed);
    const auto b = decompose(mix(p, r1, r2));
    const auto b1 = decompose(r1);
    const auto b2 = decompose(r2);
    EXPECT_LT((b.r - (p * b1.r + (1 - p) * b2.r)).cwiseAbs().maxCoeff(), 1e-12);
    EXPECT_LT((b.s - (p * b1.s + (1 - p) * b2.s)).cwiseAbs().maxCoeff(), 1e-12);
    EXPECT_LT((b.T - (p * b1.T + (1 - p) * b2.T)).cwiseAbs().maxCoeff(), 1e-12);
  }
}

TEST(Validation, RejectsNonHermitian) {
  ComplexMatrix m = ComplexMatrix::Identity(4, 4) / 4.0;
  m(0, 1) = 1e-6;
  try {
    DensityMatrix rho(m, {2, 2});
    FAIL();
  } catch (const ValidationError& e) {
    EXPECT_EQ(e.property(), ValidationError::Property::Hermitian);
  }
}

TEST(Validation, RejectsTrace) {
  try {
    DensityMatrix rho(ComplexMatrix::Identity(4, 4) / 3.0, {2, 2});
    FAIL();
  } catch (const ValidationError& e) {
    EXPECT_EQ(e.property(), ValidationError::Property::Trace);
  }
}

TEST(Validation, RejectsDimensions) {
  try {
    DensityMatrix rho(ComplexMatrix::Identity(4, 4) / 4.0, {2, 3});
    FAIL();
  } catch (const ValidationError& e) {
    EXPECT_EQ(e.property(), ValidationError::Property::Dimensions);
  }
}

TEST(Validation, TinyAsymmetryIsSymmetrized) {
  ComplexMatrix m = ComplexMatrix::Identity(4, 4) / 4.0;
  m(0, 1) = 1e-10;
  DensityMatrix rho(m, {2, 2});
  EXPECT_EQ(rho.matrix()(0, 1), rho.matrix()(1, 0));
}

}  // namespace
}  // namespace sepdetect

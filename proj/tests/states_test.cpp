#include <gtest/gtest.h>

#include "test_util.hpp"

namespace sepdetect {
namespace {

TEST(States, DomainErrors) {
  EXPECT_THROW(isotropic(1, 3, 0.5), InvalidInput);
  EXPECT_THROW(isotropic(3, 2, 0.5), InvalidInput);
  EXPECT_THROW(isotropic(2, 3, 1.1), InvalidInput);
  EXPECT_THROW(horodecki_3x3(0.0), InvalidInput);
  EXPECT_THROW(horodecki_3x3(1.0), InvalidInput);
  EXPECT_THROW(horodecki_mixture(0.5, -0.1), InvalidInput);
  EXPECT_THROW(bound_2x4(1.0), InvalidInput);
  EXPECT_THROW(bound_2x4_mixture(0.5, 1.5), InvalidInput);
  EXPECT_THROW(two_qubit_ex2(-0.01), InvalidInput);
  EXPECT_THROW(two_qubit_ex4(0.5, 0.2, 0.0), InvalidInput);
  EXPECT_THROW(two_qubit_ex4(0.0, 0.0, 1.5), InvalidInput);
  EXPECT_THROW(isotropic(2, 2, std::nan("")), InvalidInput);
}

TEST(States, Bound2x4Entries) {
  const auto rho = bound_2x4(0.9);
  const auto& m = rho.matrix();
  EXPECT_NEAR(m(0, 5).real(), 0.9 / 7.3, 1e-15);
  EXPECT_NEAR(m(4, 4).real(), 0.95 / 7.3, 1e-15);
  EXPECT_NEAR(m(4, 7).real(), std::sqrt(1 - 0.81) / 2 / 7.3, 1e-15);
  EXPECT_EQ(m(0, 4), Complex(0.0));
  EXPECT_EQ(m(3, 7), Complex(0.0));
}

TEST(States, HorodeckiEntries) {
  const auto rho = horodecki_3x3(0.9);
  const auto& m = rho.matrix();
  EXPECT_NEAR(m(6, 6).real(), 0.95 / 8.2, 1e-15);
  EXPECT_NEAR(m(0, 8).real(), 0.9 / 8.2, 1e-15);
  EXPECT_NEAR(m(4, 4).real(), 0.9 / 8.2, 1e-15);
  EXPECT_NEAR(m(2, 6).real(), 0.0, 1e-15);
  EXPECT_NEAR(m(6, 8).real(), std::sqrt(1 - 0.81) / 2 / 8.2, 1e-15);
}

TEST(States, IsotropicEndpoints) {
  EXPECT_LT(testing::max_abs(isotropic(2, 3, 0.0).matrix() - ComplexMatrix::Identity(6, 6) / 6.0),
            1e-15);
  const auto rho = isotropic(2, 3, 1.0);
  const auto& m = rho.matrix();
  EXPECT_NEAR(m(0, 4).real(), 0.5, 1e-15);
  EXPECT_NEAR(m(0, 0).real(), 0.5, 1e-15);
  EXPECT_NEAR(m(2, 2).real(), 0.0, 1e-15);
}

TEST(States, TwoQubitEntries) {
  const auto rho = two_qubit_ex4(-0.2, 0.4, 0.3);
  const auto& m = rho.matrix();
  EXPECT_NEAR(m(0, 0).real(), 0.4, 1e-15);
  EXPECT_NEAR(m(0, 3).real(), 0.15, 1e-15);
  EXPECT_NEAR(m(2, 2).real(), 0.3, 1e-15);
  EXPECT_NEAR(m(3, 3).real(), 0.3, 1e-15);
  EXPECT_NEAR(two_qubit_ex2(0.3).matrix()(1, 2).real(), 0.15, 1e-15);
}

TEST(States, Ex4AdmissibilityMatchesPositivity) {
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> u(-1.2, 1.2);
  for (int i = 0; i < 400; ++i) {
    const double a1 = u(rng), a2 = u(rng), a3 = u(rng);
    const bool ok = ex4_admissible(a1, a2, a3);
    if (ok) {
      EXPECT_NO_THROW(two_qubit_ex4(a1, a2, a3));
    } else if (std::abs(a3 * a3 - (1 + a1) * (1 - a2)) > 1e-6 && std::abs(a2 - a1) > 1e-6) {
      EXPECT_THROW(two_qubit_ex4(a1, a2, a3), InvalidInput);
    }
  }
}

TEST(States, FamiliesStayValidAlongSweep) {
  const std::vector<StateFamily> families{isotropic_family(2, 3), isotropic_family(3, 3),
                                          horodecki_family(0.9), bound_2x4_family(0.9),
                                          ex2_family()};
  for (const auto& f : families)
    for (int i = 0; i < 50; ++i) {
      const double t = f.lower + (f.upper - f.lower) * i / 49.0;
      const auto rho = f(t);
      EXPECT_TRUE(rho.is_psd()) << f.name << ' ' << t;
      EXPECT_NEAR(rho.matrix().trace().real(), 1.0, 1e-12) << f.name << ' ' << t;
    }
}

TEST(States, BoundEntangledStatesArePpt) {
  for (double d : {0.1, 0.5, 0.9}) {
    EXPECT_GE(hermitian_eigenvalues(partial_transpose(bound_2x4(d))).minCoeff(), -1e-12);
    EXPECT_GE(hermitian_eigenvalues(partial_transpose(horodecki_3x3(d))).minCoeff(), -1e-12);
  }
}

TEST(States, FamiliesAreAffine) {
  // Mixture families are affine in their parameter, so Bloch data is too.
  const auto f = bound_2x4_family(0.9);
  const auto b0 = decompose(f(0.0)), b1 = decompose(f(1.0)), bt = decompose(f(0.3));
  EXPECT_LT((bt.T - (0.7 * b0.T + 0.3 * b1.T)).cwiseAbs().maxCoeff(), 1e-13);
  const auto g = horodecki_family(0.9);
  const auto g0 = decompose(g(0.0)), g1 = decompose(g(1.0)), gt = decompose(g(0.6));
  EXPECT_LT((gt.T - (0.4 * g0.T + 0.6 * g1.T)).cwiseAbs().maxCoeff(), 1e-13);
}

TEST(States, FamilyMetadata) {
  EXPECT_EQ(horodecki_family(0.9).parameter, "q");
  EXPECT_EQ(bound_2x4_family(0.9).parameter, "x");
  EXPECT_EQ(isotropic_family(2, 3).name, "isotropic:d1=2,d2=3");
  const auto c = constant_family("mm", DensityMatrix::maximally_mixed({2, 2}));
  EXPECT_EQ(c(0.1).matrix(), c(0.9).matrix());
}

TEST(RandomStates, Reproducible) {
  EXPECT_EQ(random_density({2, 3}, 2, 42).matrix(), random_density({2, 3}, 2, 42).matrix());
  EXPECT_NE(random_density({2, 3}, 2, 42).matrix(), random_density({2, 3}, 2, 43).matrix());
  EXPECT_EQ(random_separable({3, 3}, 4, 7).matrix(), random_separable({3, 3}, 4, 7).matrix());
}

TEST(RandomStates, RankAndPositivity) {
  for (std::size_t rank = 1; rank <= 6; ++rank) {
    const auto rho = random_density({2, 3}, rank, rank);
    const RealVector ev = hermitian_eigenvalues(rho.matrix());
    EXPECT_GE(ev.minCoeff(), -1e-12);
    EXPECT_EQ((ev.array() > 1e-10).count(), static_cast<Eigen::Index>(rank));
  }
  EXPECT_THROW(random_density({2, 2}, 0, 1), InvalidInput);
  EXPECT_THROW(random_separable({2, 2}, 0, 1), InvalidInput);
}

TEST(RandomStates, SeparableStatesArePpt) {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const auto rho = random_separable({2 + seed % 3, 2 + seed % 2}, 1 + seed % 5, seed);
    EXPECT_GE(hermitian_eigenvalues(partial_transpose(rho)).minCoeff(), -1e-12);
  }
}

}  // namespace
}  // namespace sepdetect

#pragma once

// State families used throughout: isotropic states, the P. Horodecki 3x3 and
// 2x4 bound entangled families with their mixtures, two-qubit test states,
// and seeded random generators.

#include <cmath>
#include <cstdint>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <utility>

#include "sepdetect/density.hpp"
#include "sepdetect/errors.hpp"
#include "sepdetect/numerics.hpp"

namespace sepdetect {

namespace detail {

inline void require_in_closed(double v, double lo, double hi, const char* name) {
  if (!(v >= lo && v <= hi)) {
    std::ostringstream msg;
    msg << name << " = " << v << " outside [" << lo << ", " << hi << "]";
    throw InvalidInput(msg.str());
  }
}

inline void require_in_open(double v, double lo, double hi, const char* name) {
  if (!(v > lo && v < hi)) {
    std::ostringstream msg;
    msg << name << " = " << v << " outside (" << lo << ", " << hi << ")";
    throw InvalidInput(msg.str());
  }
}

}  // namespace detail

/// (1-p)/(d1 d2) I + p |psi+><psi+|, with |psi+> = sum_i |i>|i> / sqrt(d1)
/// using the first d1 basis vectors of the second factor.
inline DensityMatrix isotropic(std::size_t d1, std::size_t d2, double p) {
  if (d1 < 2 || d1 > d2) throw InvalidInput("isotropic: need 2 <= d1 <= d2");
  detail::require_in_closed(p, 0.0, 1.0, "p");
  const auto n = static_cast<Eigen::Index>(d1 * d2);
  ComplexVector psi = ComplexVector::Zero(n);
  for (std::size_t i = 0; i < d1; ++i) psi(i * d2 + i) = 1.0 / std::sqrt(static_cast<double>(d1));
  const ComplexMatrix m = (1.0 - p) / static_cast<double>(n) * ComplexMatrix::Identity(n, n) +
                          p * psi * psi.adjoint();
  return DensityMatrix(m, Dims{d1, d2});
}

/// P. Horodecki's 3x3 bound entangled state rho_PH^x, x in (0, 1).
inline DensityMatrix horodecki_3x3(double x) {
  detail::require_in_open(x, 0.0, 1.0, "x");
  ComplexMatrix m = ComplexMatrix::Zero(9, 9);
  for (Eigen::Index i = 0; i < 9; ++i) m(i, i) = x;
  for (Eigen::Index i : {0, 4, 8})
    for (Eigen::Index j : {0, 4, 8}) m(i, j) = x;
  m(6, 6) = m(8, 8) = (1.0 + x) / 2.0;
  m(6, 8) = m(8, 6) = std::sqrt(1.0 - x * x) / 2.0;
  return DensityMatrix(m / (8.0 * x + 1.0), Dims{3, 3});
}

/// q rho_PH^x + (1-q) I/9.
inline DensityMatrix horodecki_mixture(double x, double q) {
  detail::require_in_closed(q, 0.0, 1.0, "q");
  return mix(q, horodecki_3x3(x), DensityMatrix::maximally_mixed(Dims{3, 3}));
}

/// P. Horodecki's 2x4 bound entangled state, d in (0, 1).
inline DensityMatrix bound_2x4(double d) {
  detail::require_in_open(d, 0.0, 1.0, "d");
  ComplexMatrix m = ComplexMatrix::Zero(8, 8);
  for (Eigen::Index i = 0; i < 8; ++i) m(i, i) = d;
  for (Eigen::Index i = 0; i < 3; ++i) m(i, i + 5) = m(i + 5, i) = d;
  m(4, 4) = m(7, 7) = (1.0 + d) / 2.0;
  m(4, 7) = m(7, 4) = std::sqrt(1.0 - d * d) / 2.0;
  return DensityMatrix(m / (7.0 * d + 1.0), Dims{2, 4});
}

/// x |xi><xi| + (1-x) rho_d with |xi> = (|00> + |11>)/sqrt(2) in 2x4.
inline DensityMatrix bound_2x4_mixture(double d, double x) {
  detail::require_in_closed(x, 0.0, 1.0, "x");
  ComplexVector xi = ComplexVector::Zero(8);
  xi(0) = xi(5) = 1.0 / std::sqrt(2.0);
  return mix(x, DensityMatrix::pure(xi, Dims{2, 4}), bound_2x4(d));
}

/// p |psi><psi| + (1-p) |00><00| with |psi> = (|01> + |10>)/sqrt(2).
inline DensityMatrix two_qubit_ex2(double p) {
  detail::require_in_closed(p, 0.0, 1.0, "p");
  ComplexMatrix m = ComplexMatrix::Zero(4, 4);
  m(1, 1) = m(2, 2) = m(1, 2) = m(2, 1) = p / 2.0;
  m(0, 0) = 1.0 - p;
  return DensityMatrix(m, Dims{2, 2});
}

/// (1/2) [[1+a1,0,0,a3],[0,0,0,0],[0,0,a2-a1,0],[a3,0,0,1-a2]].
/// Throws unless the parameters give a positive semidefinite matrix.
inline DensityMatrix two_qubit_ex4(double a1, double a2, double a3) {
  ComplexMatrix m = ComplexMatrix::Zero(4, 4);
  m(0, 0) = 1.0 + a1;
  m(0, 3) = m(3, 0) = a3;
  m(2, 2) = a2 - a1;
  m(3, 3) = 1.0 - a2;
  DensityMatrix rho(m / 2.0, Dims{2, 2});
  if (!rho.is_psd()) {
    std::ostringstream msg;
    msg << "ex4: (a1, a2, a3) = (" << a1 << ", " << a2 << ", " << a3
        << ") is not positive semidefinite; need a1 <= a2, |a1|, |a2| <= 1, "
           "a3^2 <= (1+a1)(1-a2)";
    throw InvalidInput(msg.str());
  }
  return rho;
}

/// Admissibility of (a1, a2, a3) for two_qubit_ex4 from its 2x2 minors.
inline bool ex4_admissible(double a1, double a2, double a3) {
  return a1 >= -1.0 && a2 <= 1.0 && a2 >= a1 && a3 * a3 <= (1.0 + a1) * (1.0 - a2);
}

namespace detail {

inline ComplexVector gaussian_vector(Eigen::Index n, std::mt19937_64& rng) {
  std::normal_distribution<double> normal;
  ComplexVector v(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const double re = normal(rng);
    const double im = normal(rng);
    v(i) = Complex(re, im);
  }
  return v;
}

}  // namespace detail

/// G G^dagger / Tr, with G an (MN x rank) complex Gaussian matrix.
inline DensityMatrix random_density(Dims dims, std::size_t rank, std::uint64_t seed) {
  if (rank < 1) throw InvalidInput("random_density: rank must be at least 1");
  std::mt19937_64 rng(seed);
  const auto n = static_cast<Eigen::Index>(dims.total());
  ComplexMatrix g(n, static_cast<Eigen::Index>(rank));
  for (Eigen::Index c = 0; c < g.cols(); ++c) g.col(c) = detail::gaussian_vector(n, rng);
  const ComplexMatrix m = g * g.adjoint();
  return DensityMatrix(m / m.trace().real(), dims);
}

/// Convex mixture of `terms` random product pure states with random weights.
inline DensityMatrix random_separable(Dims dims, std::size_t terms, std::uint64_t seed) {
  if (terms < 1) throw InvalidInput("random_separable: need at least one term");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> uniform(0.0, 1.0);
  const auto M = static_cast<Eigen::Index>(dims.M);
  const auto N = static_cast<Eigen::Index>(dims.N);
  ComplexMatrix acc = ComplexMatrix::Zero(M * N, M * N);
  double total = 0.0;
  for (std::size_t t = 0; t < terms; ++t) {
    const double w = uniform(rng) + 1e-3;
    ComplexVector a = detail::gaussian_vector(M, rng);
    ComplexVector b = detail::gaussian_vector(N, rng);
    a.normalize();
    b.normalize();
    const ComplexVector ab = kron(a, b);
    acc += w * ab * ab.adjoint();
    total += w;
  }
  return DensityMatrix(acc / total, dims);
}

/// A named one-parameter curve of states.
struct StateFamily {
  std::string name;
  std::string parameter;
  double lower = 0.0;
  double upper = 1.0;
  std::function<DensityMatrix(double)> evaluator;

  DensityMatrix operator()(double value) const { return evaluator(value); }
};

inline StateFamily isotropic_family(std::size_t d1, std::size_t d2) {
  std::ostringstream name;
  name << "isotropic:d1=" << d1 << ",d2=" << d2;
  return {name.str(), "p", 0.0, 1.0, [d1, d2](double p) { return isotropic(d1, d2, p); }};
}

inline StateFamily horodecki_family(double x) {
  std::ostringstream name;
  name << "horodecki:x=" << x;
  return {name.str(), "q", 0.0, 1.0, [x](double q) { return horodecki_mixture(x, q); }};
}

inline StateFamily bound_2x4_family(double d) {
  std::ostringstream name;
  name << "bound2x4:d=" << d;
  return {name.str(), "x", 0.0, 1.0, [d](double x) { return bound_2x4_mixture(d, x); }};
}

inline StateFamily ex2_family() {
  return {"ex2", "p", 0.0, 1.0, [](double p) { return two_qubit_ex2(p); }};
}

inline StateFamily constant_family(std::string name, DensityMatrix rho) {
  return {std::move(name), "t", 0.0, 1.0, [rho = std::move(rho)](double) { return rho; }};
}

}  // namespace sepdetect

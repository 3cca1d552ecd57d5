#pragma once

// Dense complex-matrix kernel. Everything here is a pure function of its
// arguments; matrices are passed and returned by value.

#include <Eigen/Dense>

#include <complex>
#include <cstddef>
#include <string>

#include "sepdetect/errors.hpp"

namespace sepdetect {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;

/// Absolute tolerance for comparisons against zero.
inline constexpr double kZeroTol = 1e-9;

/// Bipartition M (x) N of a composite space. Composite index of |i_M, i_N>
/// is i_M * N + i_N.
struct Dims {
  std::size_t M = 0;
  std::size_t N = 0;

  std::size_t total() const noexcept { return M * N; }
  friend bool operator==(const Dims&, const Dims&) = default;
};

namespace detail {

template <typename Derived>
void require_finite(const Eigen::MatrixBase<Derived>& a, const char* what) {
  if (!a.allFinite()) throw InvalidInput(std::string(what) + ": non-finite entry");
}

inline void require_square_of(const ComplexMatrix& a, Dims dims) {
  if (dims.M < 1 || dims.N < 1)
    throw InvalidInput("bipartition dimensions must be positive");
  const auto n = static_cast<Eigen::Index>(dims.total());
  if (a.rows() != n || a.cols() != n)
    throw InvalidInput("matrix is " + std::to_string(a.rows()) + "x" +
                       std::to_string(a.cols()) + " but bipartition " +
                       std::to_string(dims.M) + "x" + std::to_string(dims.N) +
                       " needs " + std::to_string(n) + "x" + std::to_string(n));
}

}  // namespace detail

/// Singular values in decreasing order.
template <typename Derived>
RealVector singular_values(const Eigen::MatrixBase<Derived>& a) {
  detail::require_finite(a, "singular_values");
  using Plain = typename Derived::PlainObject;
  Eigen::JacobiSVD<Plain> svd(a.derived().eval());
  return svd.singularValues();
}

/// Ky Fan norm as used here: the sum of all singular values (trace norm).
template <typename Derived>
double ky_fan_norm(const Eigen::MatrixBase<Derived>& a) {
  detail::require_finite(a, "ky_fan_norm");
  if (a.size() == 0) return 0.0;
  return singular_values(a).sum();
}

/// Eigenvalues of a Hermitian matrix, ascending. Only the lower triangle is read.
inline RealVector hermitian_eigenvalues(const ComplexMatrix& h) {
  detail::require_finite(h, "hermitian_eigenvalues");
  if (h.rows() != h.cols()) throw InvalidInput("hermitian_eigenvalues: matrix not square");
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(h, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) throw InvalidInput("hermitian_eigenvalues: no convergence");
  return solver.eigenvalues();
}

template <typename DA, typename DB>
auto kron(const Eigen::MatrixBase<DA>& a, const Eigen::MatrixBase<DB>& b) {
  using Scalar = typename Eigen::ScalarBinaryOpTraits<typename DA::Scalar,
                                                     typename DB::Scalar>::ReturnType;
  Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> out(a.rows() * b.rows(),
                                                            a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

/// Transpose on the second tensor factor:
/// out_{(i,j),(k,l)} = in_{(i,l),(k,j)}.
inline ComplexMatrix partial_transpose(const ComplexMatrix& rho, Dims dims) {
  detail::require_square_of(rho, dims);
  const auto M = static_cast<Eigen::Index>(dims.M);
  const auto N = static_cast<Eigen::Index>(dims.N);
  ComplexMatrix out(M * N, M * N);
  for (Eigen::Index i = 0; i < M; ++i)
    for (Eigen::Index k = 0; k < M; ++k)
      out.block(i * N, k * N, N, N) = rho.block(i * N, k * N, N, N).transpose();
  return out;
}

/// Realignment reshuffle, shape M^2 x N^2:
/// R_{(i,j),(k,l)} = rho_{(i,k),(j,l)} with i,j on the first factor.
/// Row (i,j) is the row-major vectorization of block (i,j) of rho.
inline ComplexMatrix realign(const ComplexMatrix& rho, Dims dims) {
  detail::require_square_of(rho, dims);
  const auto M = static_cast<Eigen::Index>(dims.M);
  const auto N = static_cast<Eigen::Index>(dims.N);
  ComplexMatrix out(M * M, N * N);
  for (Eigen::Index i = 0; i < M; ++i)
    for (Eigen::Index j = 0; j < M; ++j)
      for (Eigen::Index k = 0; k < N; ++k)
        for (Eigen::Index l = 0; l < N; ++l)
          out(i * M + j, k * N + l) = rho(i * N + k, j * N + l);
  return out;
}

/// Tr_A[(op (x) I_N) rho], an N x N matrix. With op = I_M this is the
/// reduced state on the second factor.
inline ComplexMatrix weighted_partial_trace_first(const ComplexMatrix& rho,
                                                  const ComplexMatrix& op, Dims dims) {
  const auto M = static_cast<Eigen::Index>(dims.M);
  const auto N = static_cast<Eigen::Index>(dims.N);
  ComplexMatrix out = ComplexMatrix::Zero(N, N);
  for (Eigen::Index a = 0; a < M; ++a)
    for (Eigen::Index c = 0; c < M; ++c) {
      const Complex w = op(c, a);
      if (w != Complex(0.0, 0.0)) out += w * rho.block(a * N, c * N, N, N);
    }
  return out;
}

/// Reduced state on the first factor, Tr_B rho.
inline ComplexMatrix partial_trace_second(const ComplexMatrix& rho, Dims dims) {
  const auto M = static_cast<Eigen::Index>(dims.M);
  const auto N = static_cast<Eigen::Index>(dims.N);
  ComplexMatrix out(M, M);
  for (Eigen::Index a = 0; a < M; ++a)
    for (Eigen::Index c = 0; c < M; ++c) out(a, c) = rho.block(a * N, c * N, N, N).trace();
  return out;
}

/// Tr(A B) without forming the product.
inline Complex trace_of_product(const ComplexMatrix& a, const ComplexMatrix& b) {
  return (a.array() * b.transpose().array()).sum();
}

}  // namespace sepdetect

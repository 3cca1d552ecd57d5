#pragma once

#include <algorithm>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "sepdetect/errors.hpp"
#include "sepdetect/numerics.hpp"

namespace sepdetect {

inline constexpr double kHermitianTol = 1e-8;
inline constexpr double kTraceTol = 1e-8;
inline constexpr double kPsdTol = 1e-8;

/// A bipartite quantum state on C^M (x) C^N.
///
/// Construction enforces squareness against the bipartition, finiteness,
/// Hermiticity and unit trace (each to 1e-8) and throws ValidationError
/// otherwise. Positivity is only reported: a minimum eigenvalue below -1e-8
/// adds a warning. The stored matrix is the Hermitian part of the input.
class DensityMatrix {
 public:
  DensityMatrix(const ComplexMatrix& entries, Dims dims) : dims_(dims) {
    using P = ValidationError::Property;
    if (dims.M < 1 || dims.N < 1)
      throw ValidationError(P::Dimensions, "bipartition dimensions must be positive");
    const auto n = static_cast<Eigen::Index>(dims.total());
    if (entries.rows() != n || entries.cols() != n) {
      std::ostringstream msg;
      msg << "matrix is " << entries.rows() << "x" << entries.cols() << ", bipartition "
          << dims.M << "x" << dims.N << " needs " << n << "x" << n;
      throw ValidationError(P::Dimensions, msg.str());
    }
    if (!entries.allFinite()) throw ValidationError(P::Finite, "non-finite entry");

    const double asym = (entries - entries.adjoint()).cwiseAbs().maxCoeff();
    if (asym > kHermitianTol) {
      std::ostringstream msg;
      msg << "max |rho - rho^dagger| = " << asym << " exceeds " << kHermitianTol;
      throw ValidationError(P::Hermitian, msg.str());
    }
    const Complex tr = entries.trace();
    if (std::abs(tr - Complex(1.0, 0.0)) > kTraceTol) {
      std::ostringstream msg;
      msg << "trace " << tr.real() << (tr.imag() < 0 ? "" : "+") << tr.imag() << "i is not 1";
      throw ValidationError(P::Trace, msg.str());
    }

    matrix_ = 0.5 * (entries + entries.adjoint());
    min_eigenvalue_ = hermitian_eigenvalues(matrix_).minCoeff();
    if (min_eigenvalue_ < -kPsdTol) {
      std::ostringstream msg;
      msg << "not positive semidefinite: minimum eigenvalue " << min_eigenvalue_;
      warnings_.push_back(msg.str());
    }
  }

  const ComplexMatrix& matrix() const noexcept { return matrix_; }
  Dims dims() const noexcept { return dims_; }
  std::size_t size() const noexcept { return dims_.total(); }
  double min_eigenvalue() const noexcept { return min_eigenvalue_; }
  bool is_psd() const noexcept { return min_eigenvalue_ >= -kPsdTol; }
  const std::vector<std::string>& warnings() const noexcept { return warnings_; }

  /// I/(MN).
  static DensityMatrix maximally_mixed(Dims dims) {
    const auto n = static_cast<Eigen::Index>(dims.total());
    return DensityMatrix(ComplexMatrix::Identity(n, n) / static_cast<double>(n), dims);
  }

  /// |psi><psi| for a nonzero vector, normalized.
  static DensityMatrix pure(const ComplexVector& psi, Dims dims) {
    const double norm = psi.norm();
    if (!(norm > 0.0)) throw InvalidInput("pure state vector must be nonzero");
    const ComplexVector unit = psi / norm;
    return DensityMatrix(unit * unit.adjoint(), dims);
  }

 private:
  ComplexMatrix matrix_;
  Dims dims_;
  double min_eigenvalue_ = 0.0;
  std::vector<std::string> warnings_;
};

/// weight * a + (1 - weight) * b.
inline DensityMatrix mix(double weight, const DensityMatrix& a, const DensityMatrix& b) {
  if (a.dims() != b.dims()) throw InvalidInput("mix: bipartitions differ");
  return DensityMatrix(weight * a.matrix() + (1.0 - weight) * b.matrix(), a.dims());
}

/// rho_A (x) rho_B from two local states given as square matrices.
inline DensityMatrix tensor_product(const ComplexMatrix& local_a, const ComplexMatrix& local_b) {
  const Dims d{static_cast<std::size_t>(local_a.rows()), static_cast<std::size_t>(local_b.rows())};
  return DensityMatrix(kron(local_a, local_b), d);
}

inline ComplexMatrix partial_transpose(const DensityMatrix& rho) {
  return partial_transpose(rho.matrix(), rho.dims());
}

inline ComplexMatrix realign(const DensityMatrix& rho) { return realign(rho.matrix(), rho.dims()); }

}  // namespace sepdetect

#pragma once

// Generalized Gell-Mann generators and the Bloch (r, s, T) coordinates of a
// bipartite state:
//
//   rho = 1/(MN) [ I(x)I + sum_k r_k l_k(x)I + sum_l s_l I(x)m_l
//                  + sum_kl t_kl l_k(x)m_l ]
//
// with r_k = (M/2) Tr(rho l_k(x)I), s_l = (N/2) Tr(rho I(x)m_l) and
// t_kl = (MN/4) Tr(rho l_k(x)m_l).

#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <sstream>
#include <string>
#include <vector>

#include "sepdetect/density.hpp"
#include "sepdetect/errors.hpp"
#include "sepdetect/numerics.hpp"

namespace sepdetect {

/// Maximum tolerated imaginary part of any r, s or T entry.
inline constexpr double kImaginaryResidueTol = 1e-10;

/// The d^2 - 1 traceless Hermitian generators of SU(d), normalized to
/// Tr(g_i g_j) = 2 delta_ij.
///
/// Canonical order: diagonal w_0 ... w_{d-2}, then symmetric u_jk for
/// j < k in lexicographic order, then antisymmetric v_jk in the same order.
/// For d = 2 this is (sigma_z, sigma_x, sigma_y).
struct GeneratorSet {
  std::size_t dimension = 0;
  std::vector<ComplexMatrix> matrices;
  std::vector<std::string> labels;

  std::size_t size() const noexcept { return matrices.size(); }
  const ComplexMatrix& operator[](std::size_t i) const { return matrices[i]; }
};

namespace detail {

inline GeneratorSet build_generators(std::size_t d) {
  GeneratorSet set;
  set.dimension = d;
  const auto n = static_cast<Eigen::Index>(d);
  set.matrices.reserve(d * d - 1);

  for (std::size_t l = 0; l + 2 <= d; ++l) {
    ComplexMatrix w = ComplexMatrix::Zero(n, n);
    for (std::size_t i = 0; i <= l; ++i) w(i, i) = 1.0;
    w(l + 1, l + 1) = -static_cast<double>(l + 1);
    w *= std::sqrt(2.0 / static_cast<double>((l + 1) * (l + 2)));
    set.matrices.push_back(std::move(w));
    set.labels.push_back("w" + std::to_string(l));
  }
  for (std::size_t j = 0; j < d; ++j)
    for (std::size_t k = j + 1; k < d; ++k) {
      ComplexMatrix u = ComplexMatrix::Zero(n, n);
      u(j, k) = 1.0;
      u(k, j) = 1.0;
      set.matrices.push_back(std::move(u));
      set.labels.push_back("u" + std::to_string(j) + "_" + std::to_string(k));
    }
  for (std::size_t j = 0; j < d; ++j)
    for (std::size_t k = j + 1; k < d; ++k) {
      ComplexMatrix v = ComplexMatrix::Zero(n, n);
      v(j, k) = Complex(0.0, -1.0);
      v(k, j) = Complex(0.0, 1.0);
      set.matrices.push_back(std::move(v));
      set.labels.push_back("v" + std::to_string(j) + "_" + std::to_string(k));
    }
  return set;
}

}  // namespace detail

/// Generators for dimension d >= 2. Sets are built once per d and shared
/// read-only afterwards.
inline std::shared_ptr<const GeneratorSet> generators(std::size_t d) {
  if (d < 2) throw InvalidInput("generators: dimension must be at least 2, got " + std::to_string(d));
  static std::mutex mutex;
  static std::map<std::size_t, std::shared_ptr<const GeneratorSet>> cache;
  std::lock_guard lock(mutex);
  auto& slot = cache[d];
  if (!slot) slot = std::make_shared<const GeneratorSet>(detail::build_generators(d));
  return slot;
}

struct BlochDecomposition {
  Dims dims;
  RealVector r;  // length M^2 - 1
  RealVector s;  // length N^2 - 1
  RealMatrix T;  // (M^2 - 1) x (N^2 - 1)
};

namespace detail {

inline double real_part_checked(Complex z, const char* what, std::size_t i, std::size_t j = 0) {
  if (std::abs(z.imag()) > kImaginaryResidueTol) {
    std::ostringstream msg;
    msg << what << "[" << i << "," << j << "] has imaginary part " << z.imag();
    throw ValidationError(ValidationError::Property::ImaginaryResidue, msg.str());
  }
  return z.real();
}

}  // namespace detail

inline BlochDecomposition decompose(const DensityMatrix& rho) {
  const Dims dims = rho.dims();
  if (dims.M < 2 || dims.N < 2)
    throw InvalidInput("decompose: both subsystems need dimension >= 2");
  const auto& gm = *generators(dims.M);
  const auto& gn = *generators(dims.N);
  const double M = static_cast<double>(dims.M);
  const double N = static_cast<double>(dims.N);

  BlochDecomposition out;
  out.dims = dims;
  out.r.resize(static_cast<Eigen::Index>(gm.size()));
  out.s.resize(static_cast<Eigen::Index>(gn.size()));
  out.T.resize(static_cast<Eigen::Index>(gm.size()), static_cast<Eigen::Index>(gn.size()));

  const ComplexMatrix& m = rho.matrix();
  const ComplexMatrix reduced_b =
      weighted_partial_trace_first(m, ComplexMatrix::Identity(dims.M, dims.M), dims);
  for (std::size_t l = 0; l < gn.size(); ++l)
    out.s(l) = detail::real_part_checked(N / 2.0 * trace_of_product(reduced_b, gn[l]), "s", l);

  for (std::size_t k = 0; k < gm.size(); ++k) {
    // X_k = Tr_A[(l_k (x) I) rho], so Tr(rho l_k(x)m_l) = Tr(X_k m_l).
    const ComplexMatrix xk = weighted_partial_trace_first(m, gm[k], dims);
    out.r(k) = detail::real_part_checked(M / 2.0 * xk.trace(), "r", k);
    for (std::size_t l = 0; l < gn.size(); ++l)
      out.T(k, l) =
          detail::real_part_checked(M * N / 4.0 * trace_of_product(xk, gn[l]), "T", k, l);
  }
  return out;
}

/// Inverse of decompose. The result is Hermitian with unit trace by
/// construction; positivity is not checked (see DensityMatrix::warnings).
inline DensityMatrix reconstruct(const BlochDecomposition& b) {
  const Dims dims = b.dims;
  if (dims.M < 2 || dims.N < 2)
    throw InvalidInput("reconstruct: both subsystems need dimension >= 2");
  const auto& gm = *generators(dims.M);
  const auto& gn = *generators(dims.N);
  const auto km = static_cast<Eigen::Index>(gm.size());
  const auto kn = static_cast<Eigen::Index>(gn.size());
  if (b.r.size() != km || b.s.size() != kn || b.T.rows() != km || b.T.cols() != kn) {
    std::ostringstream msg;
    msg << "reconstruct: expected r[" << km << "], s[" << kn << "], T[" << km << "x" << kn
        << "], got r[" << b.r.size() << "], s[" << b.s.size() << "], T[" << b.T.rows() << "x"
        << b.T.cols() << "]";
    throw InvalidInput(msg.str());
  }
  if (!b.r.allFinite() || !b.s.allFinite() || !b.T.allFinite())
    throw InvalidInput("reconstruct: non-finite Bloch data");

  const auto M = static_cast<Eigen::Index>(dims.M);
  const auto N = static_cast<Eigen::Index>(dims.N);
  const ComplexMatrix id_m = ComplexMatrix::Identity(M, M);
  const ComplexMatrix id_n = ComplexMatrix::Identity(N, N);

  ComplexMatrix local_a = ComplexMatrix::Zero(M, M);
  for (Eigen::Index k = 0; k < km; ++k) local_a += b.r(k) * gm[k];
  ComplexMatrix local_b = ComplexMatrix::Zero(N, N);
  for (Eigen::Index l = 0; l < kn; ++l) local_b += b.s(l) * gn[l];

  ComplexMatrix acc = kron(id_m, id_n) + kron(local_a, id_n) + kron(id_m, local_b);
  for (Eigen::Index k = 0; k < km; ++k) {
    ComplexMatrix partner = ComplexMatrix::Zero(N, N);
    for (Eigen::Index l = 0; l < kn; ++l) partner += b.T(k, l) * gn[l];
    acc += kron(gm[k], partner);
  }
  return DensityMatrix(acc / static_cast<double>(M * N), dims);
}

}  // namespace sepdetect

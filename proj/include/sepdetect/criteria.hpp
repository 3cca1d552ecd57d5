#pragma once

// Separability criteria. Each returns a Verdict comparing a norm (lhs)
// against the largest value it can take on a separable state (bound).
// A violation certifies entanglement; its absence proves nothing.

#include <cmath>
#include <locale>
#include <sstream>
#include <string>

#include "sepdetect/bloch.hpp"
#include "sepdetect/density.hpp"
#include "sepdetect/errors.hpp"
#include "sepdetect/numerics.hpp"

namespace sepdetect {

/// Margin a violation must exceed before a state is called entangled.
inline constexpr double kDetectTol = 1e-9;

enum class Decision { Entangled, Inconclusive };

struct Verdict {
  double lhs = 0.0;
  double bound = 0.0;
  double violation = 0.0;  // lhs - bound
  Decision decision = Decision::Inconclusive;

  bool entangled() const noexcept { return decision == Decision::Entangled; }
};

inline Verdict make_verdict(double lhs, double bound) {
  const double violation = lhs - bound;
  return {lhs, bound, violation,
          violation > kDetectTol ? Decision::Entangled : Decision::Inconclusive};
}

inline const char* to_string(Decision d) noexcept {
  return d == Decision::Entangled ? "Entangled" : "Inconclusive";
}

namespace detail {

inline double half_pairs(std::size_t d) {
  const double x = static_cast<double>(d);
  return x * (x - 1.0) / 2.0;
}

inline void require_nonzero(const RealVector& v, const char* name) {
  if (v.size() == 0) throw InvalidInput(std::string(name) + " must have at least one entry");
  if (!v.allFinite()) throw InvalidInput(std::string(name) + " has a non-finite entry");
  if (v.squaredNorm() == 0.0) throw InvalidInput(std::string(name) + " must be a nonzero vector");
}

inline void require_nonnegative(double x, const char* name) {
  if (!std::isfinite(x)) throw InvalidInput(std::string(name) + " must be finite");
  if (x < 0.0) throw InvalidInput(std::string(name) + " must be nonnegative");
}

inline void require_finite_scalar(double x, const char* name) {
  if (!std::isfinite(x)) throw InvalidInput(std::string(name) + " must be finite");
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Block matrices
// ---------------------------------------------------------------------------

/// [[alpha beta^t, alpha s^t], [r beta^t, T]],
/// shape (n + M^2 - 1) x (m + N^2 - 1) for alpha of length n, beta of length m.
inline RealMatrix augmented_correlation_matrix(const BlochDecomposition& b, const RealVector& alpha,
                                               const RealVector& beta) {
  const auto n = alpha.size();
  const auto m = beta.size();
  const auto km = b.r.size();
  const auto kn = b.s.size();
  RealMatrix out(n + km, m + kn);
  out.topLeftCorner(n, m) = alpha * beta.transpose();
  out.topRightCorner(n, kn) = alpha * b.s.transpose();
  out.bottomLeftCorner(km, m) = b.r * beta.transpose();
  out.bottomRightCorner(km, kn) = b.T;
  return out;
}

/// [[a b, a s^t], [b r, T]]: the scalar-weight special case.
inline RealMatrix weighted_correlation_matrix(const BlochDecomposition& bd, double a, double b) {
  return augmented_correlation_matrix(bd, RealVector::Constant(1, a), RealVector::Constant(1, b));
}

/// [[a b E_mm, a w_m(s)^t], [b w_m(r), T]] where E_mm is all ones and
/// w_m(x) stacks m copies of the column x side by side.
inline RealMatrix replicated_correlation_matrix(const BlochDecomposition& bd, std::size_t m_rows,
                                                double a, double b) {
  const auto m = static_cast<Eigen::Index>(m_rows);
  const auto km = bd.r.size();
  const auto kn = bd.s.size();
  RealMatrix out(m + km, m + kn);
  out.topLeftCorner(m, m) = RealMatrix::Constant(m, m, a * b);
  out.topRightCorner(m, kn) = (a * bd.s).transpose().replicate(m, 1);
  out.bottomLeftCorner(km, m) = (b * bd.r).replicate(1, m);
  out.bottomRightCorner(km, kn) = bd.T;
  return out;
}

/// [[a b, a alpha^t (x) s^t], [b beta (x) r, beta alpha^t (x) T]].
/// beta multiplies the first-subsystem side, alpha the second.
inline RealMatrix tensor_correlation_matrix(const BlochDecomposition& bd, double a, double b,
                                            const RealVector& alpha, const RealVector& beta) {
  const RealMatrix top = a * kron(alpha.transpose(), bd.s.transpose());
  const RealMatrix left = b * kron(beta, bd.r);
  const RealMatrix body = kron(RealMatrix(beta * alpha.transpose()), bd.T);
  RealMatrix out(1 + body.rows(), 1 + body.cols());
  out(0, 0) = a * b;
  out.block(0, 1, 1, body.cols()) = top;
  out.block(1, 0, body.rows(), 1) = left;
  out.bottomRightCorner(body.rows(), body.cols()) = body;
  return out;
}

// ---------------------------------------------------------------------------
// Criteria on precomputed Bloch data
// ---------------------------------------------------------------------------

inline Verdict de_vicente(const BlochDecomposition& bd) {
  const double M = static_cast<double>(bd.dims.M);
  const double N = static_cast<double>(bd.dims.N);
  return make_verdict(ky_fan_norm(bd.T), std::sqrt(M * N * (M - 1.0) * (N - 1.0) / 4.0));
}

inline Verdict theorem1(const BlochDecomposition& bd, const RealVector& alpha,
                        const RealVector& beta) {
  detail::require_nonzero(alpha, "alpha");
  detail::require_nonzero(beta, "beta");
  const double lhs = ky_fan_norm(augmented_correlation_matrix(bd, alpha, beta));
  const double bound = std::sqrt(alpha.squaredNorm() + detail::half_pairs(bd.dims.M)) *
                       std::sqrt(beta.squaredNorm() + detail::half_pairs(bd.dims.N));
  return make_verdict(lhs, bound);
}

/// ||[[1, s^t], [r, T]]||_KF against sqrt((M^2-M+2)(N^2-N+2))/2, which is
/// theorem1 at alpha = beta = (1).
inline Verdict enhanced_tprime(const BlochDecomposition& bd) {
  const double M = static_cast<double>(bd.dims.M);
  const double N = static_cast<double>(bd.dims.N);
  const RealVector one = RealVector::Ones(1);
  const double lhs = ky_fan_norm(augmented_correlation_matrix(bd, one, one));
  return make_verdict(lhs, std::sqrt((M * M - M + 2.0) * (N * N - N + 2.0)) / 2.0);
}

inline Verdict shen(const BlochDecomposition& bd, std::size_t m_rows, double a, double b) {
  if (m_rows < 1) throw InvalidInput("shen: m must be at least 1");
  detail::require_nonnegative(a, "a");
  detail::require_nonnegative(b, "b");
  const double M = static_cast<double>(bd.dims.M);
  const double N = static_cast<double>(bd.dims.N);
  const double m = static_cast<double>(m_rows);
  const double lhs = ky_fan_norm(replicated_correlation_matrix(bd, m_rows, a, b));
  const double bound =
      0.5 * std::sqrt((2.0 * m * a * a + M * M - M) * (2.0 * m * b * b + N * N - N));
  return make_verdict(lhs, bound);
}

inline Verdict corollary2(const BlochDecomposition& bd, double a, double b) {
  detail::require_nonnegative(a, "a");
  detail::require_nonnegative(b, "b");
  const double lhs = ky_fan_norm(weighted_correlation_matrix(bd, a, b));
  const double bound = std::sqrt(a * a + detail::half_pairs(bd.dims.M)) *
                       std::sqrt(b * b + detail::half_pairs(bd.dims.N));
  return make_verdict(lhs, bound);
}

/// The weight b paired with a on the surface where the scalar-weight bound
/// collapses to the de Vicente bound plus |ab|. Same sign as a.
inline double theorem2_partner_weight(double a, Dims dims) {
  return a * std::sqrt(detail::half_pairs(dims.N) / detail::half_pairs(dims.M));
}

inline Verdict theorem2(const BlochDecomposition& bd, double a) {
  detail::require_finite_scalar(a, "a");
  const double b = theorem2_partner_weight(a, bd.dims);
  const double M = static_cast<double>(bd.dims.M);
  const double N = static_cast<double>(bd.dims.N);
  const double lhs = ky_fan_norm(weighted_correlation_matrix(bd, a, b));
  return make_verdict(lhs, std::sqrt(M * N * (M - 1.0) * (N - 1.0) / 4.0) + std::abs(a * b));
}

inline Verdict theorem3(const BlochDecomposition& bd, double a, double b, const RealVector& alpha,
                        const RealVector& beta) {
  detail::require_finite_scalar(a, "a");
  detail::require_finite_scalar(b, "b");
  detail::require_nonzero(alpha, "alpha");
  detail::require_nonzero(beta, "beta");
  const double lhs = ky_fan_norm(tensor_correlation_matrix(bd, a, b, alpha, beta));
  const double bound = std::sqrt(a * a + beta.squaredNorm() * detail::half_pairs(bd.dims.M)) *
                       std::sqrt(b * b + alpha.squaredNorm() * detail::half_pairs(bd.dims.N));
  return make_verdict(lhs, bound);
}

// ---------------------------------------------------------------------------
// Criteria on states
// ---------------------------------------------------------------------------

inline Verdict de_vicente(const DensityMatrix& rho) { return de_vicente(decompose(rho)); }
inline Verdict enhanced_tprime(const DensityMatrix& rho) { return enhanced_tprime(decompose(rho)); }
inline Verdict shen(const DensityMatrix& rho, std::size_t m_rows, double a, double b) {
  return shen(decompose(rho), m_rows, a, b);
}
inline Verdict theorem1(const DensityMatrix& rho, const RealVector& alpha, const RealVector& beta) {
  return theorem1(decompose(rho), alpha, beta);
}
inline Verdict corollary2(const DensityMatrix& rho, double a, double b) {
  return corollary2(decompose(rho), a, b);
}
inline Verdict theorem2(const DensityMatrix& rho, double a) { return theorem2(decompose(rho), a); }
inline Verdict theorem3(const DensityMatrix& rho, double a, double b, const RealVector& alpha,
                        const RealVector& beta) {
  return theorem3(decompose(rho), a, b, alpha, beta);
}

/// Negativity of the partial transpose: lhs = -lambda_min(rho^{T_B}), bound 0.
inline Verdict ppt(const DensityMatrix& rho) {
  return make_verdict(-hermitian_eigenvalues(partial_transpose(rho)).minCoeff(), 0.0);
}

/// Computable cross-norm / realignment: ||R(rho)||_KF against 1.
inline Verdict realignment(const DensityMatrix& rho) {
  return make_verdict(ky_fan_norm(realign(rho)), 1.0);
}

// ---------------------------------------------------------------------------
// Tagged dispatch
// ---------------------------------------------------------------------------

enum class CriterionKind {
  DeVicente,
  Enhanced,
  Shen,
  Theorem1,
  Corollary2,
  Theorem2,
  Theorem3,
  Ppt,
  Realignment,
};

/// Free parameters; each criterion reads only the fields it needs.
struct CriterionParams {
  double a = 0.0;
  double b = 0.0;
  RealVector alpha;
  RealVector beta;
  std::size_t m_rows = 1;
};

struct CriterionSpec {
  CriterionKind kind = CriterionKind::DeVicente;
  CriterionParams params;
};

inline const char* to_string(CriterionKind k) noexcept {
  switch (k) {
    case CriterionKind::DeVicente: return "devicente";
    case CriterionKind::Enhanced: return "enhanced";
    case CriterionKind::Shen: return "shen";
    case CriterionKind::Theorem1: return "theorem1";
    case CriterionKind::Corollary2: return "corollary2";
    case CriterionKind::Theorem2: return "theorem2";
    case CriterionKind::Theorem3: return "theorem3";
    case CriterionKind::Ppt: return "ppt";
    case CriterionKind::Realignment: return "realignment";
  }
  return "unknown";
}

namespace detail {

inline void append_vector(std::ostringstream& out, const RealVector& v) {
  out << '[';
  for (Eigen::Index i = 0; i < v.size(); ++i) out << (i ? "," : "") << v(i);
  out << ']';
}

}  // namespace detail

/// Canonical `name:key=value,...` form of a spec, parseable by parse_criterion.
inline std::string describe(const CriterionSpec& spec) {
  std::ostringstream out;
  out.imbue(std::locale::classic());
  out.precision(17);
  const auto& p = spec.params;
  out << to_string(spec.kind);
  switch (spec.kind) {
    case CriterionKind::Shen:
      out << ":m=" << p.m_rows << ",a=" << p.a << ",b=" << p.b;
      break;
    case CriterionKind::Theorem1:
      out << ":alpha=";
      detail::append_vector(out, p.alpha);
      out << ",beta=";
      detail::append_vector(out, p.beta);
      break;
    case CriterionKind::Corollary2:
      out << ":a=" << p.a << ",b=" << p.b;
      break;
    case CriterionKind::Theorem2:
      out << ":a=" << p.a;
      break;
    case CriterionKind::Theorem3:
      out << ":a=" << p.a << ",b=" << p.b << ",alpha=";
      detail::append_vector(out, p.alpha);
      out << ",beta=";
      detail::append_vector(out, p.beta);
      break;
    default:
      break;
  }
  return out.str();
}

inline Verdict evaluate(const DensityMatrix& rho, const CriterionSpec& spec) {
  const auto& p = spec.params;
  switch (spec.kind) {
    case CriterionKind::Ppt: return ppt(rho);
    case CriterionKind::Realignment: return realignment(rho);
    default: break;
  }
  const BlochDecomposition bd = decompose(rho);
  switch (spec.kind) {
    case CriterionKind::DeVicente: return de_vicente(bd);
    case CriterionKind::Enhanced: return enhanced_tprime(bd);
    case CriterionKind::Shen: return shen(bd, p.m_rows, p.a, p.b);
    case CriterionKind::Theorem1: return theorem1(bd, p.alpha, p.beta);
    case CriterionKind::Corollary2: return corollary2(bd, p.a, p.b);
    case CriterionKind::Theorem2: return theorem2(bd, p.a);
    case CriterionKind::Theorem3: return theorem3(bd, p.a, p.b, p.alpha, p.beta);
    default: break;
  }
  throw InvalidInput("evaluate: unknown criterion");
}

}  // namespace sepdetect

#pragma once

// Release gate: reproduces every published detection threshold and checks
// the structural identities between criteria. Shared by the acceptance test
// binary and `sepdetect selftest`.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <iomanip>
#include <optional>
#include <ostream>
#include <random>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

#include "sepdetect/bloch.hpp"
#include "sepdetect/criteria.hpp"
#include "sepdetect/scan.hpp"
#include "sepdetect/states.hpp"

namespace sepdetect::acceptance {

struct Result {
  int id = 0;
  std::string title;
  bool passed = false;
  std::string detail;
  double seconds = 0.0;
};

namespace detail {

/// Collects expectations; one failed expectation fails the item.
class Checker {
 public:
  void expect(bool condition, const std::string& what) {
    if (!condition) {
      ok_ = false;
      failures_ += (failures_.empty() ? "FAILED " : "; FAILED ") + what;
    }
  }

  void near(double actual, double expected, double tol, const std::string& what) {
    std::ostringstream s;
    s << std::setprecision(10) << what << " = " << actual << " (expected " << expected
      << " +/- " << tol << ")";
    expect(std::abs(actual - expected) <= tol, s.str());
    note(s.str());
  }

  void note(const std::string& text) { log_ += (log_.empty() ? "" : "; ") + text; }

  bool ok() const { return ok_; }
  std::string detail() const { return failures_.empty() ? log_ : failures_ + " | " + log_; }

 private:
  bool ok_ = true;
  std::string log_;
  std::string failures_;
};

inline RealVector vec(std::initializer_list<double> xs) {
  RealVector v(static_cast<Eigen::Index>(xs.size()));
  Eigen::Index i = 0;
  for (double x : xs) v(i++) = x;
  return v;
}

inline CriterionSpec theorem1_spec(RealVector alpha, RealVector beta) {
  CriterionSpec c{CriterionKind::Theorem1, {}};
  c.params.alpha = std::move(alpha);
  c.params.beta = std::move(beta);
  return c;
}

inline CriterionSpec theorem3_spec(double a, double b, RealVector alpha, RealVector beta) {
  CriterionSpec c{CriterionKind::Theorem3, {}};
  c.params.a = a;
  c.params.b = b;
  c.params.alpha = std::move(alpha);
  c.params.beta = std::move(beta);
  return c;
}

inline CriterionSpec corollary2_spec(double a, double b) {
  CriterionSpec c{CriterionKind::Corollary2, {}};
  c.params.a = a;
  c.params.b = b;
  return c;
}

/// Random real vector of the given length rescaled to the given norm.
inline RealVector random_with_norm(std::mt19937_64& rng, Eigen::Index length, double norm) {
  std::normal_distribution<double> normal;
  RealVector v(length);
  do {
    for (Eigen::Index i = 0; i < length; ++i) v(i) = normal(rng);
  } while (v.norm() < 1e-3);
  return v * (norm / v.norm());
}

inline const std::vector<Dims>& property_dims() {
  static const std::vector<Dims> dims{{2, 2}, {2, 3}, {2, 4}, {3, 3}};
  return dims;
}

/// Threshold search that turns a missing sign change into a failed check.
inline std::optional<Threshold> try_threshold(Checker& check, const StateFamily& family,
                                              const CriterionSpec& criterion, double from,
                                              double to, double tol, const std::string& label) {
  try {
    return threshold(family, criterion, from, to, tol);
  } catch (const std::exception& e) {
    check.expect(false, label + ": " + e.what());
    return std::nullopt;
  }
}

}  // namespace detail

// 1 -------------------------------------------------------------------------
inline Result bound2x4_theorem1_threshold() {
  detail::Checker check;
  const double w = 1.0 / (2.0 * std::sqrt(3.0));
  const auto start = std::chrono::steady_clock::now();
  const auto t = detail::try_threshold(check, bound_2x4_family(0.9),
                                       detail::theorem1_spec(detail::vec({w, w}), detail::vec({1, 0})),
                                       0.0, 1.0, 1e-6, "theorem1 threshold");
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (t) {
    check.near(t->value, 0.223406, 1e-4, "theta");
    check.expect(t->direction == Direction::DetectsAbove, "detection above the threshold");
  }
  std::ostringstream s;
  s << "search took " << secs << " s (limit 1 s)";
  check.expect(secs < 1.0, s.str());
  check.note(s.str());
  return {1, "bound 2x4 mixture threshold (theorem1)", check.ok(), check.detail(), 0};
}

// 2 -------------------------------------------------------------------------
inline Result weight_norm_invariance() {
  detail::Checker check;
  const auto family = bound_2x4_family(0.9);
  const double w = 1.0 / (2.0 * std::sqrt(3.0));
  const auto base = detail::try_threshold(
      check, family, detail::theorem1_spec(detail::vec({w, w}), detail::vec({1, 0})), 0.0, 1.0,
      1e-9, "reference threshold");
  if (!base) return {2, "theorem1 threshold depends only on weight norms", false, check.detail(), 0};

  std::mt19937_64 rng(2024);
  std::uniform_int_distribution<int> length(1, 5);
  double worst = 0.0;
  for (int trial = 0; trial < 12; ++trial) {
    const RealVector alpha = detail::random_with_norm(rng, length(rng), std::sqrt(1.0 / 6.0));
    const RealVector beta = detail::random_with_norm(rng, length(rng), 1.0);
    const auto t = detail::try_threshold(check, family, detail::theorem1_spec(alpha, beta), 0.0,
                                         1.0, 1e-9, "threshold for trial " + std::to_string(trial));
    if (t) worst = std::max(worst, std::abs(t->value - base->value));
  }
  std::ostringstream s;
  s << std::setprecision(10) << "reference theta = " << base->value
    << ", max deviation over 12 same-norm (alpha, beta) = " << worst << " (limit 1e-6)";
  check.expect(worst <= 1e-6, s.str());
  check.note(s.str());
  return {2, "theorem1 threshold depends only on weight norms", check.ok(), check.detail(), 0};
}

// 3 -------------------------------------------------------------------------
inline Result two_qubit_closed_form() {
  detail::Checker check;
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> ua(0.05, 3.0), up(0.0, 1.0);
  double worst = 0.0;
  for (int i = 0; i < 100; ++i) {
    const double a = ua(rng);
    const double p = up(rng);
    const double lhs = corollary2(two_qubit_ex2(p), a, a).lhs;
    const double closed =
        2 * p + std::sqrt(4 * a * a * p * p + std::pow(2 * p - 1 - a * a, 2));
    worst = std::max(worst, std::abs(lhs - closed));
  }
  std::ostringstream s;
  s << "max |lhs - closed form| over 100 (a, p) = " << worst << " (limit 1e-10)";
  check.expect(worst <= 1e-10, s.str());
  check.note(s.str());

  for (double a : {0.5, 1.0, 2.0})
    for (double p : {0.01, 0.1, 0.5, 1.0}) {
      const auto v = theorem2(two_qubit_ex2(p), a);
      std::ostringstream what;
      what << "theorem2(a=" << a << ") detects p=" << p << " (violation " << v.violation << ")";
      check.expect(v.entangled(), what.str());
    }
  const auto at04 = de_vicente(two_qubit_ex2(0.4));
  const auto at06 = de_vicente(two_qubit_ex2(0.6));
  check.expect(!at04.entangled(), "devicente inconclusive at p=0.4");
  check.expect(at06.entangled(), "devicente detects at p=0.6");
  check.note("theorem2 detects p in {0.01,0.1,0.5,1} for a in {0.5,1,2}; devicente lhs(0.4) = " +
             std::to_string(at04.lhs) + ", lhs(0.6) = " + std::to_string(at06.lhs));
  return {3, "two-qubit closed form, theorem2 vs devicente", check.ok(), check.detail(), 0};
}

// 4 -------------------------------------------------------------------------
inline Result bound2x4_theorem3_threshold() {
  detail::Checker check;
  const auto t = detail::try_threshold(
      check, bound_2x4_family(0.9),
      detail::theorem3_spec(1.0 / std::sqrt(6.0), 1.0, detail::vec({1, 3}), detail::vec({1, -2})),
      0.0, 1.0, 1e-6, "theorem3 threshold");
  if (t) check.near(t->value, 0.22325, 1e-4, "theta");
  return {4, "bound 2x4 mixture threshold (theorem3)", check.ok(), check.detail(), 0};
}

// 5 -------------------------------------------------------------------------
inline Result horodecki_threshold() {
  detail::Checker check;
  const auto family = horodecki_family(0.9);
  const auto crit = detail::theorem3_spec(1.0 / 12.0, 1.0 / 6.0, detail::vec({0.125, 0.125}),
                                          detail::vec({0.125}));
  const auto t = detail::try_threshold(check, family, crit, 0.9, 1.0, 1e-6, "q-threshold on [0.9, 1]");
  if (t) check.near(t->value, 0.9867, 5e-4, "q-threshold");

  const auto scan = sweep(family, crit, 0.9, 1.0, 101);
  const auto& r98 = scan.rows[80];
  const auto& r99 = scan.rows[90];
  std::ostringstream a, b;
  a << std::setprecision(10) << "Delta(q=" << r98.param << ") = " << r98.violation << " < 0";
  b << std::setprecision(10) << "Delta(q=" << r99.param << ") = " << r99.violation << " > 0";
  check.expect(r98.violation < 0.0, a.str());
  check.expect(r99.violation > 0.0, b.str());
  check.note(a.str());
  check.note(b.str());
  std::ostringstream c;
  c << std::setprecision(10) << "max Delta on the sweep = "
    << std::max_element(scan.rows.begin(), scan.rows.end(),
                        [](const ScanRow& x, const ScanRow& y) { return x.violation < y.violation; })
           ->violation;
  check.note(c.str());
  return {5, "3x3 Horodecki mixture threshold and sweep (theorem3)", check.ok(), check.detail(), 0};
}

// 6 -------------------------------------------------------------------------
inline Result isotropic_thresholds() {
  detail::Checker check;
  const auto family = isotropic_family(2, 3);
  const double r2 = std::sqrt(2.0), r6 = std::sqrt(6.0);

  if (auto t = detail::try_threshold(check, family, detail::corollary2_spec(r2, r6), 0.3, 0.5, 1e-8,
                                     "corollary2"))
    check.near(t->value, 0.378054, 1e-5, "corollary2(sqrt2, sqrt6)");
  if (auto t = detail::try_threshold(check, family, {CriterionKind::DeVicente, {}}, 0.3, 0.5, 1e-8,
                                     "devicente"))
    check.near(t->value, 0.3849, 1e-4, "devicente");
  if (auto t = detail::try_threshold(check, family, {CriterionKind::Realignment, {}}, 0.3, 0.5,
                                     1e-8, "realignment"))
    check.near(t->value, 0.3846, 1e-4, "realignment");

  const std::vector<std::pair<double, double>> scaled{
      {0.1, 0.379712}, {0.5, 0.378139}, {2.0, 0.378032}, {10.0, 0.378025}};
  std::vector<double> values;
  for (const auto& [t, expected] : scaled) {
    std::ostringstream label;
    label << "corollary2 t=" << t;
    if (auto th = detail::try_threshold(check, family, detail::corollary2_spec(r2 * t, r6 * t), 0.3,
                                        0.5, 1e-8, label.str())) {
      check.near(th->value, expected, 1e-5, label.str());
      values.push_back(th->value);
    }
  }
  check.expect(std::is_sorted(values.rbegin(), values.rend()),
               "scaled thresholds non-increasing in t");

  if (auto t = detail::try_threshold(check, family, {CriterionKind::Ppt, {}}, 0.0, 1.0, 1e-9, "ppt"))
    check.near(t->value, 0.25, 1e-6, "ppt");
  return {6, "isotropic 2x3 thresholds", check.ok(), check.detail(), 0};
}

// 7 -------------------------------------------------------------------------
inline Result structural_identities() {
  detail::Checker check;
  std::mt19937_64 rng(77);
  std::uniform_int_distribution<int> length(1, 4);
  std::uniform_real_distribution<double> weight(0.1, 3.0), signed_weight(-3.0, 3.0);
  const auto& dims = detail::property_dims();

  double worst1 = 0.0, worst3 = 0.0;
  for (int i = 0; i < 100; ++i) {
    const Dims d = dims[i % dims.size()];
    const auto bd = decompose(random_density(d, 1 + i % d.total(), 1000 + i));
    const double na = weight(rng), nb = weight(rng);
    const RealVector a1 = detail::random_with_norm(rng, length(rng), na);
    const RealVector a2 = detail::random_with_norm(rng, length(rng), na);
    const RealVector b1 = detail::random_with_norm(rng, length(rng), nb);
    const RealVector b2 = detail::random_with_norm(rng, length(rng), nb);
    worst1 = std::max(worst1, std::abs(theorem1(bd, a1, b1).lhs - theorem1(bd, a2, b2).lhs));
    const double a = signed_weight(rng), b = signed_weight(rng);
    worst3 = std::max(worst3, std::abs(theorem3(bd, a, b, a1, b1).lhs - theorem3(bd, a, b, a2, b2).lhs));
  }

  double worst_shen = 0.0, worst_w = 0.0;
  for (int i = 0; i < 20; ++i) {
    const Dims d = dims[i % dims.size()];
    const auto bd = decompose(random_density(d, d.total(), 5000 + i));
    const std::size_t m = static_cast<std::size_t>(length(rng));
    const double a = weight(rng), b = weight(rng);
    const auto via_t1 = theorem1(bd, RealVector::Constant(m, a), RealVector::Constant(m, b));
    const auto via_shen = shen(bd, m, a, b);
    worst_shen = std::max({worst_shen, std::abs(via_t1.lhs - via_shen.lhs),
                           std::abs(via_t1.bound - via_shen.bound)});

    const double k = weight(rng), l = weight(rng), wa = weight(rng), wb = weight(rng);
    const double w_lhs = theorem3(bd, wa, wb, RealVector::Constant(1, k), RealVector::Constant(1, l)).lhs;
    const double t_lhs = corollary2(bd, wa / l, wb / k).lhs;
    worst_w = std::max(worst_w, std::abs(w_lhs - k * l * t_lhs));
  }

  auto report = [&](double worst, const std::string& what) {
    std::ostringstream s;
    s << what << " max deviation " << worst << " (limit 1e-10)";
    check.expect(worst <= 1e-10, s.str());
    check.note(s.str());
  };
  report(worst1, "theorem1 same-norm invariance (100 states)");
  report(worst3, "theorem3 same-norm invariance (100 states)");
  report(worst_shen, "shen == theorem1(a*1, b*1) (20 draws)");
  report(worst_w, "W_ab,kl == kl T_(a/l)(b/k) (20 draws)");
  return {7, "Structural identities", check.ok(), check.detail(), 0};
}

/// The criteria panel used by the soundness check.
inline std::vector<CriterionSpec> soundness_panel() {
  std::vector<CriterionSpec> panel;
  panel.push_back({CriterionKind::DeVicente, {}});
  panel.push_back({CriterionKind::Enhanced, {}});
  for (auto [m, a, b] : {std::tuple{1, 1.0, 1.0}, std::tuple{3, 0.5, 2.0}, std::tuple{2, 0.0, 0.0}}) {
    CriterionSpec s{CriterionKind::Shen, {}};
    s.params.m_rows = static_cast<std::size_t>(m);
    s.params.a = a;
    s.params.b = b;
    panel.push_back(s);
  }
  const double w = 1.0 / (2.0 * std::sqrt(3.0));
  panel.push_back(detail::theorem1_spec(detail::vec({w, w}), detail::vec({1, 0})));
  panel.push_back(detail::theorem1_spec(detail::vec({2, -1, 0.5}), detail::vec({0.3})));
  for (auto [a, b] : {std::pair{std::sqrt(2.0), std::sqrt(6.0)}, std::pair{0.0, 0.0},
                      std::pair{10.0, 10.0}, std::pair{0.2, 5.0}})
    panel.push_back(detail::corollary2_spec(a, b));
  for (double a : {1.0, -2.0, 0.0}) {
    CriterionSpec s{CriterionKind::Theorem2, {}};
    s.params.a = a;
    panel.push_back(s);
  }
  panel.push_back(detail::theorem3_spec(1.0 / std::sqrt(6.0), 1.0, detail::vec({1, 3}), detail::vec({1, -2})));
  panel.push_back(detail::theorem3_spec(1.0 / 12.0, 1.0 / 6.0, detail::vec({0.125, 0.125}), detail::vec({0.125})));
  panel.push_back(detail::theorem3_spec(-1.5, 0.7, detail::vec({1, 1}), detail::vec({1, 1})));
  panel.push_back({CriterionKind::Ppt, {}});
  panel.push_back({CriterionKind::Realignment, {}});
  return panel;
}

// 8 -------------------------------------------------------------------------
inline Result soundness() {
  detail::Checker check;
  const std::vector<Dims> dims{{2, 2}, {2, 3}, {2, 4}, {3, 3}, {3, 4}};
  const auto panel = soundness_panel();
  int evaluations = 0, false_positives = 0;
  double max_violation = -1e300;
  for (int i = 0; i < 500; ++i) {
    const Dims d = dims[i % dims.size()];
    const auto rho = random_separable(d, 1 + static_cast<std::size_t>(i % 7), 90000 + i);
    for (const auto& c : panel) {
      const auto v = evaluate(rho, c);
      ++evaluations;
      max_violation = std::max(max_violation, v.violation);
      if (v.entangled()) {
        ++false_positives;
        check.expect(false, describe(c) + " flagged separable state #" + std::to_string(i));
      }
    }
  }
  std::ostringstream s;
  s << evaluations << " verdicts on 500 separable states, " << false_positives
    << " Entangled, max violation " << max_violation;
  check.note(s.str());
  return {8, "Soundness on random separable states", check.ok(), check.detail(), 0};
}

// 9 -------------------------------------------------------------------------
inline Result bloch_round_trip() {
  detail::Checker check;
  double worst = 0.0;
  int count = 0;
  for (const Dims d : detail::property_dims())
    for (int i = 0; i < 50; ++i) {
      const auto rho = random_density(d, 1 + i % d.total(), 300 + 50 * count + i);
      const auto back = reconstruct(decompose(rho));
      worst = std::max(worst, (back.matrix() - rho.matrix()).cwiseAbs().maxCoeff());
    }
  std::ostringstream s;
  s << "max |reconstruct(decompose(rho)) - rho| over 200 states = " << worst << " (limit 1e-12)";
  check.expect(worst < 1e-12, s.str());
  check.note(s.str());

  double worst_gram = 0.0;
  for (std::size_t dim = 2; dim <= 6; ++dim) {
    const auto& g = *generators(dim);
    for (std::size_t i = 0; i < g.size(); ++i) {
      worst_gram = std::max(worst_gram, std::abs(g[i].trace()));
      for (std::size_t j = 0; j < g.size(); ++j) {
        const double expected = i == j ? 2.0 : 0.0;
        worst_gram = std::max(worst_gram, std::abs(trace_of_product(g[i], g[j]) - expected));
      }
    }
  }
  std::ostringstream t;
  t << "max |Tr(g_i g_j) - 2 delta_ij| for d <= 6 = " << worst_gram << " (limit 1e-12)";
  check.expect(worst_gram <= 1e-12, t.str());
  check.note(t.str());
  return {9, "Bloch round trip and generator orthogonality", check.ok(), check.detail(), 0};
}

/// |a3| + sqrt(l+) + sqrt(l-) for the two-qubit family with alpha = beta =
/// (1,1), a = sqrt2 x, b = sqrt2 y. Equals the theorem3 norm divided by 4.
inline double ex4_closed_form(double a1, double a2, double a3, double x, double y) {
  const double sum = std::pow(1 + a1 - a2, 2) + a2 * a2 * x * x + a1 * a1 * y * y + x * x * y * y;
  const double disc = sum * sum - 4 * std::pow(1 + a1, 2) * std::pow(1 - a2, 2) * x * x * y * y;
  const double root = std::sqrt(std::max(disc, 0.0));
  const double plus = (sum + root) / 8.0;
  const double minus = std::max((sum - root) / 8.0, 0.0);
  return std::abs(a3) + std::sqrt(plus) + std::sqrt(minus);
}

/// Right-hand side sqrt((1+x^2)/2) sqrt((1+y^2)/2) of the same inequality.
inline double ex4_closed_bound(double x, double y) {
  return std::sqrt((1 + x * x) / 2) * std::sqrt((1 + y * y) / 2);
}

/// Random (a1, a2, a3) making the two-qubit family positive semidefinite.
inline std::tuple<double, double, double> random_ex4_parameters(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const double a1 = -1.0 + 2.0 * unit(rng);
  const double a2 = a1 + (1.0 - a1) * unit(rng);
  const double cap = std::sqrt((1 + a1) * (1 - a2));
  const double a3 = cap * (2.0 * unit(rng) - 1.0);
  return {a1, a2, a3};
}

// 10 ------------------------------------------------------------------------
inline Result two_qubit_theorem3_closed_form() {
  detail::Checker check;
  std::mt19937_64 rng(44);
  const RealVector ones = RealVector::Ones(2);
  double worst_lhs = 0.0, worst_bound = 0.0;
  for (int i = 0; i < 50; ++i) {
    const auto [a1, a2, a3] = random_ex4_parameters(rng);
    const auto bd = decompose(two_qubit_ex4(a1, a2, a3));
    for (auto [x, y] : {std::pair{1.0, 1.0}, std::pair{2.0, 3.0}, std::pair{10.0, 10.0}}) {
      const auto v = theorem3(bd, std::sqrt(2.0) * x, std::sqrt(2.0) * y, ones, ones);
      worst_lhs = std::max(worst_lhs, std::abs(v.lhs / 4.0 - ex4_closed_form(a1, a2, a3, x, y)));
      worst_bound = std::max(worst_bound, std::abs(v.bound / 4.0 - ex4_closed_bound(x, y)));
    }
  }
  std::ostringstream s, t;
  s << "max |lhs/4 - (|a3| + sqrt(l+) + sqrt(l-))| = " << worst_lhs << " (limit 1e-8)";
  t << "max |bound/4 - sqrt((1+x^2)/2) sqrt((1+y^2)/2)| = " << worst_bound << " (limit 1e-8)";
  check.expect(worst_lhs <= 1e-8, s.str());
  check.expect(worst_bound <= 1e-8, t.str());
  check.note(s.str());
  check.note(t.str());
  return {10, "two-qubit theorem3 closed form", check.ok(), check.detail(), 0};
}

// ---------------------------------------------------------------------------

inline const std::vector<std::function<Result()>>& items() {
  static const std::vector<std::function<Result()>> all{
      bound2x4_theorem1_threshold, weight_norm_invariance, two_qubit_closed_form, bound2x4_theorem3_threshold,
      horodecki_threshold, isotropic_thresholds,      structural_identities, soundness,
      bloch_round_trip,   two_qubit_theorem3_closed_form,
  };
  return all;
}

/// Runs item `id` (1-based), timing it and converting stray exceptions into
/// a failure.
inline Result run(int id) {
  const auto& all = items();
  if (id < 1 || id > static_cast<int>(all.size()))
    throw InvalidInput("acceptance item must be in 1.." + std::to_string(all.size()));
  const auto start = std::chrono::steady_clock::now();
  Result r;
  try {
    r = all[static_cast<std::size_t>(id - 1)]();
  } catch (const std::exception& e) {
    r = {id, "item " + std::to_string(id), false, std::string("exception: ") + e.what(), 0};
  }
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return r;
}

inline std::vector<Result> run_all() {
  std::vector<Result> out;
  for (int id = 1; id <= static_cast<int>(items().size()); ++id) out.push_back(run(id));
  return out;
}

inline void print(std::ostream& out, const Result& r) {
  out << (r.passed ? "[PASS] " : "[FAIL] ") << std::setw(2) << r.id << "  " << r.title << "  ("
      << std::fixed << std::setprecision(2) << r.seconds << " s)\n"
      << std::defaultfloat << "        " << r.detail << '\n';
}

}  // namespace sepdetect::acceptance

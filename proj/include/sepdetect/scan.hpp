#pragma once

// Parameter sweeps and detection-threshold search along a StateFamily.

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstddef>
#include <iomanip>
#include <locale>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "sepdetect/criteria.hpp"
#include "sepdetect/errors.hpp"
#include "sepdetect/states.hpp"

namespace sepdetect {

/// A state could not be produced or judged at some parameter value.
class ScanError : public std::runtime_error {
 public:
  ScanError(double parameter, const std::string& what)
      : std::runtime_error(what), parameter_(parameter) {}
  double parameter() const noexcept { return parameter_; }

 private:
  double parameter_;
};

/// Both ends of a threshold bracket received the same decision.
class NoThresholdError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct ScanRow {
  double param = 0.0;
  double lhs = 0.0;
  double bound = 0.0;
  double violation = 0.0;
  bool entangled = false;
};

struct ScanResult {
  std::string family;
  std::string criterion;
  std::string parameter;
  std::vector<ScanRow> rows;  // ordered by param
};

enum class Direction { DetectsAbove, DetectsBelow };

inline const char* to_string(Direction d) noexcept {
  return d == Direction::DetectsAbove ? "detects-above" : "detects-below";
}

struct Threshold {
  std::string criterion;
  std::string family;
  std::string parameter;
  double value = 0.0;
  double tolerance = 0.0;
  Direction direction = Direction::DetectsAbove;
  double lower = 0.0;  // final bracket
  double upper = 0.0;
  int iterations = 0;
};

inline constexpr double kDefaultThresholdTol = 1e-6;
inline constexpr int kMaxBisectionIterations = 60;

namespace detail {

inline Verdict judge_at(const StateFamily& family, const CriterionSpec& criterion, double value) {
  try {
    return evaluate(family(value), criterion);
  } catch (const std::exception& e) {
    std::ostringstream msg;
    msg.precision(12);
    msg << family.name << " at " << family.parameter << "=" << value << ": " << e.what();
    throw ScanError(value, msg.str());
  }
}

}  // namespace detail

/// Evaluates `criterion` on `steps` uniformly spaced parameter values,
/// endpoints included. Grid points are spread over `workers` threads
/// (0 = hardware concurrency); rows are keyed by grid index, so the output
/// does not depend on scheduling. The first failing grid point (lowest
/// index) is reported as a ScanError.
inline ScanResult sweep(const StateFamily& family, const CriterionSpec& criterion, double from,
                        double to, std::size_t steps, std::size_t workers = 0) {
  if (!(from < to)) throw InvalidInput("sweep: need from < to");
  if (steps < 2) throw InvalidInput("sweep: need at least 2 steps");

  ScanResult result{family.name, describe(criterion), family.parameter,
                    std::vector<ScanRow>(steps)};
  std::vector<std::optional<ScanError>> failures(steps);
  const double width = to - from;
  auto grid = [&](std::size_t i) {
    return i + 1 == steps ? to : from + width * static_cast<double>(i) / static_cast<double>(steps - 1);
  };

  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i = next++; i < steps; i = next++) {
      const double x = grid(i);
      try {
        const Verdict v = detail::judge_at(family, criterion, x);
        result.rows[i] = {x, v.lhs, v.bound, v.violation, v.entangled()};
      } catch (const ScanError& e) {
        failures[i] = e;
      }
    }
  };

  std::size_t n = workers ? workers : std::max(1u, std::thread::hardware_concurrency());
  n = std::min(n, steps);
  {
    std::vector<std::jthread> pool;
    pool.reserve(n - 1);
    for (std::size_t t = 1; t < n; ++t) pool.emplace_back(work);
    work();
  }

  for (auto& f : failures)
    if (f) throw *f;
  return result;
}

/// Bisects on the decision of `criterion` along `family` between `from` and
/// `to`, whose decisions must differ. Stops once the bracket is narrower than
/// `tol` (or after 60 halvings) and returns its midpoint. The family is
/// assumed to switch decision once in the interval; with several switches
/// one of them is returned.
inline Threshold threshold(const StateFamily& family, const CriterionSpec& criterion, double from,
                           double to, double tol = kDefaultThresholdTol) {
  if (!(tol > 0.0)) throw InvalidInput("threshold: tolerance must be positive");
  if (!(from < to)) throw InvalidInput("threshold: need from < to");

  const bool low_detects = detail::judge_at(family, criterion, from).entangled();
  const bool high_detects = detail::judge_at(family, criterion, to).entangled();
  if (low_detects == high_detects) {
    std::ostringstream msg;
    msg.precision(12);
    msg << "no threshold in range [" << from << ", " << to << "]: " << describe(criterion)
        << " is " << (low_detects ? "Entangled" : "Inconclusive") << " at both ends";
    throw NoThresholdError(msg.str());
  }

  double lo = from;
  double hi = to;
  int iterations = 0;
  while (hi - lo >= tol && iterations < kMaxBisectionIterations) {
    const double mid = 0.5 * (lo + hi);
    if (detail::judge_at(family, criterion, mid).entangled() == high_detects)
      hi = mid;
    else
      lo = mid;
    ++iterations;
  }
  Threshold t;
  t.criterion = describe(criterion);
  t.family = family.name;
  t.parameter = family.parameter;
  t.value = 0.5 * (lo + hi);
  t.tolerance = tol;
  t.direction = high_detects ? Direction::DetectsAbove : Direction::DetectsBelow;
  t.lower = lo;
  t.upper = hi;
  t.iterations = iterations;
  return t;
}

/// `param,lhs,bound,violation,entangled`, 12 significant digits,
/// independent of the global locale.
inline void write_csv(std::ostream& out, const ScanResult& result) {
  std::ostringstream buf;
  buf.imbue(std::locale::classic());
  buf << std::setprecision(12);
  buf << "param,lhs,bound,violation,entangled\n";
  for (const auto& row : result.rows)
    buf << row.param << ',' << row.lhs << ',' << row.bound << ',' << row.violation << ','
        << (row.entangled ? 1 : 0) << '\n';
  out << buf.str();
}

inline std::string to_csv(const ScanResult& result) {
  std::ostringstream out;
  write_csv(out, result);
  return out.str();
}

}  // namespace sepdetect

#include <gtest/gtest.h>

#include <locale>
#include <sstream>

#include "test_util.hpp"

namespace sepdetect {
namespace {

const CriterionSpec kPpt{CriterionKind::Ppt, {}};
const CriterionSpec kRealign{CriterionKind::Realignment, {}};

StateFamily failing_above(double limit) {
  return {"fragile", "t", 0.0, 1.0, [limit](double t) {
            if (t > limit) throw InvalidInput("out of domain");
            return isotropic(2, 2, t);
          }};
}

TEST(Sweep, GridIncludesEndpoints) {
  const auto r = sweep(isotropic_family(2, 3), kPpt, 0.0, 1.0, 11, 1);
  ASSERT_EQ(r.rows.size(), 11u);
  EXPECT_EQ(r.rows.front().param, 0.0);
  EXPECT_EQ(r.rows.back().param, 1.0);
  EXPECT_NEAR(r.rows[3].param, 0.3, 1e-15);
  EXPECT_EQ(r.parameter, "p");
  EXPECT_EQ(r.criterion, "ppt");
}

TEST(Sweep, PptFlipsAtOneQuarter) {
  const auto r = sweep(isotropic_family(2, 3), kPpt, 0.0, 1.0, 101, 2);
  for (const auto& row : r.rows) EXPECT_EQ(row.entangled, row.param > 0.25 + 1e-9) << row.param;
}

TEST(Sweep, RowsMatchPointEvaluations) {
  const auto f = bound_2x4_family(0.9);
  const auto r = sweep(f, kRealign, 0.1, 0.4, 7, 3);
  for (const auto& row : r.rows) {
    const auto v = realignment(f(row.param));
    EXPECT_EQ(row.lhs, v.lhs);
    EXPECT_EQ(row.bound, v.bound);
    EXPECT_EQ(row.violation, v.violation);
  }
}

TEST(Sweep, ConstantSeparableFamilyNeverDetects) {
  const auto f = constant_family("product", random_separable({2, 3}, 1, 5));
  for (const auto& row : sweep(f, kRealign, 0.0, 1.0, 20).rows) EXPECT_FALSE(row.entangled);
}

TEST(Sweep, WorkerCountDoesNotChangeOutput) {
  const auto f = horodecki_family(0.5);
  const auto one = to_csv(sweep(f, kRealign, 0.0, 1.0, 64, 1));
  for (std::size_t w : {2u, 3u, 8u, 100u}) EXPECT_EQ(to_csv(sweep(f, kRealign, 0.0, 1.0, 64, w)), one);
}

TEST(Sweep, RejectsBadGrid) {
  const auto f = isotropic_family(2, 2);
  EXPECT_THROW(sweep(f, kPpt, 0.5, 0.5, 10), InvalidInput);
  EXPECT_THROW(sweep(f, kPpt, 1.0, 0.0, 10), InvalidInput);
  EXPECT_THROW(sweep(f, kPpt, 0.0, 1.0, 1), InvalidInput);
}

TEST(Sweep, ReportsFirstFailingParameter) {
  for (std::size_t workers : {1u, 4u}) {
    try {
      sweep(failing_above(0.55), kPpt, 0.0, 1.0, 11, workers);
      FAIL();
    } catch (const ScanError& e) {
      EXPECT_NEAR(e.parameter(), 0.6, 1e-15);
      EXPECT_NE(std::string(e.what()).find("t=0.6"), std::string::npos) << e.what();
    }
  }
}

TEST(Threshold, IsotropicPpt) {
  // lhs = (4p - 1)/6, so the decision flips where that exceeds kDetectTol.
  const auto t = threshold(isotropic_family(2, 3), kPpt, 0.0, 1.0, 1e-9);
  EXPECT_NEAR(t.value, 0.25 + 1.5 * kDetectTol, 1e-9);
  EXPECT_EQ(t.direction, Direction::DetectsAbove);
  EXPECT_EQ(t.parameter, "p");
}

TEST(Threshold, Postconditions) {
  const auto f = isotropic_family(2, 3);
  const auto t = threshold(f, kRealign, 0.0, 1.0, 1e-7);
  EXPECT_LT(t.upper - t.lower, 1e-7);
  EXPECT_DOUBLE_EQ(t.value, 0.5 * (t.lower + t.upper));
  EXPECT_FALSE(realignment(f(t.lower)).entangled());
  EXPECT_TRUE(realignment(f(t.upper)).entangled());
  EXPECT_NEAR(t.value, 5.0 / 13.0, 1e-7);
  EXPECT_EQ(t.iterations, 24);
}

TEST(Threshold, DetectsBelow) {
  // Reversed parameterisation, lhs = (2 - 3t)/4.
  const StateFamily f{"reversed", "t", 0.0, 1.0, [](double t) { return isotropic(2, 2, 1.0 - t); }};
  const auto t = threshold(f, kPpt, 0.0, 1.0, 1e-9);
  EXPECT_EQ(t.direction, Direction::DetectsBelow);
  EXPECT_NEAR(t.value, 2.0 / 3.0 - 4.0 / 3.0 * kDetectTol, 1e-9);
}

TEST(Threshold, TighterToleranceRefines) {
  const auto f = isotropic_family(2, 3);
  const auto coarse = threshold(f, kRealign, 0.0, 1.0, 1e-3);
  const auto fine = threshold(f, kRealign, 0.0, 1.0, 1e-9);
  EXPECT_LE(fine.lower + 0.0, coarse.upper);
  EXPECT_GE(fine.upper, coarse.lower);
  EXPECT_GT(fine.iterations, coarse.iterations);
}

TEST(Threshold, IterationCap) {
  const auto t = threshold(isotropic_family(2, 3), kPpt, 0.0, 1.0, 1e-300);
  EXPECT_EQ(t.iterations, kMaxBisectionIterations);
}

TEST(Threshold, Errors) {
  const auto f = isotropic_family(2, 3);
  EXPECT_THROW(threshold(f, kPpt, 0.5, 1.0), NoThresholdError);
  EXPECT_THROW(threshold(f, kPpt, 0.0, 0.2), NoThresholdError);
  EXPECT_THROW(threshold(f, kPpt, 0.0, 1.0, 0.0), InvalidInput);
  EXPECT_THROW(threshold(f, kPpt, 1.0, 0.0), InvalidInput);
  EXPECT_THROW(threshold(failing_above(0.5), kPpt, 0.0, 1.0), ScanError);
}

TEST(Threshold, AgreesWithSweep) {
  const auto f = isotropic_family(2, 3);
  const auto r = sweep(f, kRealign, 0.3, 0.5, 201);
  const auto t = threshold(f, kRealign, 0.3, 0.5, 1e-8);
  for (const auto& row : r.rows)
    if (std::abs(row.param - t.value) > 1e-7) {
      EXPECT_EQ(row.entangled, row.param > t.value);
    }
}

TEST(Csv, Format) {
  const auto r = sweep(isotropic_family(2, 2), kPpt, 0.0, 1.0, 3, 1);
  EXPECT_EQ(to_csv(r),
            "param,lhs,bound,violation,entangled\n"
            "0,-0.25,0,-0.25,0\n"
            "0.5,0.125,0,0.125,1\n"
            "1,0.5,0,0.5,1\n");
}

struct CommaDecimal : std::numpunct<char> {
  char do_decimal_point() const override { return ','; }
};

TEST(Csv, IgnoresStreamLocale) {
  std::ostringstream out;
  out.imbue(std::locale(std::locale::classic(), new CommaDecimal));
  const auto r = sweep(isotropic_family(2, 2), kPpt, 0.0, 1.0, 3, 1);
  write_csv(out, r);
  EXPECT_EQ(out.str(), to_csv(r));
}

}  // namespace
}  // namespace sepdetect

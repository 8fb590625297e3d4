#include <gtest/gtest.h>

#include <random>

#include "reference.hpp"
#include "vva/error.hpp"
#include "vva/lp.hpp"

namespace vva {
namespace {

using ref::q;

LinearProgram textbook() {
  // max 3x + 5y  s.t.  x <= 4, 2y <= 12, 3x + 2y <= 18  ->  36 at (2, 6).
  LinearProgram lp(Sense::Maximize);
  const auto x = lp.add_column("x", 3);
  const auto y = lp.add_column("y", 5);
  lp.add_row("a", {{x, 1}}, 4);
  lp.add_row("b", {{y, 2}}, 12);
  lp.add_row("c", {{x, 3}, {y, 2}}, 18);
  return lp;
}

TEST(LpTest, SolvesTextbookProgramWithDuals) {
  for (PivotRule rule : {PivotRule::Bland, PivotRule::Dantzig}) {
    SolveOptions o;
    o.rule = rule;
    const LinearProgram lp = textbook();
    const LpCertificate c = solve(lp, o);
    ASSERT_EQ(c.status, LpStatus::Optimal);
    EXPECT_EQ(c.objective, 36);
    EXPECT_EQ(c.primal, (RationalVector{2, 6}));
    EXPECT_EQ(c.dual, (RationalVector{0, q("3/2"), 1}));
    EXPECT_TRUE(verify_certificate(lp, c));
  }
}

TEST(LpTest, NegativeRightHandSidesNeedPhaseOne) {
  // min x + y  s.t.  x + 2y >= 4, 3x + y >= 6  ->  14/5 at (8/5, 6/5).
  LinearProgram lp(Sense::Minimize);
  const auto x = lp.add_column("x", 1);
  const auto y = lp.add_column("y", 1);
  lp.add_row("r1", {{x, 1}, {y, 2}}, 4);
  lp.add_row("r2", {{x, 3}, {y, 1}}, 6);
  const LpCertificate c = solve(lp);
  ASSERT_EQ(c.status, LpStatus::Optimal);
  EXPECT_EQ(c.objective, q("14/5"));
  EXPECT_EQ(c.primal, (RationalVector{q("8/5"), q("6/5")}));
  EXPECT_EQ(c.dual, (RationalVector{q("2/5"), q("1/5")}));
}

TEST(LpTest, InfeasibleProgramCarriesFarkasWitness) {
  LinearProgram lp(Sense::Maximize);
  const auto x = lp.add_column("x", 1);
  lp.add_row("upper", {{x, 1}}, 1);
  lp.add_row("lower", {{x, -1}}, -2);  // x >= 2
  const LpCertificate c = solve(lp);
  ASSERT_EQ(c.status, LpStatus::Infeasible);
  ASSERT_EQ(c.witness.size(), 2u);
  // y A <= 0 and y b < 0.
  EXPECT_LE(c.witness[0] - c.witness[1], 0);
  EXPECT_LT(c.witness[0] * 1 + c.witness[1] * -2, 0);
  EXPECT_TRUE(verify_certificate(lp, c));
}

TEST(LpTest, UnboundedProgramCarriesRay) {
  LinearProgram lp(Sense::Maximize);
  const auto x = lp.add_column("x", 1);
  const auto y = lp.add_column("y", 0);
  lp.add_row("r", {{x, 1}, {y, -1}}, 1);
  const LpCertificate c = solve(lp);
  ASSERT_EQ(c.status, LpStatus::Unbounded);
  ASSERT_EQ(c.witness.size(), 2u);
  EXPECT_GT(c.witness[0], 0);
  EXPECT_LE(c.witness[0] - c.witness[1], 0);
  EXPECT_TRUE(verify_certificate(lp, c));
}

TEST(LpTest, BealeCyclingExampleTerminates) {
  // Beale's program cycles under the textbook largest-coefficient rule.
  LinearProgram lp(Sense::Maximize);
  const auto x1 = lp.add_column("x1", q("3/4"));
  const auto x2 = lp.add_column("x2", -150);
  const auto x3 = lp.add_column("x3", q("1/50"));
  const auto x4 = lp.add_column("x4", -6);
  lp.add_row("r1", {{x1, q("1/4")}, {x2, -60}, {x3, q("-1/25")}, {x4, 9}}, 0);
  lp.add_row("r2", {{x1, q("1/2")}, {x2, -90}, {x3, q("-1/50")}, {x4, 3}}, 0);
  lp.add_row("r3", {{x3, 1}}, 1);
  for (PivotRule rule : {PivotRule::Bland, PivotRule::Dantzig}) {
    SolveOptions o;
    o.rule = rule;
    o.stall_limit = 3;
    const LpCertificate c = solve(lp, o);
    ASSERT_EQ(c.status, LpStatus::Optimal);
    EXPECT_EQ(c.objective, q("1/20"));
  }
}

TEST(LpTest, DualOfIsAnInvolutionAndSharesTheOptimum) {
  const LinearProgram lp = textbook();
  const LinearProgram d = dual_of(lp);
  EXPECT_EQ(d.sense(), Sense::Minimize);
  EXPECT_EQ(d.columns(), lp.rows());
  EXPECT_EQ(d.rows(), lp.columns());
  EXPECT_EQ(solve(d).objective, 36);
  const LinearProgram dd = dual_of(d);
  EXPECT_EQ(dd.objective(), lp.objective());
  EXPECT_EQ(dd.rhs(), lp.rhs());
}

TEST(LpTest, RandomProgramsSatisfyStrongDuality) {
  std::mt19937_64 rng(20240611);
  for (int trial = 0; trial < 60; ++trial) {
    LinearProgram lp(Sense::Maximize);
    const std::size_t n = 2 + rng() % 4, m = 2 + rng() % 4;
    for (std::size_t j = 0; j < n; ++j) lp.add_column("x" + std::to_string(j), Rational(static_cast<long>(rng() % 7) - 2));
    for (std::size_t r = 0; r < m; ++r) {
      std::vector<LpEntry> row;
      for (std::size_t j = 0; j < n; ++j) row.push_back({j, Rational(static_cast<long>(rng() % 9) - 3)});
      lp.add_row("r" + std::to_string(r), std::move(row), Rational(static_cast<long>(rng() % 11) - 3));
    }
    const LpCertificate primal = solve(lp);
    const LpCertificate dual = solve(dual_of(lp));
    ASSERT_TRUE(verify_certificate(lp, primal));
    if (primal.status == LpStatus::Optimal) {
      ASSERT_EQ(dual.status, LpStatus::Optimal);
      EXPECT_EQ(primal.objective, dual.objective);
      EXPECT_EQ(dot(lp.rhs(), primal.dual), primal.objective);
    } else if (primal.status == LpStatus::Unbounded) {
      EXPECT_EQ(dual.status, LpStatus::Infeasible);
    }
  }
}

TEST(LpTest, TamperedCertificatesAreRejected) {
  const LinearProgram lp = textbook();
  LpCertificate c = solve(lp);
  c.primal[0] += 1;
  std::string why;
  EXPECT_FALSE(verify_certificate(lp, c, &why));
  EXPECT_FALSE(why.empty());
  c = solve(lp);
  c.dual[2] = 0;
  EXPECT_FALSE(verify_certificate(lp, c));
}

TEST(LpTest, RowsMergeDuplicatesAndRejectDuplicateLabels) {
  LinearProgram lp(Sense::Maximize);
  const auto x = lp.add_column("x", 1);
  lp.add_row("r", {{x, 1}, {x, 2}, {x, -3}}, 1);
  EXPECT_TRUE(lp.row(0).empty());
  EXPECT_THROW(lp.add_column("x", 0), Error);
  EXPECT_THROW(lp.add_row("r", {}, 0), Error);
  EXPECT_THROW(lp.add_row("bad", {{5, 1}}, 0), Error);
  EXPECT_THROW(lp.column_index("nope"), Error);
}

TEST(LpTest, LpFormatScalesRowsToIntegers) {
  LinearProgram lp(Sense::Maximize);
  const auto x = lp.add_column("x", q("1/2"));
  const auto y = lp.add_column("y", q("1/3"));
  lp.add_row("r", {{x, q("1/2")}, {y, q("2/3")}}, q("5/6"));
  const std::string text = to_lp_format(lp);
  EXPECT_NE(text.find("Maximize"), std::string::npos);
  EXPECT_NE(text.find("r0: 3 c0 + 4 c1 <= 5"), std::string::npos) << text;
  EXPECT_NE(text.find("obj: 3 c0 + 2 c1"), std::string::npos) << text;
}

}  // namespace
}  // namespace vva

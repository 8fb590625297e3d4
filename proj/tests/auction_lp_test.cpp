#include <gtest/gtest.h>

#include <random>

#include "reference.hpp"
#include "vva/auction_lp.hpp"
#include "vva/error.hpp"
#include "vva/oracles.hpp"

namespace vva {
namespace {

using ref::q;

std::vector<Instance> small_corpus() {
  std::vector<Instance> out;
  for (std::uint64_t seed = 1; seed <= 6; ++seed) {
    GenSpec g;
    g.buyers = 1 + seed % 3;
    g.items = 1 + seed % 2;
    g.support_size = 2;
    g.correlated = true;
    g.iid = seed % 2 == 0;
    out.push_back(gen_instance(g, seed));
  }
  return out;
}

TEST(AuctionLpTest, ProgramShapes) {
  const Instance inst = ref::uniform_single({1, 2}, 2);  // k = 3, P = 9
  const LinearProgram ds = build_dslp(inst);
  EXPECT_EQ(ds.columns(), 2u * 9 + 2u * 9);
  EXPECT_EQ(ds.rows(), 2u * 9 * 2 + 2u * 9 + 9);
  const LinearProgram b = build_blp(inst);
  EXPECT_EQ(b.columns(), ds.columns());
  EXPECT_EQ(b.rows(), 2u * 3 * 2 + 2u * 3 + 9);
  EXPECT_EQ(build_dual_dslp(inst).rows(), ds.columns());
  EXPECT_EQ(build_dual_blp(inst).columns(), b.rows());
  EXPECT_TRUE(ds.has_column(labels::x(inst, 1, 0, inst.profile_id({{2, 1}}))));
  EXPECT_EQ(labels::x(inst, 1, 0, inst.profile_id({{2, 1}})), "x[1,0,2.1]");
}

TEST(AuctionLpTest, SingleBuyerAnchorsMatchPostedPrice) {
  const Instance a = ref::uniform_single({1, 2});
  EXPECT_EQ(drev(a), 1);
  EXPECT_EQ(brev(a), 1);
  EXPECT_EQ(drev(a), ref::posted_price({0, 1, 2}, {0, q("1/2"), q("1/2")}));
  const Instance b = ref::uniform_single({1, 2, 3});
  EXPECT_EQ(drev(b), q("4/3"));
  EXPECT_EQ(brev(b), q("4/3"));
}

TEST(AuctionLpTest, SingleItemRevenueMatchesIronedMyerson) {
  for (std::uint64_t seed = 1; seed <= 12; ++seed) {
    GenSpec g;
    g.buyers = 1 + seed % 3;
    g.items = 1;
    g.support_size = 2 + seed % 2;
    g.max_value = 5;
    g.iid = seed % 3 != 0;
    const Instance inst = gen_instance(g, seed);
    const Rational expected = ref::myerson_revenue(inst);
    EXPECT_EQ(drev(inst), expected) << "seed " << seed;
    EXPECT_EQ(brev(inst), expected) << "seed " << seed;
  }
}

TEST(AuctionLpTest, FourProgramsAgree) {
  for (const Instance& inst : small_corpus()) {
    const LpCertificate ds = solve(build_dslp(inst));
    const LpCertificate dds = solve(build_dual_dslp(inst));
    const LpCertificate b = solve(build_blp(inst));
    const LpCertificate db = solve(build_dual_blp(inst));
    ASSERT_EQ(ds.status, LpStatus::Optimal);
    EXPECT_EQ(ds.objective, dds.objective);
    EXPECT_EQ(b.objective, db.objective);
    EXPECT_GE(b.objective, ds.objective);
  }
}

TEST(AuctionLpTest, ExtractedDualsMatchExplicitDualPrograms) {
  const Instance inst = small_corpus()[2];
  const DsSolution s = solve_ds(inst);
  const LinearProgram d = build_dual_dslp(inst);
  const DualSolutionDS explicit_dual = dual_from_dual_dslp(inst, d, solve(d));
  EXPECT_TRUE(explicit_dual.is_feasible(inst));
  EXPECT_EQ(explicit_dual.objective(), s.dual.objective());
  EXPECT_EQ(s.dual.objective(), s.cert.objective);
  EXPECT_EQ(s.mechanism.revenue(inst), s.cert.objective);

  const BayesSolution b = solve_bayes(inst);
  const LinearProgram db = build_dual_blp(inst);
  const DualSolutionBayes explicit_bayes = dual_from_dual_blp(inst, db, solve(db));
  EXPECT_TRUE(explicit_bayes.is_feasible(inst));
  EXPECT_EQ(explicit_bayes.objective(), b.cert.objective);
  EXPECT_EQ(b.mechanism.form, Form::Bayesian);
}

TEST(AuctionLpTest, ExtractionRejectsForeignPrograms) {
  const Instance inst = ref::uniform_single({1, 2});
  const LinearProgram d = build_dual_dslp(inst);
  const LpCertificate c = solve(d);
  try {
    extract_mechanism(inst, d, c, Form::DS);
    FAIL() << "expected LabelMismatch";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::LabelMismatch);
  }
  const Instance other = ref::uniform_single({1, 2}, 2);
  EXPECT_THROW(extract_dual_ds(other, build_dslp(inst), solve(build_dslp(inst))), Error);
}

RationalVector value_or_off(const Instance& inst, std::size_t i, std::mt19937_64& rng, bool off) {
  return off ? ref::off_support_vector(inst, i, rng) : inst.value(i, rng() % inst.support_size(i));
}

TEST(AuctionLpTest, DominantStrategyExtensionHasNoProfitableDeviation) {
  std::mt19937_64 rng(7);
  for (const Instance& inst : small_corpus()) {
    const Mechanism mech = solve_ds(inst).mechanism;
    const std::size_t n = inst.buyers();
    for (int t = 0; t < 20; ++t) {
      std::vector<RationalVector> v(n);
      const std::size_t forced = rng() % n;
      for (std::size_t i = 0; i < n; ++i) v[i] = value_or_off(inst, i, rng, i == forced || rng() % 3 == 0);
      const ExtendedOutcome truth = extend_ds(inst, mech, v);
      for (std::size_t j = 0; j < inst.items(); ++j) {
        Rational s = 0;
        for (std::size_t i = 0; i < n; ++i) s += truth.alloc[i][j];
        EXPECT_LE(s, 1);
      }
      for (std::size_t i = 0; i < n; ++i) {
        const Rational u = dot(v[i], truth.alloc[i]) - truth.pay[i];
        EXPECT_GE(u, 0);
        for (std::size_t d = 0; d < inst.support_size(i); ++d) {
          auto lie = v;
          lie[i] = inst.value(i, d);
          const ExtendedOutcome dev = extend_ds(inst, mech, lie);
          EXPECT_GE(u, dot(v[i], dev.alloc[i]) - dev.pay[i]);
        }
      }
    }
  }
}

TEST(AuctionLpTest, ExtensionAgreesWithMechanismOnSupport) {
  const Instance inst = small_corpus()[1];
  const Mechanism mech = solve_ds(inst).mechanism;
  for (ProfileId p = 0; p < inst.profile_count(); ++p) {
    std::vector<RationalVector> v;
    for (std::size_t i = 0; i < inst.buyers(); ++i) v.push_back(inst.value(i, inst.type_of(p, i)));
    const ExtendedOutcome out = extend_ds(inst, mech, v);
    for (std::size_t i = 0; i < inst.buyers(); ++i) {
      EXPECT_FALSE(out.excluded[i]);
      EXPECT_EQ(out.pay[i], mech.payment(p, i));
    }
  }
}

TEST(AuctionLpTest, BayesianExtensionHasNoProfitableInterimDeviation) {
  std::mt19937_64 rng(11);
  for (const Instance& inst : small_corpus()) {
    const Mechanism mech = solve_bayes(inst).mechanism;
    for (int t = 0; t < 20; ++t) {
      std::vector<RationalVector> v;
      for (std::size_t i = 0; i < inst.buyers(); ++i) v.push_back(value_or_off(inst, i, rng, rng() % 2 == 0));
      const InterimOutcome out = extend_bayes(inst, mech, v);
      for (std::size_t i = 0; i < inst.buyers(); ++i) {
        const Rational u = dot(v[i], out.alloc[i]) - out.pay[i];
        EXPECT_GE(u, 0);
        for (std::size_t d = 0; d < inst.support_size(i); ++d) {
          const Rational dev = dot(v[i], interim_allocation(inst, mech, i, d)) - interim_payment(inst, mech, i, d);
          EXPECT_GE(u, dev);
        }
      }
    }
  }
}

TEST(AuctionLpTest, FindType) {
  const Instance inst = ref::uniform_single({1, 2});
  EXPECT_EQ(find_type(inst, 0, {Rational(2)}), 2u);
  EXPECT_FALSE(find_type(inst, 0, {Rational(5)}).has_value());
}

}  // namespace
}  // namespace vva

#include <gtest/gtest.h>

#include "reference.hpp"
#include "vva/auction_lp.hpp"
#include "vva/error.hpp"
#include "vva/oracles.hpp"

namespace vva {
namespace {

using ref::q;

Instance two_items_uniform() {
  // One buyer, values uniform on {1, 2} for each item independently.
  std::vector<RationalVector> support;
  RationalVector probs;
  for (long a : {1, 2}) {
    for (long b : {1, 2}) {
      support.push_back({Rational(a), Rational(b)});
      probs.push_back(q("1/4"));
    }
  }
  return ref::make({support}, {probs});
}

TEST(PostedPriceTest, Anchors) {
  EXPECT_EQ(posted_price_revenue(item_marginal(ref::uniform_single({1, 2}), 0, 0)), 1);
  EXPECT_EQ(posted_price_revenue(item_marginal(ref::uniform_single({1, 2, 3}), 0, 0)), q("4/3"));
  EXPECT_EQ(posted_price_revenue({{q("1"), q("5")}, {q("1/2"), q("1/2")}}), q("5/2"));
}

TEST(PostedPriceTest, MarginalSumsEqualValues) {
  const Marginal m = item_marginal(two_items_uniform(), 0, 1);
  EXPECT_EQ(m.values, (RationalVector{0, 1, 2}));
  EXPECT_EQ(m.probs, (RationalVector{0, q("1/2"), q("1/2")}));
}

TEST(ThresholdAuctionTest, IsFeasibleAndBoundedByDrev) {
  for (std::uint64_t seed = 1; seed <= 8; ++seed) {
    GenSpec g;
    g.buyers = 1 + seed % 3;
    g.support_size = 3;
    g.max_value = 4;
    const Instance inst = gen_instance(g, seed);
    const Rational t = threshold_auction_revenue(inst);
    EXPECT_LE(t, drev(inst));
    if (inst.buyers() == 1) EXPECT_EQ(t, posted_price_revenue(item_marginal(inst, 0, 0)));
    EXPECT_TRUE(is_feasible(inst, threshold_auction(inst, Rational(1))));
  }
  try {
    threshold_auction_revenue(two_items_uniform());
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::DimensionMismatch);
  }
}

TEST(ThresholdAuctionTest, SecondPriceWithTies) {
  const Instance inst = ref::uniform_single({1, 2}, 2);
  const Mechanism m = threshold_auction(inst, Rational(1));
  const ProfileId tie = inst.profile_id({{2, 2}});
  EXPECT_EQ(m.x(tie, 0, 0), q("1/2"));
  EXPECT_EQ(m.payment(tie, 0), 1);
  const ProfileId split = inst.profile_id({{2, 1}});
  EXPECT_EQ(m.x(split, 0, 0), 1);
  EXPECT_EQ(m.payment(split, 0), q("3/2"));  // (1/2)(1) + (1/2)(2) - 0
}

TEST(MenuGridTest, IntegralGridWithOneItemIsPostedPrice) {
  const Instance inst = ref::uniform_single({1, 2, 3});
  EXPECT_EQ(menu_grid_revenue(inst, 1), q("4/3"));
}

TEST(MenuGridTest, RefinedGridsNeverLoseRevenue) {
  const Instance inst = two_items_uniform();
  const Rational r1 = menu_grid_revenue(inst, 1);
  const Rational r2 = menu_grid_revenue(inst, 2);
  const Rational r4 = menu_grid_revenue(inst, 4);
  EXPECT_LE(r1, r2);
  EXPECT_LE(r2, r4);
  EXPECT_LE(r4, drev(inst));
  // The grand bundle at price 3 is on every grid.
  EXPECT_GE(r1, ref::bundle_revenue(inst, Rational(3)));
  EXPECT_EQ(ref::bundle_revenue(inst, Rational(3)), q("9/4"));
}

TEST(MenuGridTest, LimitsAndShape) {
  const Instance inst = two_items_uniform();
  MenuGridLimits tight;
  tight.support_grid_cap = 4;
  try {
    menu_grid_revenue(inst, 4, tight);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::ScaleLimit);
  }
  EXPECT_THROW(menu_grid_revenue(ref::uniform_single({1, 2}, 2), 1), Error);
}

TEST(GenInstanceTest, DeterministicAndWellFormed) {
  GenSpec g;
  g.buyers = 3;
  g.items = 2;
  g.support_size = 2;
  g.value_denominator = 2;
  const Instance a = gen_instance(g, 42);
  EXPECT_EQ(a.digest(), gen_instance(g, 42).digest());
  EXPECT_NE(a.digest(), gen_instance(g, 43).digest());
  EXPECT_TRUE(a.is_iid());
  for (std::size_t i = 0; i < a.buyers(); ++i) {
    Rational total = 0;
    for (std::size_t t = 0; t < a.support_size(i); ++t) total += a.prob(i, t);
    EXPECT_EQ(total, 1);
    EXPECT_TRUE(a.zero_type(i).has_value());
  }
  g.iid = false;
  g.correlated = true;
  EXPECT_EQ(gen_instance(g, 5).digest(), gen_instance(g, 5).digest());
  g.max_profiles = 8;
  EXPECT_THROW(gen_instance(g, 5), Error);
}

}  // namespace
}  // namespace vva

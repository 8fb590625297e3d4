#include <gtest/gtest.h>

#include <functional>

#include "reference.hpp"
#include "vva/dual.hpp"
#include "vva/error.hpp"
#include "vva/mechanism.hpp"

namespace vva {
namespace {

using ref::q;

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no vva::Error thrown";
  return ErrorCode::SolverFailure;
}

TEST(RationalTest, ParsesAndCanonicalizes) {
  EXPECT_EQ(q("6/8"), ratio(3, 4));
  EXPECT_EQ(to_string(q("6/8")), "3/4");
  EXPECT_EQ(to_string(q("-4/2")), "-2");
  EXPECT_EQ(to_string(q("+7")), "7");
  EXPECT_EQ(to_string(ratio(10, -4)), "-5/2");
}

TEST(RationalTest, RejectsMalformedText) {
  for (const char* bad : {"", "1/0", "1/-2", "a", "1.5", "1//2", "1/ 2"}) {
    EXPECT_EQ(code_of([&] { parse_rational(bad); }), ErrorCode::ParseError) << bad;
  }
}

TEST(RationalTest, DotChecksDimensions) {
  EXPECT_EQ(dot({q("1/2"), q("2")}, {q("2"), q("1/4")}), q("3/2"));
  EXPECT_EQ(code_of([] { dot({q("1")}, {q("1"), q("2")}); }), ErrorCode::DimensionMismatch);
}

RawInstance raw_single(std::vector<RationalVector> support, RationalVector probs) {
  RawInstance raw;
  raw.buyers = 1;
  raw.items = support.front().size();
  raw.supports = {std::move(support)};
  raw.probs = {std::move(probs)};
  return raw;
}

TEST(InstanceTest, ValidationNamesTheViolatedInvariant) {
  EXPECT_EQ(code_of([] { validate_instance(raw_single({{q("0")}, {q("1")}}, {q("1/2"), q("1/3")})); }),
            ErrorCode::NonUnitMass);
  EXPECT_EQ(code_of([] { validate_instance(raw_single({{q("0")}, {q("-1")}}, {q("1/2"), q("1/2")})); }),
            ErrorCode::NegativeValue);
  EXPECT_EQ(code_of([] { validate_instance(raw_single({{q("0")}, {q("1")}}, {q("3/2"), q("-1/2")})); }),
            ErrorCode::NegativeMass);
  EXPECT_EQ(code_of([] { validate_instance(raw_single({{q("1")}, {q("1")}}, {q("1/2"), q("1/2")})); }),
            ErrorCode::DuplicateSupportVector);
  EXPECT_EQ(code_of([] { validate_instance(raw_single({{q("1")}, {q("2")}}, {q("1/2"), q("1/2")})); }),
            ErrorCode::MissingZeroType);
  EXPECT_EQ(code_of([] { validate_instance(raw_single({{q("0")}, {q("1"), q("2")}}, {q("1/2"), q("1/2")})); }),
            ErrorCode::DimensionMismatch);
  ValidationOptions strict;
  strict.strict_positive_mass = true;
  EXPECT_EQ(code_of([&] {
              validate_instance(raw_single({{q("0")}, {q("1")}, {q("2")}}, {q("1/2"), q("1/2"), q("0")}), strict);
            }),
            ErrorCode::ZeroMassNonzeroType);
}

TEST(InstanceTest, AugmentationPrependsZeroAtMassZero) {
  ValidationOptions options;
  options.augment_zero = true;
  const Instance inst = validate_instance(raw_single({{q("1")}, {q("2")}}, {q("1/2"), q("1/2")}), options);
  ASSERT_EQ(inst.support_size(0), 3u);
  EXPECT_EQ(inst.zero_type(0), 0u);
  EXPECT_EQ(inst.prob(0, 0), 0);
  EXPECT_EQ(inst.value(0, 2, 0), 2);
}

TEST(InstanceTest, ProfileIndexingIsRowMajorWithBuyerZeroMostSignificant) {
  const Instance inst = ref::make({{{q("1")}, {q("2")}}, {{q("1")}, {q("2")}, {q("3")}}},
                                  {{q("1/4"), q("3/4")}, {q("1/3"), q("1/3"), q("1/3")}});
  ASSERT_EQ(inst.profile_count(), 12u);  // 3 x 4 with the zero types
  for (ProfileId p = 0; p < inst.profile_count(); ++p) {
    const ProfileIndex idx = inst.profile_index(p);
    EXPECT_EQ(p, idx.index[0] * 4 + idx.index[1]);
    EXPECT_EQ(inst.profile_id(idx), p);
    EXPECT_EQ(inst.mass(p), profile_prob(inst, idx));
    EXPECT_EQ(inst.others_mass(p, 0), inst.prob(1, idx.index[1]));
    EXPECT_EQ(inst.others_mass(p, 1), inst.prob(0, idx.index[0]));
    EXPECT_EQ(inst.type_of(inst.with_type(p, 1, 2), 1), 2u);
    EXPECT_EQ(inst.type_of(inst.with_type(p, 1, 2), 0), idx.index[0]);
  }
  EXPECT_EQ(inst.profile_label(inst.profile_id({{2, 1}})), "2.1");
  EXPECT_EQ(inst.others_keys(0).size(), 4u);
  EXPECT_EQ(inst.others_keys(1).size(), 3u);
}

TEST(InstanceTest, DigestIsStableAndSensitive) {
  const Instance a = ref::uniform_single({1, 2});
  const Instance b = ref::uniform_single({1, 2});
  const Instance c = ref::uniform_single({1, 3});
  EXPECT_EQ(a.digest(), b.digest());
  EXPECT_NE(a.digest(), c.digest());
  EXPECT_EQ(validate_instance(a.to_raw()).digest(), a.digest());
}

TEST(InstanceTest, IidDetection) {
  EXPECT_TRUE(ref::uniform_single({1, 2}, 3).is_iid());
  const Instance mixed = ref::make({{{q("1")}}, {{q("2")}}}, {{q("1")}, {q("1")}});
  EXPECT_FALSE(mixed.is_iid());
}

TEST(MechanismTest, SupplyUtilityAndRevenue) {
  const Instance inst = ref::uniform_single({1, 2}, 2);
  Mechanism mech = Mechanism::zero(inst, Form::DS);
  const ProfileId p = inst.profile_id({{2, 1}});
  mech.x(p, 0, 0) = q("3/4");
  mech.x(p, 1, 0) = q("1/4");
  mech.payment(p, 0) = 1;
  EXPECT_EQ(mech.supply(p, 0), 1);
  EXPECT_EQ(mech.utility(inst.value(0, 2), p, 0), q("1/2"));
  EXPECT_EQ(mech.revenue(inst), inst.mass(p));
}

TEST(MechanismTest, SlacksFlagIncentiveViolations) {
  const Instance inst = ref::uniform_single({1, 2});
  Mechanism mech = Mechanism::zero(inst, Form::DS);
  // Type 2 pays 2 for the item while type 1 gets it for 1: type 2 deviates.
  mech.x(1, 0, 0) = 1;
  mech.payment(1, 0) = 1;
  mech.x(2, 0, 0) = 1;
  mech.payment(2, 0) = 2;
  const PrimalSlacks s = mechanism_slacks(inst, mech);
  const std::size_t k = 3;
  EXPECT_EQ(s.a[0][2 * k + 1], -1);
  EXPECT_FALSE(s.all_nonnegative());
  std::vector<std::string> why;
  EXPECT_FALSE(is_feasible(inst, mech, &why));
  EXPECT_FALSE(why.empty());
  mech.payment(2, 0) = 1;
  EXPECT_TRUE(is_feasible(inst, mech));
}

TEST(MechanismTest, OverAllocationIsInfeasible) {
  const Instance inst = ref::uniform_single({1}, 2);
  Mechanism mech = Mechanism::zero(inst, Form::DS);
  const ProfileId p = inst.profile_id({{1, 1}});
  mech.x(p, 0, 0) = q("2/3");
  mech.x(p, 1, 0) = q("2/3");
  EXPECT_LT(mechanism_slacks(inst, mech).c[0][p], 0);
  EXPECT_FALSE(is_feasible(inst, mech));
}

TEST(MechanismTest, BayesianSlacksAverageOverOpponents) {
  const Instance inst = ref::uniform_single({1}, 2);  // types {0, 1}, mass {0, 1}
  Mechanism mech = Mechanism::zero(inst, Form::Bayesian);
  // Buyer 0 with value 1 wins only against a zero opponent, which never occurs.
  mech.x(inst.profile_id({{1, 0}}), 0, 0) = 1;
  mech.payment(inst.profile_id({{1, 0}}), 0) = 5;
  EXPECT_TRUE(is_feasible(inst, mech));
  mech.payment(inst.profile_id({{1, 1}}), 0) = 1;
  EXPECT_FALSE(is_feasible(inst, mech));
}

TEST(DualTest, ZeroDualObjectiveAndSlacks) {
  const Instance inst = ref::uniform_single({1, 2});
  DualSolutionDS d = DualSolutionDS::zero(inst);
  d.update_slacks(inst);
  EXPECT_EQ(d.objective(), 0);
  // psi = 0 < mu at positive-mass profiles.
  EXPECT_FALSE(d.is_feasible(inst));
  for (ProfileId p = 0; p < inst.profile_count(); ++p) d.eta[0][p] = inst.mass(p);
  for (ProfileId p = 0; p < inst.profile_count(); ++p) d.xi[0][p] = inst.mass(p) * inst.value(0, p, 0);
  EXPECT_TRUE(d.is_feasible(inst));
  EXPECT_EQ(d.objective(), q("3/2"));
}

}  // namespace
}  // namespace vva

#include <gtest/gtest.h>

#include "reference.hpp"
#include "vva/error.hpp"
#include "vva/io.hpp"

namespace vva {
namespace {

using ref::q;

TEST(IoTest, InstanceRoundTrip) {
  const Instance inst = ref::make({{{q("1/2"), q("1")}, {q("2"), q("0")}}}, {{q("1/3"), q("2/3")}});
  const Json doc = instance_to_json(inst);
  EXPECT_EQ(validate_instance(raw_instance_from_json(doc)).digest(), inst.digest());
  const Json parsed = Json::parse(R"({"buyers":1,"items":1,"supports":[[[0],["3/2"]]],"probs":[["1/4",  "3/4"]]})");
  const Instance small = validate_instance(raw_instance_from_json(parsed));
  EXPECT_EQ(small.value(0, 1, 0), q("3/2"));
}

TEST(IoTest, MalformedInstancesAreRejected) {
  EXPECT_THROW(raw_instance_from_json(Json::parse(R"({"buyers":1})")), Error);
  EXPECT_THROW(raw_instance_from_json(Json::parse(R"({"buyers":1,"items":1,"supports":[[[0.5]]],"probs":[["1"]]})")),
               Error);
}

TEST(IoTest, CertificatesVerifyAndDetectTampering) {
  const Instance inst = ref::uniform_single({1, 2, 3}, 2);
  const Json ds = certificate_json(inst, solve_ds(inst));
  EXPECT_TRUE(verify_certificate_json(ds).ok());
  const Json bic = certificate_json(inst, solve_bayes(inst));
  EXPECT_TRUE(verify_certificate_json(bic).ok());

  Json wrong_objective = ds;
  wrong_objective["objective"] = "100";
  EXPECT_FALSE(verify_certificate_json(wrong_objective).ok());

  Json wrong_primal = ds;
  for (auto& [label, value] : wrong_primal["primal"].items()) {
    if (label.rfind("p[", 0) == 0) {
      value = "1000";
      break;
    }
  }
  EXPECT_FALSE(verify_certificate_json(wrong_primal).ok());

  Json wrong_dual = bic;
  wrong_dual["dual"]["bogus[0]"] = "1";
  EXPECT_FALSE(verify_certificate_json(wrong_dual).ok());

  Json wrong_digest = ds;
  wrong_digest["digest"] = "0";
  EXPECT_FALSE(verify_certificate_json(wrong_digest).ok());

  EXPECT_FALSE(verify_certificate_json(Json::parse(R"({"format":"other"})")).ok());
}

TEST(IoTest, DualsRoundTrip) {
  const Instance inst = ref::uniform_single({1, 2}, 2);
  const DsSolution s = solve_ds(inst);
  EXPECT_EQ(dual_ds_from_json(inst, dual_to_json(inst, s.dual)).objective(), s.dual.objective());
  const BayesSolution b = solve_bayes(inst);
  EXPECT_EQ(dual_bayes_from_json(inst, dual_to_json(inst, b.dual)).objective(), b.dual.objective());
  EXPECT_EQ(mechanism_from_json(inst, mechanism_to_json(inst, s.mechanism), Form::DS).revenue(inst),
            s.mechanism.revenue(inst));
}

}  // namespace
}  // namespace vva

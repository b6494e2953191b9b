#include <algorithm>

#include <gtest/gtest.h>

#include "abcover/catalog.hpp"
#include "abcover/resolve.hpp"
#include "abcover/search.hpp"

using namespace abcover;

namespace {

BuildingData entry_data(std::string_view name) { return load_entry(name).doc.data; }

std::string source_of(const std::string& plan_name) { return plan_name.substr(0, plan_name.find("_to_")); }

GroupElement g(const char* bits) { return GroupElement::parse(bits); }

}  // namespace

TEST(BlowupPlan, RejectsDegeneratePoints) {
  EXPECT_THROW(BlowupPlan({PlanPoint{"P", {{"C_1", 1}}, std::nullopt}}), std::invalid_argument);
  EXPECT_THROW(BlowupPlan({PlanPoint{"P", {{"C_1", 1}, {"f_21", 1}}, std::nullopt}}), std::invalid_argument);
  EXPECT_THROW(BlowupPlan({PlanPoint{"P", {{"C_1", 0}, {"f_21", 3}}, std::nullopt}}), std::invalid_argument);
  EXPECT_THROW(BlowupPlan({PlanPoint{"P", {{"C_1", 1}, {"C_1", 2}}, std::nullopt}}), std::invalid_argument);
  const PlanPoint ok{"P", {{"C_1", 1}, {"C_2", 1}, {"f_21", 1}}, std::nullopt};
  EXPECT_THROW(BlowupPlan({ok, ok}), std::invalid_argument);
  EXPECT_NO_THROW(BlowupPlan({ok}));
}

TEST(BlowupPlan, WithFixesNeedsOnePerPoint) {
  const BlowupPlan plan({PlanPoint{"P", {{"C_1", 1}, {"C_2", 1}, {"f_21", 1}}, std::nullopt}});
  EXPECT_THROW(plan.with_fixes({}), std::invalid_argument);
  EXPECT_EQ(plan.with_fixes({g("101")}).points()[0].fix, g("101"));
}

TEST(SurfaceBlowup, Degrees) {
  const auto plan = load_plan("d14q0_to_d10q0").plan;
  const SurfaceBlowup b = blow_up_surface(SurfaceContext(2), plan);
  EXPECT_EQ(b.source().degree(), 7);
  EXPECT_EQ(b.target().degree(), 5);
  EXPECT_EQ(b.new_points(), 2);
  EXPECT_EQ(b.exceptional(0), DivClass::exceptional(4, 3));
  EXPECT_EQ(b.exceptional(1), DivClass::exceptional(4, 4));
  const DivClass C = parse_class(2, "l + f1");
  const DivClass strict = b.strict_transform(C, {1, 1});
  EXPECT_EQ(strict, DivClass(4, 2, {1, 0, 1, 1}));
  EXPECT_EQ(pairing(strict, strict), pairing(C, C) - 2);
  EXPECT_EQ(b.blow_down(strict), C);
  EXPECT_THROW(b.strict_transform(C, {1}), std::invalid_argument);
}

TEST(SurfaceBlowup, BeyondFourPointsIsUnsupported) {
  const auto plan = load_plan("d14q0_to_d10q0").plan;
  EXPECT_THROW(blow_up_surface(SurfaceContext(3), plan), unsupported_error);
  EXPECT_THROW(transform_building_data(entry_data("d10q0"), BlowupPlan({plan.points()[0]})), unsupported_error);
}

TEST(Transform, EmptyPlanIsIdentity) {
  const BuildingData data = entry_data("d14q1");
  const BuildingData out = transform_building_data(data, BlowupPlan{});
  EXPECT_EQ(out.branch, data.branch);
  EXPECT_EQ(out.L, data.L);
}

TEST(Transform, CatalogPlansReproduceTheirTargets) {
  ASSERT_EQ(plan_names().size(), 5u);
  for (const auto& name : plan_names()) {
    const PlanDocument plan = load_plan(name);
    const BuildingData source = entry_data(source_of(name));
    const BuildingData target = entry_data(plan.result);
    const BuildingData out = transform_building_data(source, plan.plan);
    EXPECT_TRUE(validate(out).ok()) << name;
    EXPECT_EQ(canonical_form(out), canonical_form(target)) << name;
    EXPECT_EQ(invariants(out), invariants(target)) << name;
  }
}

TEST(Transform, KSquaredDropsByTwoPerTriplePoint) {
  const BuildingData d14q0 = entry_data("d14q0");
  const BuildingData d14q1 = entry_data("d14q1");
  EXPECT_EQ(invariants(d14q0).KX2, 14);
  EXPECT_EQ(invariants(transform_building_data(d14q0, load_plan("d14q0_to_d10q0").plan)).KX2, 10);
  EXPECT_EQ(invariants(transform_building_data(d14q1, load_plan("d14q1_to_d12q1").plan)).KX2, 12);
}

TEST(Transform, BranchClassIsConserved) {
  for (const auto& name : plan_names()) {
    const PlanDocument plan = load_plan(name);
    const BuildingData source = entry_data(source_of(name));
    const BuildingData out = transform_building_data(source, plan.plan);
    const SurfaceBlowup b = blow_up_surface(source.ctx, plan.plan);
    DivClass expected = b.total_transform(total_branch(source));
    for (std::size_t j = 0; j < plan.plan.points().size(); ++j) {
      const auto& p = plan.plan.points()[j];
      const int absorbed = p.fix ? 1 : 0;
      expected -= (p.total_multiplicity() - absorbed) * b.exceptional(static_cast<int>(j));
    }
    EXPECT_EQ(total_branch(out), expected) << name;
    EXPECT_EQ(b.blow_down(total_branch(out)), total_branch(source)) << name;
  }
}

TEST(Transform, NodalConicSplitsIntoLines) {
  const BuildingData out = transform_building_data(entry_data("d14q1"), load_plan("d14q1_to_d12q2").plan);
  const NamedCurve* a = out.find_curve("C_2.1");
  const NamedCurve* b = out.find_curve("C_2.2");
  ASSERT_NE(a, nullptr);
  ASSERT_NE(b, nullptr);
  EXPECT_EQ(a->cls, DivClass::line_through(3, 1, 3));
  EXPECT_EQ(b->cls, DivClass::fiber(3, 3));
  EXPECT_EQ(out.slot_of("C_2.1"), g("110"));
  EXPECT_EQ(out.slot_of("e_3"), g("111"));
}

TEST(Transform, NodeWithoutFixFailsParity) {
  const PlanDocument plan = load_plan("d14q1_to_d12q2");
  const BlowupPlan bare = plan.plan.with_fixes({std::nullopt});
  try {
    transform_building_data(entry_data("d14q1"), bare);
    FAIL() << "expected parity_failure";
  } catch (const parity_failure& e) {
    const auto& chars = e.characters();
    EXPECT_NE(std::find(chars.begin(), chars.end(), Character::parse("001")), chars.end());
    EXPECT_EQ(chars.size(), 4u);
  }
}

TEST(ParityFix, NodeNeedsSlotOneOneOne) {
  const BuildingData data = entry_data("d14q1");
  const BlowupPlan bare = load_plan("d14q1_to_d12q2").plan.with_fixes({std::nullopt});
  const auto viable = search_parity_fix(data, bare);
  ASSERT_EQ(viable.size(), 1u);
  ASSERT_EQ(viable[0].size(), 1u);
  EXPECT_EQ(viable[0][0], g("111"));
  EXPECT_EQ(parity_slot(data, bare.points()[0]), g("111"));
}

TEST(ParityFix, TriplePointsNeedNothing) {
  const BuildingData data = entry_data("d14q0");
  const BlowupPlan plan = load_plan("d14q0_to_d10q0").plan;
  const auto viable = search_parity_fix(data, plan);
  ASSERT_FALSE(viable.empty());
  EXPECT_EQ(viable[0], (std::vector<std::optional<GroupElement>>{std::nullopt, std::nullopt}));
  for (const auto& p : plan.points()) EXPECT_FALSE(parity_slot(data, p).has_value());
}

TEST(ParityFix, OnlyTheParitySlotCanAbsorb) {
  const BuildingData data = entry_data("d14q1");
  const BlowupPlan plan = load_plan("d14q1_to_d10q2").plan;
  for (const auto& fixes : search_parity_fix(data, plan)) {
    for (std::size_t j = 0; j < fixes.size(); ++j) EXPECT_EQ(fixes[j], parity_slot(data, plan.points()[j]));
  }
  EXPECT_THROW(search_parity_fix(data, BlowupPlan({plan.points()[0], plan.points()[1],
                                                   PlanPoint{"P5", {{"f_11", 1}, {"e_1", 1}, {"C_2", 1}}, {}}})),
               std::invalid_argument);
}

TEST(Singularity, CatalogPlanPoints) {
  const BuildingData d14q0 = entry_data("d14q0");
  const BuildingData d14q1 = entry_data("d14q1");
  const PlanDocument regular = load_plan("d14q0_to_d10q0");
  for (const auto& p : regular.plan.points())
    EXPECT_EQ(classify_singularity(d14q0, p), SingularityType::two_quarter_points);
  const PlanDocument irregular = load_plan("d14q1_to_d10q1");
  for (const auto& p : irregular.plan.points())
    EXPECT_EQ(classify_singularity(d14q1, p), SingularityType::two_quarter_points);
  EXPECT_EQ(classify_singularity(d14q1, load_plan("d14q1_to_d12q2").plan.points()[0]),
            SingularityType::elliptic_gorenstein);
  const auto q2 = load_plan("d14q1_to_d10q2").plan.points();
  EXPECT_EQ(classify_singularity(d14q1, q2[0]), SingularityType::elliptic_gorenstein);
  EXPECT_EQ(classify_singularity(d14q1, q2[1]), SingularityType::A1);
}

TEST(Singularity, UnsupportedShapes) {
  const BuildingData data = entry_data("d14q0");
  EXPECT_EQ(classify_singularity(data, {"P", {{"f_11", 1}, {"f_12", 1}, {"C_1", 1}}, {}}),
            SingularityType::unsupported);
  EXPECT_EQ(classify_singularity(data, {"P", {{"f_21", 1}, {"C_1", 1}, {"C_2", 1}, {"f_23", 1}}, {}}),
            SingularityType::unsupported);
  EXPECT_EQ(classify_singularity(data, {"P", {{"C_1", 3}}, {}}), SingularityType::unsupported);
  EXPECT_EQ(classify_singularity(data, {"P", {{"zz", 1}, {"C_1", 1}, {"C_2", 1}}, {}}), SingularityType::unsupported);
  EXPECT_EQ(to_string(SingularityType::A1), "A1");
}

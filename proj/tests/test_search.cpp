#include <set>

#include <gtest/gtest.h>

#include "abcover/catalog.hpp"
#include "abcover/search.hpp"

using namespace abcover;

namespace {

const CurvePool& y2_pool() {
  static const CurvePool pool = parse_pool(*embedded_file("pools/y2_d14.toml"), "pools/y2_d14.toml");
  return pool;
}

SearchOptions with_targets(const std::string& text) {
  SearchOptions o;
  o.targets = parse_targets(text);
  return o;
}

const SearchResult& degree_fourteen_result() {
  static const SearchResult r = enumerate(y2_pool().ctx, y2_pool().curves, with_targets("pg=3,q=0,d=14"));
  return r;
}

}  // namespace

TEST(Targets, Parse) {
  const SearchTargets t = parse_targets("pg=3,q=0,d=14");
  EXPECT_EQ(t.pg, 3);
  EXPECT_EQ(t.q, 0);
  EXPECT_EQ(t.d, 14);
  EXPECT_FALSE(t.KX2.has_value());
  EXPECT_EQ(parse_targets(" KX2 = 12 ").KX2, 12);
  EXPECT_FALSE(parse_targets("").pg.has_value());
  EXPECT_THROW(parse_targets("x=1"), parse_error);
  EXPECT_THROW(parse_targets("pg=three"), parse_error);
  EXPECT_THROW(parse_targets("pg"), parse_error);
}

TEST(Enumerate, FindsTheDegreeFourteenRegularConstruction) {
  const SearchResult& r = degree_fourteen_result();
  ASSERT_FALSE(r.hits.empty());
  const std::string target = canonical_form(load_entry("d14q0").doc.data);
  bool found = false;
  for (const auto& h : r.hits) found = found || h.canonical_form == target;
  EXPECT_TRUE(found);
  EXPECT_EQ(r.stats.emitted, r.hits.size());
  EXPECT_EQ(r.stats.candidates, search_space_size(y2_pool().curves));
}

TEST(Enumerate, HitsAreSelfConsistentAndDistinct) {
  std::set<std::string> forms;
  for (const auto& h : degree_fourteen_result().hits) {
    EXPECT_TRUE(validate(h.data).ok());
    EXPECT_EQ(invariants(h.data), h.invariants);
    const CanonicalReport c = canonical_degree(h.data, {});
    EXPECT_EQ(c.degree, h.canonical.degree);
    EXPECT_EQ(c.degree, 14);
    EXPECT_EQ(canonical_form(h.data), h.canonical_form);
    EXPECT_TRUE(forms.insert(h.canonical_form).second);
  }
}

TEST(Enumerate, StageCountsAreMonotone) {
  const SearchStats& s = degree_fourteen_result().stats;
  EXPECT_GE(s.candidates, s.parity_ok);
  EXPECT_GE(s.parity_ok, s.valid);
  EXPECT_GE(s.valid, s.smooth);
  EXPECT_GE(s.smooth, s.nef_big);
  EXPECT_GE(s.nef_big, s.matched);
  EXPECT_GE(s.matched, s.emitted);
}

TEST(Enumerate, IrregularityThreeIsEmpty) {
  const SearchResult r = enumerate(y2_pool().ctx, y2_pool().curves, with_targets("pg=3,q=3"));
  EXPECT_TRUE(r.hits.empty());
  EXPECT_EQ(r.stats.matched, 0u);
}

TEST(Enumerate, EmptyPoolHasNoValidData) {
  const SearchResult r = enumerate(SurfaceContext(2), {}, with_targets("KX2=32"));
  EXPECT_TRUE(r.hits.empty());
  EXPECT_EQ(r.stats.valid, 0u);
}

TEST(Enumerate, LimitZeroEmitsNothing) {
  SearchOptions o = with_targets("pg=3,q=0,d=14");
  o.limit = 0;
  const SearchResult r = enumerate(y2_pool().ctx, y2_pool().curves, o);
  EXPECT_TRUE(r.hits.empty());
  EXPECT_EQ(r.stats.emitted, 0u);
}

TEST(Enumerate, SerialMatchesParallel) {
  SearchOptions o = with_targets("pg=3");
  o.max_per_slot = 1;
  const SearchResult par = enumerate(y2_pool().ctx, y2_pool().curves, o);
  const SearchResult ser = enumerate_serial(y2_pool().ctx, y2_pool().curves, o);
  EXPECT_EQ(par.stats, ser.stats);
  ASSERT_EQ(par.hits.size(), ser.hits.size());
  for (std::size_t i = 0; i < par.hits.size(); ++i) {
    EXPECT_EQ(par.hits[i].index, ser.hits[i].index);
    EXPECT_EQ(par.hits[i].canonical_form, ser.hits[i].canonical_form);
  }
}

TEST(Enumerate, OracleSpotChecks) {
  SearchOptions o = with_targets("pg=3,q=0,d=14");
  o.seed = 99;
  o.limit = 1;
  const SearchResult r = enumerate(y2_pool().ctx, y2_pool().curves, o);
  EXPECT_EQ(r.hits.size(), 1u);
  EXPECT_GT(r.stats.oracle_checks, 0u);
}

TEST(Enumerate, InfeasibleBounds) {
  const auto& pool = y2_pool();
  SearchOptions o;
  o.max_per_slot = 4;
  EXPECT_THROW(enumerate(pool.ctx, pool.curves, o), infeasible_search);
  o.max_per_slot = 0;
  EXPECT_THROW(enumerate(pool.ctx, pool.curves, o), infeasible_search);
  o.max_per_slot = 2;
  o.max_candidates = 1000;
  EXPECT_THROW(enumerate(pool.ctx, pool.curves, o), infeasible_search);
  std::vector<NamedCurve> big;
  for (int i = 0; i < 25; ++i) big.push_back({"f_" + std::to_string(i), DivClass::fiber(2, 1), i});
  EXPECT_THROW(enumerate(pool.ctx, big, SearchOptions{}), infeasible_search);
}

TEST(CanonicalForm, InvariantUnderRelabeling) {
  for (const auto& name : {"d14q0", "d12q2"}) {
    const BuildingData data = load_entry(name).doc.data;
    const std::string form = canonical_form(data);
    for (const auto& phi : automorphisms(kGroupRank)) EXPECT_EQ(canonical_form(relabel(data, phi)), form);
  }
  EXPECT_NE(canonical_form(load_entry("d14q0").doc.data), canonical_form(load_entry("d14q1").doc.data));
}

TEST(CandidateFilter, Examples) {
  EXPECT_TRUE(canonical_candidate_filter(load_entry("d14q0").doc.data));
  BuildingData anti(SurfaceContext(2));
  for (auto& L : anti.L) L = -anti.ctx.canonical();
  EXPECT_FALSE(canonical_candidate_filter(anti));
  BuildingData none(SurfaceContext(2));
  for (auto& L : none.L) L = DivClass::zero(2);
  EXPECT_TRUE(canonical_candidate_filter(none));
}

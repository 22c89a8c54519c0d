#include <gtest/gtest.h>

#include "oracles.hpp"
#include "termfuse/fusion.hpp"
#include "termfuse/ingest.hpp"

namespace termfuse {
namespace {

TermCollection from_tsf(std::string_view text, std::string typology = {}) {
  return pivot(parse_source(text), PivotPolicy{UfHandling::SynonymCapture, std::move(typology), {}});
}

TermEntry entry(std::string id, std::string term) {
  TermEntry e;
  e.id = std::move(id);
  TermSection ts;
  ts.term = std::move(term);
  e.lang_sections.push_back(LangSection{"en", {}, {ts}});
  return e;
}

ConceptRelation broader(std::string target, std::string typology = "T") {
  return ConceptRelation{ConceptRelationKind::Broader, std::move(target), std::move(typology), {"X", "Y", {}, {}, {}}};
}

// Built via edit_entries to bypass add_entry checks on relation targets.
TermCollection raw(std::vector<TermEntry> entries) {
  TermCollection c(GlobalInfo{"t", "default", {{"X", "Y", {}, {}}}});
  c.edit_entries([&](auto& es) { es = std::move(entries); });
  return c;
}

TEST(LiftRelations, RewritesThroughAliases) {
  auto a = entry("A.1", "a");
  a.relations.push_back(broader("OLD.7"));
  const auto lifted = lift_relations(raw({a, entry("BV.2", "b")}), AliasMap{{"OLD.7", "BV.2"}});
  EXPECT_TRUE(lifted.dropped.empty());
  EXPECT_EQ(lifted.collection.entries()[0].relations[0].target, "BV.2");
}

TEST(LiftRelations, SelfLoopDroppedOnce) {
  auto a = entry("BV.1", "a");
  a.relations.push_back(broader("OLD.1"));
  a.relations.push_back(ConceptRelation{ConceptRelationKind::Related, "BV.9", "T", {"X", "Y", {}, {}, {}}});
  const auto lifted = lift_relations(raw({a}), AliasMap{{"OLD.1", "BV.1"}});
  ASSERT_EQ(lifted.dropped.size(), 2u);
  EXPECT_EQ(lifted.dropped[0], (DroppedEdge{"BV.1", "broaderConcept", "BV.1", "T", DropReason::SelfLoop}));
  EXPECT_EQ(lifted.dropped[1].reason, DropReason::Dangling);
  EXPECT_TRUE(lifted.collection.entries()[0].relations.empty());
}

TEST(LiftRelations, BreaksCyclePerTypology) {
  auto a = entry("BV.1", "a");
  auto b = entry("BV.2", "b");
  a.relations.push_back(broader("BV.2"));
  b.relations.push_back(broader("BV.1"));
  b.relations.push_back(broader("BV.1", "U"));
  const auto input = raw({a, b});
  ASSERT_TRUE(testing::has_broader_cycle(input, "T"));
  const auto lifted = lift_relations(input);
  ASSERT_EQ(lifted.dropped.size(), 1u);
  EXPECT_EQ(lifted.dropped[0], (DroppedEdge{"BV.2", "broaderConcept", "BV.1", "T", DropReason::CycleIntroduced}));
  EXPECT_FALSE(testing::has_broader_cycle(lifted.collection, "T"));
  EXPECT_EQ(lifted.collection.entries()[1].relations.size(), 1u);
  EXPECT_TRUE(check_structure(lifted.collection).empty());
}

TEST(LiftRelations, DescriptorOfWithinEntryDropped) {
  auto a = entry("BV.1", "a");
  a.lang_sections[0].term_sections[0].id = "BV.1.TS.1";
  a.lang_sections[0].term_sections.push_back(a.lang_sections[0].term_sections[0]);
  auto& second = a.lang_sections[0].term_sections[1];
  second.id = "BV.1.TS.2";
  second.term = "b";
  second.relations.push_back(TermRelation{TermRelationKind::DescriptorOf, "OLD.TS.1", {"X", "Y", {}, {}, {}}});
  const auto lifted = lift_relations(raw({a}), AliasMap{{"OLD.TS.1", "BV.1.TS.1"}});
  ASSERT_EQ(lifted.dropped.size(), 1u);
  EXPECT_EQ(lifted.dropped[0].reason, DropReason::OwnEntry);
}

// Two resources stating opposite hierarchies under one typology: the merge
// plants a 2-cycle that fusion must break and report.
TEST(FuseRelations, PlantedCycleIsBroken) {
  const std::vector<TermCollection> inputs{
      from_tsf("RESOURCE: A|a|\n\nID: 1\nDE: cell\nLANG: en\nBT: 2\n\nID: 2\nDE: tissue\nLANG: en\n", "anatomy"),
      from_tsf("RESOURCE: B|b|\n\nID: 1\nDE: tissue\nLANG: en\nBT: 2\n\nID: 2\nDE: cell\nLANG: en\n", "anatomy"),
  };
  for (const auto& c : inputs) EXPECT_FALSE(testing::has_broader_cycle(c, "anatomy"));
  const auto result = fuse(inputs);
  EXPECT_EQ(result.collection.size(), 2u);
  EXPECT_FALSE(testing::has_broader_cycle(result.collection, "anatomy"));
  ASSERT_EQ(result.report.dropped_edges.size(), 1u);
  EXPECT_EQ(result.report.dropped_edges[0].reason, DropReason::CycleIntroduced);
  EXPECT_EQ(result.report.dropped_edges[0].source, "BV.2");
  EXPECT_TRUE(check_structure(result.collection).empty());
}

TEST(FuseRelations, DistinctTypologiesKeepBothDirections) {
  const std::vector<TermCollection> inputs{
      from_tsf("RESOURCE: A|a|\n\nID: 1\nDE: cell\nLANG: en\nBT: 2\n\nID: 2\nDE: tissue\nLANG: en\n"),
      from_tsf("RESOURCE: B|b|\n\nID: 1\nDE: tissue\nLANG: en\nBT: 2\n\nID: 2\nDE: cell\nLANG: en\n"),
  };
  const auto result = fuse(inputs);
  EXPECT_TRUE(result.report.dropped_edges.empty());
  std::size_t edges = 0;
  for (const auto& e : result.collection.entries()) edges += e.relations.size();
  EXPECT_EQ(edges, 2u);
}

}  // namespace
}  // namespace termfuse

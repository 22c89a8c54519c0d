#include <gtest/gtest.h>

#include <random>

#include "generators.hpp"
#include "oracles.hpp"
#include "termfuse/error.hpp"
#include "termfuse/model.hpp"

namespace termfuse {
namespace {

TermEntry simple_entry(std::string term, std::string lang = "en") {
  TermEntry e;
  LangSection ls{std::move(lang), {}, {}};
  TermSection ts;
  ts.term = std::move(term);
  ls.term_sections.push_back(std::move(ts));
  e.lang_sections.push_back(std::move(ls));
  return e;
}

GlobalInfo mesh_global() {
  return GlobalInfo{"t", "default", {ResourceDescriptor{"NLM", "MESH", {}, {}}}};
}

TEST(NewCollection, EmptyAndPassThrough) {
  auto c = new_collection(GlobalInfo{"t", "default", {}});
  EXPECT_EQ(c.size(), 0u);
  GlobalInfo g{"t", "default",
               {{"NLM", "MESH", {}, {}}, {"INIST", "PASCAL", {}, {}}, {"INRA", "BR", {}, {}}}};
  EXPECT_EQ(new_collection(g).global().resources.size(), 3u);
  EXPECT_EQ(new_collection(g), new_collection(g));
}

TEST(AddEntry, AssignsIdsFromPrefix) {
  auto c = new_collection(mesh_global(), "BV");
  auto e = simple_entry("Brain");
  e.lang_sections[0].term_sections.push_back(e.lang_sections[0].term_sections[0]);
  e.lang_sections[0].term_sections[1].term = "Cortex";
  EXPECT_EQ(c.add_entry(e), "BV.1");
  EXPECT_EQ(c.add_entry(simple_entry("Heart")), "BV.2");
  EXPECT_EQ(c.entries()[0].lang_sections[0].term_sections[1].id, "BV.1.TS.2");
  ASSERT_NE(c.term_section("BV.1.TS.2"), nullptr);
  EXPECT_EQ(c.term_section("BV.1.TS.2")->term, "Cortex");
}

TEST(AddEntry, SkipsTakenSerials) {
  auto c = new_collection(mesh_global());
  auto e = simple_entry("A");
  e.id = "BV.2";
  c.add_entry(e);
  EXPECT_EQ(c.add_entry(simple_entry("B")), "BV.3");
  EXPECT_EQ(c.add_entry(simple_entry("C")), "BV.4");
}

TEST(AddEntry, DuplicateIdThrows) {
  auto c = new_collection(mesh_global());
  auto e = simple_entry("GIFT");
  e.id = "BV.203402";
  c.add_entry(e);
  try {
    c.add_entry(e);
    FAIL();
  } catch (const Error& err) {
    EXPECT_EQ(err.kind(), ErrorKind::DuplicateId);
  }
}

TEST(AddEntry, EmptyLanguageSectionsThrow) {
  auto c = new_collection(mesh_global());
  try {
    c.add_entry(TermEntry{});
    FAIL();
  } catch (const Error& err) {
    EXPECT_EQ(err.kind(), ErrorKind::InvariantViolation);
  }
}

TEST(AddEntry, FrozenCollectionRejectsEdits) {
  auto c = new_collection(mesh_global());
  c.freeze();
  EXPECT_THROW(c.add_entry(simple_entry("A")), Error);
}

TEST(CheckEntry, LocalRules) {
  auto e = simple_entry("  ");
  e.lang_sections.push_back(simple_entry("x", "en").lang_sections[0]);
  e.lang_sections.push_back(simple_entry("y", "eng").lang_sections[0]);
  e.lang_sections.push_back(LangSection{"fr", {}, {}});
  ProvenanceBlock p{"NLM", "MESH", {}, {}, {}};
  e.lang_sections[1].term_sections[0].provenance = {p, p};
  std::set<std::string> rules;
  for (const auto& v : check_entry(e)) rules.insert(v.rule);
  EXPECT_EQ(rules, (std::set<std::string>{"empty-term", "duplicate-language-section", "language-code",
                                          "min-term-sections", "duplicate-provenance"}));
}

TEST(CheckStructure, ReferenceEntryEntryIsValid) {
  GlobalInfo g{"Reference termbase", "default",
               {{"NLM", "MESH", {}, {}},
                {"INIST", "Vocabulaire multidisciplinaire PASCAL", {}, {}},
                {"INRA", "Biotechnologie de la reproduction", {}, {}}}};
  auto c = new_collection(g);
  auto e = simple_entry("Gamete intrafallopian transfer");
  e.id = "BV.203402";
  e.lang_sections[0].term_sections[0].id = "BV.203402.TS.6";
  for (const auto& r : g.resources) {
    e.lang_sections[0].term_sections[0].provenance.push_back({r.institution, r.database, {}, {}, {}});
  }
  c.add_entry(e);
  EXPECT_TRUE(check_structure(c).empty());
}

TEST(CheckStructure, DuplicateLanguageSection) {
  auto e = simple_entry("a");
  e.lang_sections.push_back(simple_entry("b").lang_sections[0]);
  const auto v = check_entry(e);
  ASSERT_EQ(v.size(), 1u);
  EXPECT_EQ(v[0].message, "duplicate language section en");
}

TermCollection two_entry_cycle() {
  auto c = new_collection(mesh_global());
  auto a = simple_entry("A");
  a.id = "BV.1";
  a.relations.push_back({ConceptRelationKind::Broader, "BV.2", "MESH", {"NLM", "MESH", {}, {}, {}}});
  auto b = simple_entry("B");
  b.id = "BV.2";
  b.relations.push_back({ConceptRelationKind::Broader, "BV.1", "MESH", {"NLM", "MESH", {}, {}, {}}});
  c.add_entry(a);
  c.add_entry(b);
  return c;
}

TEST(CheckStructure, BroaderCycleWithinTypology) {
  const auto c = two_entry_cycle();
  ASSERT_TRUE(testing::has_broader_cycle(c, "MESH"));
  const auto v = check_structure(c);
  ASSERT_EQ(v.size(), 1u);
  EXPECT_EQ(v[0].rule, "acyclic-typology");
  EXPECT_EQ(v[0].message, "cycle in typology MESH");
}

TEST(CheckStructure, CyclesAcrossTypologiesAreAllowed) {
  auto c = new_collection(GlobalInfo{"t", "", {{"NLM", "MESH", {}, {}}, {"INIST", "PASCAL", {}, {}}}});
  auto a = simple_entry("A");
  a.relations.push_back({ConceptRelationKind::Broader, "BV.2", "MESH", {"NLM", "MESH", {}, {}, {}}});
  auto b = simple_entry("B");
  b.relations.push_back({ConceptRelationKind::Broader, "BV.1", "PASCAL", {"INIST", "PASCAL", {}, {}, {}}});
  c.add_entry(a);
  c.add_entry(b);
  EXPECT_FALSE(testing::has_broader_cycle(c, "MESH"));
  EXPECT_TRUE(check_structure(c).empty());
}

TEST(CheckStructure, RelationAndRegistryRules) {
  auto c = new_collection(mesh_global());
  auto a = simple_entry("A");
  a.relations.push_back({ConceptRelationKind::Related, "BV.1", "MESH", {"NLM", "MESH", {}, {}, {}}});
  a.relations.push_back({ConceptRelationKind::Broader, "BV.9", "MESH", {"NLM", "MESH", {}, {}, {}}});
  a.lang_sections[0].term_sections[0].provenance.push_back({"INSERM", "X", {}, {}, {}});
  a.lang_sections[0].term_sections[0].relations.push_back(
      {TermRelationKind::DescriptorOf, "BV.1.TS.1", {"NLM", "MESH", {}, {}, {}}});
  c.add_entry(a);
  std::multiset<std::string> rules;
  for (const auto& v : check_structure(c)) rules.insert(v.rule);
  EXPECT_EQ(rules, (std::multiset<std::string>{"relation-self", "relation-target", "relation-own-entry",
                                               "registered-resource"}));
}

// Property: random valid collections satisfy every invariant and their cycle
// verdict agrees with an independent DFS.
TEST(CheckStructure, RandomCollectionsAreValid) {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 200; ++i) {
    const auto c = testing::random_collection(rng);
    EXPECT_TRUE(check_structure(c).empty());
    for (const auto& r : c.global().resources) EXPECT_FALSE(testing::has_broader_cycle(c, r.database));
  }
}

TEST(Canonicalize, PlainFeaturesFirstStable) {
  auto e = simple_entry("x");
  e.features = {Feature{"definition", "d1", "src", {}, {}}, Feature{"note", "n1", {}, {}, {}},
                Feature{"definition", "d2", {}, {}, {}}};
  canonicalize(e);
  EXPECT_EQ(e.features[0].value, "n1");
  EXPECT_EQ(e.features[1].value, "d2");
  EXPECT_EQ(e.features[2].value, "d1");
}

}  // namespace
}  // namespace termfuse

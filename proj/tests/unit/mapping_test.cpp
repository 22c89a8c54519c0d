#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "termfuse/dcs.hpp"
#include "termfuse/error.hpp"
#include "termfuse/gmt.hpp"
#include "termfuse/gmt_model.hpp"

namespace termfuse {
namespace {

constexpr const char* kLegacy = R"(<struct type="terminologicalDataCollection">
  <struct type="terminologicalEntry" xml:id="L.1">
    <struct type="languageSection">
      <feat type="languageIdentifier">F</feat>
      <struct type="termSection" xml:id="L.1.TS.1"><feat type="DE">Cerveau</feat></struct>
    </struct>
    <struct type="languageSection">
      <feat type="languageIdentifier">en</feat>
      <struct type="termSection" xml:id="L.1.TS.2"><feat type="DE">Brain</feat><feat type="colour">grey</feat></struct>
    </struct>
  </struct>
  <struct type="terminologicalEntry" xml:id="L.2">
    <struct type="languageSection">
      <feat type="languageIdentifier">F</feat>
      <struct type="termSection" xml:id="L.2.TS.1"><feat type="DE">Coeur</feat></struct>
    </struct>
  </struct>
</struct>)";

std::size_t count_values(const GmtNode& n, std::string_view type, std::string_view value) {
  std::size_t k = n.kind == NodeKind::Feature && n.type == type && n.flat_text() == value;
  for (const auto& c : n.children) k += count_values(c, type, value);
  return k;
}

TEST(LoadMapping, ParsesRulesAndValues) {
  const auto m = load_mapping("# legacy\nDE@termSection -> term\nlanguageIdentifier@languageSection -> "
                              "languageIdentifier [values: F=fr, E=en]\n");
  ASSERT_EQ(m.rules.size(), 2u);
  const auto* rule = m.find("languageIdentifier", Level::LanguageSection);
  ASSERT_NE(rule, nullptr);
  EXPECT_EQ(rule->values.at("F"), "fr");
  EXPECT_EQ(m.find("DE", Level::Entry), nullptr);
}

TEST(LoadMapping, Errors) {
  EXPECT_THROW(load_mapping("DE -> term"), Error);
  EXPECT_THROW(load_mapping("DE@termSection term"), Error);
  EXPECT_THROW(load_mapping("DE@termSection -> term\nDE@termSection -> note"), Error);
  EXPECT_THROW(load_mapping("DE@nowhere -> term"), Error);
}

TEST(MapCategories, RenameAndValueRewrite) {
  const auto tree = parse_gmt(kLegacy);
  const auto mapping = load_mapping(
      "DE@termSection -> term\nlanguageIdentifier@languageSection -> languageIdentifier [values: F=fr]");
  const auto before = count_values(tree, "languageIdentifier", "F");
  const auto mapped = map_categories(tree, mapping, default_dcs());
  EXPECT_EQ(count_values(mapped.tree, "languageIdentifier", "fr"), before);
  EXPECT_EQ(count_values(mapped.tree, "languageIdentifier", "F"), 0u);
  ASSERT_EQ(mapped.dropped.size(), 1u);
  EXPECT_EQ(mapped.dropped[0].category, "colour");
  const auto c = to_model(mapped.tree);
  EXPECT_EQ(c.term_section("L.1.TS.2")->term, "Brain");
  EXPECT_TRUE(validate(c, default_dcs()).empty());
}

TEST(MapCategories, IdentityOnConformingCollection) {
  const auto c = to_model(parse_gmt(testing::read_text(testing::data_path("gift/fused.golden.gmt"))));
  const auto mapped = map_categories(c, CategoryMapping{}, default_dcs());
  EXPECT_TRUE(mapped.dropped.empty());
  EXPECT_EQ(mapped.collection, c);
}

TEST(MapCategories, MissingTargetIsMappingError) {
  const auto tree = parse_gmt(kLegacy);
  try {
    map_categories(tree, load_mapping("DE@termSection -> heading"), default_dcs());
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::MappingError);
  }
}

}  // namespace
}  // namespace termfuse

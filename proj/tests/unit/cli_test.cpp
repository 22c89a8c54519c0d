#include <gtest/gtest.h>

#include <random>
#include <sstream>

#include "commands.hpp"
#include "fixtures.hpp"
#include "termfuse/gmt.hpp"
#include "termfuse/gmt_model.hpp"
#include "workspace.hpp"

namespace termfuse::cli {
namespace {

namespace fs = std::filesystem;
using testing::data_path;
using testing::read_text;

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("termfuse-cli-" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
    config_.output_dir = dir_;
  }
  void TearDown() override { fs::remove_all(dir_); }

  fs::path write(const std::string& name, const std::string& content) {
    write_file(dir_ / name, content);
    return dir_ / name;
  }

  Streams io() { return Streams{out_, err_}; }

  int import_gift() {
    const std::vector<fs::path> files{data_path("gift/nlm-mesh.tsf"), data_path("gift/inist-pascal.tsf"),
                                      data_path("gift/inra-biotech.tsf")};
    return cmd_import(config_, files, io());
  }

  int fuse_gift() {
    const std::vector<fs::path> files{dir_ / "nlm-mesh.gmt", dir_ / "inist-pascal.gmt", dir_ / "inra-biotech.gmt"};
    return cmd_fuse(config_, files, io());
  }

  fs::path dir_;
  WorkspaceConfig config_;
  std::ostringstream out_;
  std::ostringstream err_;
};

TEST_F(Cli, ImportEmptyResource) {
  const auto tsf = write("empty.tsf", "RESOURCE: X|Y|\n");
  const std::vector<fs::path> files{tsf};
  EXPECT_EQ(cmd_import(config_, files, io()), kOk);
  EXPECT_EQ(to_model(parse_gmt(read_text(dir_ / "empty.gmt"))).size(), 0u);
  EXPECT_TRUE(fs::exists(dir_ / "empty.native.gmt"));
}

TEST_F(Cli, MalformedTsfIsInputError) {
  const auto tsf = write("bad.tsf", "RESOURCE: X|Y|\n\nID: A\nDE: a\nLANG: en\nXX: ?\n");
  const std::vector<fs::path> files{tsf};
  EXPECT_EQ(cmd_import(config_, files, io()), kInputError);
  EXPECT_NE(err_.str().find("line 6"), std::string::npos) << err_.str();
}

TEST_F(Cli, MissingFileIsInputError) {
  const std::vector<fs::path> files{dir_ / "absent.tsf"};
  EXPECT_EQ(cmd_import(config_, files, io()), kInputError);
}

TEST_F(Cli, ImportFuseMatchesGolden) {
  ASSERT_EQ(import_gift(), kOk) << err_.str();
  ASSERT_EQ(fuse_gift(), kOk) << err_.str();
  EXPECT_EQ(read_text(dir_ / "fused.gmt"), read_text(data_path("gift/fused.golden.gmt")));
  EXPECT_NE(read_text(dir_ / "fusion-report.txt").find("MERGE INIST.1 NLM.1"), std::string::npos);
}

TEST_F(Cli, FuseIsDeterministic) {
  ASSERT_EQ(import_gift(), kOk);
  ASSERT_EQ(fuse_gift(), kOk);
  const auto first = read_text(dir_ / "fused.gmt") + read_text(dir_ / "fusion-report.txt");
  ASSERT_EQ(fuse_gift(), kOk);
  EXPECT_EQ(read_text(dir_ / "fused.gmt") + read_text(dir_ / "fusion-report.txt"), first);
}

TEST_F(Cli, ValidateGoldenIsClean) {
  EXPECT_EQ(cmd_validate(config_, data_path("gift/fused.golden.gmt"), io()), kOk);
  EXPECT_EQ(cmd_validate(config_, data_path("gift/reference-entry.gmt"), io()), kOk);
  EXPECT_NE(out_.str().find("reference-entry.gmt: 0 violations"), std::string::npos) << out_.str();
}

TEST_F(Cli, ValidateMisplacedCategory) {
  auto c = to_model(parse_gmt(read_text(data_path("gift/reference-entry.gmt"))));
  c.edit_entries([](auto& entries) { entries[0].features.push_back(Feature{"termType", "fullForm", {}, {}, {}}); });
  const auto file = write("misplaced.gmt", serialize_gmt(from_model(c)));
  EXPECT_EQ(cmd_validate(config_, file, io()), kFindings);
  EXPECT_NE(out_.str().find("misplaced.gmt: 1 violation\n"), std::string::npos) << out_.str();
}

TEST_F(Cli, InvariantBreachInFusionInputIsInternal) {
  auto c = to_model(parse_gmt(read_text(data_path("gift/fused.golden.gmt"))));
  c.edit_entries([](auto& entries) {
    entries[0].relations.push_back(
        ConceptRelation{ConceptRelationKind::Broader, "BV.99", "MESH", {"NLM", "MESH", {}, {}, {}}});
  });
  const auto file = write("dangling.gmt", serialize_gmt(from_model(c)));
  EXPECT_EQ(cmd_validate(config_, file, io()), kFindings);
  const std::vector<fs::path> files{file};
  EXPECT_EQ(cmd_fuse(config_, files, io()), kInternalError);
}

TEST_F(Cli, ValidateNeverCrashesOnMutatedInput) {
  const auto golden = read_text(data_path("gift/fused.golden.gmt"));
  std::mt19937_64 rng(3);
  const std::string alphabet = "<>/&\"=x \n";
  for (int i = 0; i < 200; ++i) {
    auto doc = golden;
    std::uniform_int_distribution<std::size_t> pos(0, doc.size() - 1);
    switch (i % 3) {
      case 0:
        doc[pos(rng)] = alphabet[pos(rng) % alphabet.size()];
        break;
      case 1:
        doc.resize(pos(rng));
        break;
      default:
        doc.erase(pos(rng), 1 + pos(rng) % 40);
        break;
    }
    const auto file = write("fuzz.gmt", doc);
    const int code = cmd_validate(config_, file, io());
    EXPECT_TRUE(code == kOk || code == kFindings || code == kInputError) << code << "\n" << err_.str();
  }
}

TEST_F(Cli, QueryAndExpand) {
  const auto golden = data_path("gift/fused.golden.gmt");
  EXPECT_EQ(cmd_query(config_, golden, "GIFT", std::nullopt, {}, io()), kOk);
  EXPECT_EQ(out_.str(), "");
  EXPECT_EQ(cmd_query(config_, golden, "gamete intrafallopian transfer", std::string("en"), {"en", "fr"}, io()),
            kOk);
  EXPECT_EQ(out_.str(),
            "BV.1\t(\"Gamete intrafallopian transfer\") OR (\"Transfert intratubaire de gamètes\")\n");
}

TEST_F(Cli, ExportAndDiff) {
  const auto golden = data_path("gift/fused.golden.gmt");
  EXPECT_EQ(cmd_export(config_, golden, "INRA", std::nullopt, io()), kOk) << err_.str();
  EXPECT_TRUE(fs::exists(dir_ / "inra.export.gmt"));
  EXPECT_EQ(cmd_export(config_, golden, "BDSP", std::nullopt, io()), kInputError);
  out_.str("");
  EXPECT_EQ(cmd_diff(config_, golden, golden, std::string("2007-01-01"), io()), kOk);
  EXPECT_EQ(out_.str(), "");
}

TEST(Config, ParsesSettings) {
  const auto c = parse_config("# workspace\nmatch_scope = allTerms\ntoken_sort = yes\nuf_handling = splitNonPreferred\n"
                              "collection_prefix = TS\n");
  EXPECT_EQ(c.fusion.match_scope, MatchScope::AllTerms);
  EXPECT_TRUE(c.fusion.normalization.token_sort);
  EXPECT_EQ(c.uf_handling, UfHandling::SplitNonPreferred);
  EXPECT_EQ(c.fusion.collection_prefix, "TS");
  try {
    parse_config("\ncolour = red\n");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::SyntaxError);
    EXPECT_EQ(e.line(), 2u);
  }
}

TEST(ExitCodes, Mapping) {
  EXPECT_EQ(exit_code(ErrorKind::SyntaxError), kInputError);
  EXPECT_EQ(exit_code(ErrorKind::XmlError), kInputError);
  EXPECT_EQ(exit_code(ErrorKind::InvariantViolation), kInternalError);
}

}  // namespace
}  // namespace termfuse::cli

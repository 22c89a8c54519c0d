#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "commands.hpp"
#include "termfuse/error.hpp"

namespace fs = std::filesystem;
using namespace termfuse;

int main(int argc, char** argv) {
  CLI::App app{"termfuse: build a concept-oriented termbase from heterogeneous terminologies"};
  app.require_subcommand(1);
  app.fallthrough();

  std::optional<std::string> config_path;
  std::optional<std::string> out_dir;
  app.add_option("--config", config_path, "workspace config (key = value lines)");
  app.add_option("--out", out_dir, "output directory");

  // Flags override the config file; each maps onto a config key.
  std::vector<std::pair<std::string, std::string>> overrides;
  auto setting = [&](CLI::App* cmd, const std::string& flag, const std::string& key, const std::string& help) {
    cmd->add_option_function<std::string>(
        flag, [&overrides, key](const std::string& v) { overrides.emplace_back(key, v); }, help);
  };

  std::vector<fs::path> inputs;
  auto* import = app.add_subcommand("import", "pivot TSF resources into GMT");
  import->add_option("files", inputs, "TSF files")->required();
  setting(import, "--uf", "uf_handling", "synonymCapture | splitNonPreferred");

  auto* fuse = app.add_subcommand("fuse", "fuse pivoted GMT collections");
  fuse->add_option("files", inputs, "GMT files")->required();
  setting(fuse, "--match-scope", "match_scope", "preferredOnly | allTerms");
  setting(fuse, "--token-sort", "token_sort", "match permuted forms (true/false)");
  setting(fuse, "--strip-diacritics", "strip_diacritics", "ignore diacritics (true/false)");
  setting(fuse, "--prefix", "collection_prefix", "id prefix of fused entries");

  fs::path file;
  auto* validate = app.add_subcommand("validate", "check structure and data categories");
  validate->add_option("file", file, "GMT file")->required();
  setting(validate, "--dcs", "dcs", "data category selection file");

  std::string term;
  std::optional<std::string> lang;
  std::vector<std::string> expand;
  auto* query = app.add_subcommand("query", "look up a term, optionally expanding to a boolean query");
  query->add_option("file", file, "fused GMT file")->required();
  query->add_option("term", term, "term to look up")->required();
  query->add_option("--lang", lang, "restrict to a language");
  query->add_option("--expand", expand, "languages for query expansion")->delimiter(',');

  std::string institution;
  std::optional<std::string> database;
  auto* exporter = app.add_subcommand("export", "export the elements of one source");
  exporter->add_option("file", file, "fused GMT file")->required();
  exporter->add_option("--institution", institution, "originating institution")->required();
  exporter->add_option("--database", database, "originating database");

  fs::path old_file, new_file;
  std::optional<std::string> date;
  auto* diff = app.add_subcommand("diff", "list entries changed between two native files");
  diff->add_option("old", old_file, "previous native file")->required();
  diff->add_option("new", new_file, "current native file")->required();
  diff->add_option("--date", date, "snapshot date (YYYY-MM-DD)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return cli::kInputError;
  }

  cli::WorkspaceConfig config;
  try {
    if (config_path) config = cli::load_config(*config_path);
    for (const auto& [key, value] : overrides) cli::apply_setting(config, key, value);
    if (out_dir) config.output_dir = *out_dir;
  } catch (const Error& e) {
    std::cerr << "termfuse: " << (config_path ? *config_path + ": " : std::string()) << e.what() << '\n';
    return cli::exit_code(e.kind());
  }

  const cli::Streams io{std::cout, std::cerr};
  if (*import) return cli::cmd_import(config, inputs, io);
  if (*fuse) return cli::cmd_fuse(config, inputs, io);
  if (*validate) return cli::cmd_validate(config, file, io);
  if (*query) return cli::cmd_query(config, file, term, lang, expand, io);
  if (*exporter) return cli::cmd_export(config, file, institution, database, io);
  return cli::cmd_diff(config, old_file, new_file, date, io);
}

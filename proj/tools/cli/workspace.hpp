#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>

#include "termfuse/fusion.hpp"
#include "termfuse/ingest.hpp"

namespace termfuse::cli {

// `key = value` lines, `#` comments. Keys: dcs, match_scope, case_fold,
// strip_diacritics, strip_punctuation, token_sort, uf_handling,
// collection_prefix, output_dir.
struct WorkspaceConfig {
  std::optional<std::filesystem::path> dcs_path;
  FusionPolicy fusion;
  UfHandling uf_handling = UfHandling::SynonymCapture;
  std::filesystem::path output_dir = ".";
};

// Throws SyntaxError for unknown keys or bad values, IoError for missing
// files. Relative paths resolve against `base`.
void apply_setting(WorkspaceConfig& config, std::string_view key, std::string_view value,
                   const std::filesystem::path& base = {}, std::size_t line = 0);

WorkspaceConfig parse_config(std::string_view text, const std::filesystem::path& base = {});
WorkspaceConfig load_config(const std::filesystem::path& path);

std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::string_view content);

}  // namespace termfuse::cli

#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "termfuse/error.hpp"
#include "workspace.hpp"

namespace termfuse::cli {

enum ExitCode : int { kOk = 0, kFindings = 1, kInputError = 2, kInternalError = 3 };

int exit_code(ErrorKind kind) noexcept;

struct Streams {
  std::ostream& out;
  std::ostream& err;
};

// Each command reports errors on `err` and returns an exit code; none throw.
int cmd_import(const WorkspaceConfig& config, std::span<const std::filesystem::path> files, Streams io);
int cmd_fuse(const WorkspaceConfig& config, std::span<const std::filesystem::path> files, Streams io);
int cmd_validate(const WorkspaceConfig& config, const std::filesystem::path& file, Streams io);
int cmd_query(const WorkspaceConfig& config, const std::filesystem::path& file, const std::string& term,
              const std::optional<std::string>& language, const std::vector<std::string>& expand, Streams io);
int cmd_export(const WorkspaceConfig& config, const std::filesystem::path& file, const std::string& institution,
               const std::optional<std::string>& database, Streams io);
int cmd_diff(const WorkspaceConfig& config, const std::filesystem::path& old_file,
             const std::filesystem::path& new_file, const std::optional<std::string>& date, Streams io);

}  // namespace termfuse::cli

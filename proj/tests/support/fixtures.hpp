#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "termfuse/ingest.hpp"

namespace termfuse::testing {

inline std::filesystem::path data_path(const std::string& relative) {
  return std::filesystem::path(TERMFUSE_TEST_DATA) / relative;
}

std::string read_text(const std::filesystem::path& path);

// Parse, pivot and register a TSF file the way `termfuse import` does: the
// native document is named `<stem>.native.gmt`.
NativeRegistration import_tsf(const std::filesystem::path& path, const PivotPolicy& policy = {});

// The three GIFT fixtures in MESH, PASCAL, INRA order.
std::vector<NativeRegistration> gift_imports();

}  // namespace termfuse::testing

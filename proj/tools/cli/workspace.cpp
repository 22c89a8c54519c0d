#include "workspace.hpp"

#include <fstream>
#include <sstream>

#include "termfuse/error.hpp"

namespace termfuse::cli {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

bool parse_bool(std::string_view key, std::string_view value, std::size_t line) {
  if (value == "true" || value == "yes" || value == "on" || value == "1") return true;
  if (value == "false" || value == "no" || value == "off" || value == "0") return false;
  throw Error(ErrorKind::SyntaxError, std::string(key) + ": expected a boolean, got '" + std::string(value) + "'",
              line);
}

std::filesystem::path resolve(const std::filesystem::path& base, std::string_view value) {
  std::filesystem::path p{std::string(value)};
  return p.is_relative() && !base.empty() ? base / p : p;
}

}  // namespace

void apply_setting(WorkspaceConfig& config, std::string_view key, std::string_view value,
                   const std::filesystem::path& base, std::size_t line) {
  auto& norm = config.fusion.normalization;
  if (key == "dcs") {
    auto path = resolve(base, value);
    if (!std::filesystem::is_regular_file(path)) {
      throw Error(ErrorKind::IoError, "dcs file " + path.string() + " does not exist", line);
    }
    config.dcs_path = std::move(path);
  } else if (key == "match_scope") {
    auto scope = parse_match_scope(value);
    if (!scope) throw Error(ErrorKind::SyntaxError, "match_scope: unknown value '" + std::string(value) + "'", line);
    config.fusion.match_scope = *scope;
  } else if (key == "case_fold") {
    norm.case_fold = parse_bool(key, value, line);
  } else if (key == "strip_diacritics") {
    norm.strip_diacritics = parse_bool(key, value, line);
  } else if (key == "strip_punctuation") {
    norm.strip_punctuation = parse_bool(key, value, line);
  } else if (key == "token_sort") {
    norm.token_sort = parse_bool(key, value, line);
  } else if (key == "uf_handling") {
    auto uf = parse_uf_handling(value);
    if (!uf) throw Error(ErrorKind::SyntaxError, "uf_handling: unknown value '" + std::string(value) + "'", line);
    config.uf_handling = *uf;
  } else if (key == "collection_prefix") {
    if (value.empty()) throw Error(ErrorKind::SyntaxError, "collection_prefix is empty", line);
    config.fusion.collection_prefix = std::string(value);
  } else if (key == "output_dir") {
    config.output_dir = resolve(base, value);
  } else {
    throw Error(ErrorKind::SyntaxError, "unknown setting '" + std::string(key) + "'", line);
  }
}

WorkspaceConfig parse_config(std::string_view text, const std::filesystem::path& base) {
  WorkspaceConfig config;
  std::size_t number = 0;
  while (!text.empty()) {
    const auto nl = text.find('\n');
    const auto raw = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    ++number;
    const auto line = trim(raw);
    if (line.empty() || line.front() == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw Error(ErrorKind::SyntaxError, "expected 'key = value'", number);
    }
    apply_setting(config, trim(line.substr(0, eq)), trim(line.substr(eq + 1)), base, number);
  }
  return config;
}

WorkspaceConfig load_config(const std::filesystem::path& path) {
  return parse_config(read_file(path), path.parent_path());
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::IoError, "cannot read " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void write_file(const std::filesystem::path& path, std::string_view content) {
  std::error_code ec;
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path(), ec);
  std::ofstream out(path, std::ios::binary);
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  if (!out) throw Error(ErrorKind::IoError, "cannot write " + path.string());
}

}  // namespace termfuse::cli

#include <set>
#include <tuple>
#include <unordered_map>

#include "termfuse/error.hpp"
#include "termfuse/ingest.hpp"
#include "text_util.hpp"

namespace termfuse {

namespace {

using detail::split;
using detail::trim;

[[noreturn]] void syntax(std::size_t line, const std::string& message) {
  throw Error(ErrorKind::SyntaxError, message, line);
}

// `{type|text}` marks an annotated span; everything else is literal.
SourcedText parse_marked(std::string_view value, std::size_t line) {
  SourcedText out;
  std::size_t i = 0;
  while (i < value.size()) {
    const auto open = value.find('{', i);
    out.text += value.substr(i, open == std::string_view::npos ? std::string_view::npos : open - i);
    if (open == std::string_view::npos) break;
    const auto bar = value.find('|', open);
    const auto close = value.find('}', open);
    if (bar == std::string_view::npos || close == std::string_view::npos || bar > close) {
      syntax(line, "unterminated '{type|text}' span");
    }
    auto type = trim(value.substr(open + 1, bar - open - 1));
    if (type.empty()) syntax(line, "annotation span without type");
    Annotation a{std::string(type), out.text.size(), 0};
    out.text += value.substr(bar + 1, close - bar - 1);
    a.end = out.text.size();
    out.annotations.push_back(std::move(a));
    i = close + 1;
  }
  return out;
}

class RecordBuilder {
 public:
  explicit RecordBuilder(std::size_t line) { record_.line = line; }

  void add(std::size_t line, std::string_view key, std::string_view value) {
    auto once = [&](bool present) {
      if (present) syntax(line, "repeated " + std::string(key));
    };
    auto require_value = [&] {
      if (value.empty()) syntax(line, std::string(key) + " requires a value");
    };
    if (key == "ID") {
      once(has_id_);
      require_value();
      has_id_ = true;
      record_.native_id = value;
    } else if (key == "DE") {
      once(has_de_);
      require_value();
      has_de_ = true;
      record_.descriptor_term = value;
    } else if (key == "LANG") {
      once(has_lang_);
      require_value();
      has_lang_ = true;
      record_.language = value;
    } else if (key == "UF") {
      require_value();
      record_.uf_terms.emplace_back(value);
    } else if (key == "USE") {
      once(record_.use_target.has_value());
      require_value();
      record_.use_target = std::string(value);
    } else if (key == "BT" || key == "NT" || key == "RT") {
      require_value();
      auto& list = key == "BT" ? record_.bt : key == "NT" ? record_.nt : record_.rt;
      list.emplace_back(value);
      refs_.emplace_back(line, std::string(key), std::string(value));
    } else if (key == "DEF") {
      require_value();
      record_.definitions.push_back(parse_marked(value, line));
      last_ = Last::Definition;
    } else if (key == "CTX") {
      require_value();
      record_.contexts.push_back(parse_marked(value, line));
      last_ = Last::Context;
    } else if (key == "DEFSRC" || key == "CTXSRC") {
      const bool def = key == "DEFSRC";
      if (last_ != (def ? Last::Definition : Last::Context)) {
        syntax(line, std::string(key) + " must directly follow " + (def ? "DEF" : "CTX"));
      }
      auto& target = def ? record_.definitions.back() : record_.contexts.back();
      once(target.source.has_value());
      target.source = std::string(value);
      return;
    } else if (key == "TR") {
      const auto eq = value.find('=');
      if (eq == std::string_view::npos) syntax(line, "TR value must be 'lang=term'");
      auto lang = trim(value.substr(0, eq));
      auto term = trim(value.substr(eq + 1));
      if (lang.empty() || term.empty()) syntax(line, "TR value must be 'lang=term'");
      record_.translations.emplace_back(lang, term);
    } else {
      syntax(line, "unknown key '" + std::string(key) + "'");
    }
    if (key != "DEF" && key != "CTX") last_ = Last::Other;
  }

  SourceRecord finish(std::size_t line) {
    if (!has_id_) syntax(record_.line, "record without ID");
    if (!has_de_) syntax(record_.line, "record " + record_.native_id + " without DE");
    if (!has_lang_) syntax(record_.line, "record " + record_.native_id + " without LANG");
    if (record_.use_target && !record_.uf_terms.empty()) {
      syntax(line, "record " + record_.native_id + ": USE and UF are mutually exclusive");
    }
    return std::move(record_);
  }

  const std::vector<std::tuple<std::size_t, std::string, std::string>>& refs() const { return refs_; }

 private:
  enum class Last { Other, Definition, Context };

  SourceRecord record_;
  bool has_id_ = false;
  bool has_de_ = false;
  bool has_lang_ = false;
  Last last_ = Last::Other;
  std::vector<std::tuple<std::size_t, std::string, std::string>> refs_;
};

}  // namespace

const SourceRecord* SourceResource::find(std::string_view native_id) const {
  for (const auto& r : records) {
    if (r.native_id == native_id) return &r;
  }
  return nullptr;
}

SourceResource parse_source(std::string_view text) {
  SourceResource resource;
  bool has_header = false;
  std::optional<RecordBuilder> current;
  std::vector<std::tuple<std::size_t, std::string, std::string>> refs;
  std::unordered_map<std::string, std::size_t> seen;

  auto close = [&](std::size_t line) {
    if (!current) return;
    auto record = current->finish(line);
    if (!seen.emplace(record.native_id, record.line).second) {
      throw Error(ErrorKind::DuplicateNativeId, "native id '" + record.native_id + "' already used", record.line);
    }
    refs.insert(refs.end(), current->refs().begin(), current->refs().end());
    if (record.use_target) refs.emplace_back(record.line, "USE", *record.use_target);
    resource.records.push_back(std::move(record));
    current.reset();
  };

  std::size_t last_line = 0;
  detail::for_each_line(text, [&](std::size_t number, std::string_view raw) {
    last_line = number;
    const auto line = trim(raw);
    if (line.starts_with('#')) return;
    if (line.empty()) {
      close(number);
      return;
    }
    const auto colon = line.find(':');
    if (colon == std::string_view::npos) syntax(number, "expected 'KEY: value'");
    const auto key = trim(line.substr(0, colon));
    const auto value = trim(line.substr(colon + 1));

    if (!has_header) {
      if (key != "RESOURCE") syntax(number, "expected 'RESOURCE: <institution>|<database>|<citation>'");
      const auto parts = split(value, '|');
      if (parts.size() < 2 || parts.size() > 3 || trim(parts[0]).empty()) {
        syntax(number, "RESOURCE needs institution|database|citation");
      }
      resource.descriptor.institution = trim(parts[0]);
      resource.descriptor.database = trim(parts[1]);
      if (parts.size() == 3 && !trim(parts[2]).empty()) resource.descriptor.citation = std::string(trim(parts[2]));
      has_header = true;
      return;
    }
    if (key == "RESOURCE") syntax(number, "RESOURCE header repeated");
    if (!current) current.emplace(number);
    current->add(number, key, value);
  });
  close(last_line);
  if (!has_header) syntax(1, "missing RESOURCE header");

  for (const auto& [line, key, target] : refs) {
    if (!seen.contains(target)) {
      resource.warnings.push_back("line " + std::to_string(line) + ": " + key + " target '" + target +
                                  "' not found");
    }
  }
  return resource;
}

std::string_view to_string(UfHandling handling) noexcept {
  return handling == UfHandling::SynonymCapture ? "synonymCapture" : "splitNonPreferred";
}

std::optional<UfHandling> parse_uf_handling(std::string_view text) noexcept {
  if (text == "synonymCapture") return UfHandling::SynonymCapture;
  if (text == "splitNonPreferred") return UfHandling::SplitNonPreferred;
  return std::nullopt;
}

}  // namespace termfuse

#include <optional>

#include "termfuse/dcs.hpp"
#include "termfuse/error.hpp"
#include "termfuse/gmt_model.hpp"
#include "text_util.hpp"

namespace termfuse {

namespace {

using detail::split;
using detail::trim;

class TreeMapper {
 public:
  TreeMapper(const CategoryMapping& mapping, const DataCategorySelection& target,
             std::vector<DroppedCategory>& dropped)
      : mapping_(mapping), target_(target), dropped_(dropped) {}

  GmtNode map_struct(const GmtNode& node, const std::string& owner) {
    const auto level = parse_level(node.type).value_or(Level::Collection);
    if (level == Level::GlobalInformation) return node;
    GmtNode out = node;
    out.children.clear();
    const std::string here = node.id.value_or(owner);
    for (const auto& child : node.children) {
      std::optional<GmtNode> mapped;
      switch (child.kind) {
        case NodeKind::Feature: mapped = map_feat(child, level, here); break;
        case NodeKind::Bracket: mapped = map_brack(child, level, here); break;
        case NodeKind::Structure: mapped = map_struct(child, here); break;
        default: mapped = child; break;
      }
      if (mapped) out.children.push_back(std::move(*mapped));
    }
    return out;
  }

 private:
  std::optional<GmtNode> map_feat(const GmtNode& feat, Level level, const std::string& owner) {
    if (const MappingRule* rule = mapping_.find(feat.type, level)) {
      GmtNode out = feat;
      out.type = rule->target;
      const bool text_only = feat.children.size() == 1 && feat.children.front().kind == NodeKind::Text;
      if (text_only) {
        auto it = rule->values.find(feat.children.front().text);
        if (it != rule->values.end()) out = GmtNode::feature(rule->target, it->second);
      }
      return out;
    }
    const DataCategory* dc = target_.find(feat.type);
    if (dc && dc->admits(level)) return feat;
    dropped_.push_back({owner, feat.type, level});
    return std::nullopt;
  }

  std::optional<GmtNode> map_brack(const GmtNode& brack, Level level, const std::string& owner) {
    auto head = map_feat(brack.children.front(), level, owner);
    if (!head) return std::nullopt;
    GmtNode out = GmtNode::bracket();
    out.children.push_back(std::move(*head));
    for (std::size_t i = 1; i < brack.children.size(); ++i) {
      const auto& m = brack.children[i];
      auto mapped = m.kind == NodeKind::Feature ? map_feat(m, level, owner) : map_brack(m, level, owner);
      if (mapped) out.children.push_back(std::move(*mapped));
    }
    return out;
  }

  const CategoryMapping& mapping_;
  const DataCategorySelection& target_;
  std::vector<DroppedCategory>& dropped_;
};

}  // namespace

const MappingRule* CategoryMapping::find(std::string_view source, Level level) const {
  for (const auto& r : rules) {
    if (r.source == source && r.level == level) return &r;
  }
  return nullptr;
}

CategoryMapping load_mapping(std::string_view text) {
  CategoryMapping mapping;
  detail::for_each_line(text, [&](std::size_t number, std::string_view raw) {
    auto line = trim(raw);
    if (line.empty() || line.front() == '#') return;
    const auto arrow = line.find("->");
    if (arrow == std::string_view::npos) throw Error(ErrorKind::SyntaxError, "expected '->'", number);
    const auto lhs = trim(line.substr(0, arrow));
    auto rhs = trim(line.substr(arrow + 2));
    const auto at = lhs.find('@');
    if (at == std::string_view::npos || at == 0) {
      throw Error(ErrorKind::SyntaxError, "expected '<srcName>@<level>'", number);
    }
    MappingRule rule;
    rule.source = std::string(trim(lhs.substr(0, at)));
    auto level = parse_level(trim(lhs.substr(at + 1)));
    if (!level) throw Error(ErrorKind::SyntaxError, "unknown level '" + std::string(lhs.substr(at + 1)) + "'", number);
    rule.level = *level;

    std::string_view values;
    if (auto bracket = rhs.find('['); bracket != std::string_view::npos) {
      if (!rhs.ends_with(']')) throw Error(ErrorKind::SyntaxError, "unterminated value table", number);
      values = trim(rhs.substr(bracket + 1, rhs.size() - bracket - 2));
      rhs = trim(rhs.substr(0, bracket));
      if (!values.starts_with("values:")) throw Error(ErrorKind::SyntaxError, "expected 'values:'", number);
      values = trim(values.substr(7));
    }
    if (rhs.empty() || rhs.find_first_of(" \t") != std::string_view::npos) {
      throw Error(ErrorKind::SyntaxError, "bad target category '" + std::string(rhs) + "'", number);
    }
    rule.target = std::string(rhs);
    if (!values.empty()) {
      for (auto pair : split(values, ',')) {
        const auto eq = pair.find('=');
        if (eq == std::string_view::npos) throw Error(ErrorKind::SyntaxError, "expected 'a=b' in value table", number);
        auto key = std::string(trim(pair.substr(0, eq)));
        if (!rule.values.emplace(key, std::string(trim(pair.substr(eq + 1)))).second) {
          throw Error(ErrorKind::SyntaxError, "value '" + key + "' rewritten twice", number);
        }
      }
    }
    if (mapping.find(rule.source, rule.level)) {
      throw Error(ErrorKind::SyntaxError, "duplicate rule for " + rule.source, number);
    }
    mapping.rules.push_back(std::move(rule));
  });
  return mapping;
}

TreeMapping map_categories(const GmtNode& tree, const CategoryMapping& mapping,
                           const DataCategorySelection& target) {
  for (const auto& r : mapping.rules) {
    if (!target.find(r.target)) {
      throw Error(ErrorKind::MappingError, "rule target " + r.target + " missing from selection " + target.name());
    }
  }
  TreeMapping result;
  TreeMapper mapper(mapping, target, result.dropped);
  result.tree = mapper.map_struct(tree, std::string(level_name(Level::Collection)));
  return result;
}

CollectionMapping map_categories(const TermCollection& collection, const CategoryMapping& mapping,
                                 const DataCategorySelection& target) {
  auto mapped = map_categories(from_model(collection), mapping, target);
  return {to_model(mapped.tree, collection.id_prefix()), std::move(mapped.dropped)};
}

}  // namespace termfuse

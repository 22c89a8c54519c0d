#pragma once

// Data Category Selection: admissible categories, their datatypes and the
// levels they may attach to; validation of collections against a selection;
// category mappings between dialects.

#include <map>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "termfuse/gmt.hpp"
#include "termfuse/model.hpp"

namespace termfuse {

enum class Datatype { PlainText, LanguageCode, Date, PicklistValue };

std::string_view datatype_name(Datatype type) noexcept;

struct DataCategory {
  std::string name;
  Datatype datatype = Datatype::PlainText;
  std::vector<std::string> picklist;  // non-empty iff datatype == PicklistValue
  std::set<Level> levels;
  bool provenance_allowed = false;  // may carry a source companion / provenance

  bool admits(Level level) const { return levels.contains(level); }
  bool operator==(const DataCategory&) const = default;
};

class DataCategorySelection {
 public:
  explicit DataCategorySelection(std::string name = {}) : name_(std::move(name)) {}

  const std::string& name() const noexcept { return name_; }
  const std::map<std::string, DataCategory, std::less<>>& categories() const noexcept { return categories_; }
  const DataCategory* find(std::string_view name) const;

  // Throws DuplicateCategory or BadPicklist.
  void add(DataCategory category);

 private:
  std::string name_;
  std::map<std::string, DataCategory, std::less<>> categories_;
};

// Line format:
//   DCS <name>
//   <name> | <datatype> | <level,level,...> [| picklist: v1,v2,...] [| sourced]
// `#` starts a comment line. Throws SyntaxError, DuplicateCategory, BadPicklist.
DataCategorySelection load_dcs(std::string_view text);

// The shipped core selection (core/data/default.dcs).
const DataCategorySelection& default_dcs();
std::string_view default_dcs_text() noexcept;

enum class ViolationKind { UnknownCategory, Level, Datatype, Picklist, Provenance };

struct CategoryViolation {
  std::string node;
  std::string category;
  ViolationKind kind = ViolationKind::UnknownCategory;
  std::string message;

  bool operator==(const CategoryViolation&) const = default;
};

// One violation per offending (node, category) attachment. Structural values
// (term, languageIdentifier, provenance members, relations) are checked as
// the categories they serialize to.
std::vector<CategoryViolation> validate(const TermCollection& collection,
                                        const DataCategorySelection& selection);

struct MappingRule {
  std::string source;
  Level level = Level::TermSection;
  std::string target;
  std::map<std::string, std::string> values;  // value rewrite table

  bool operator==(const MappingRule&) const = default;
};

struct CategoryMapping {
  std::vector<MappingRule> rules;

  const MappingRule* find(std::string_view source, Level level) const;
};

// Line format: `<srcName>@<level> -> <dstName> [values: a=b,c=d]`.
// Throws SyntaxError (also for duplicate rules or rewrite keys).
CategoryMapping load_mapping(std::string_view text);

struct DroppedCategory {
  std::string node;  // nearest enclosing xml:id, or level name
  std::string category;
  Level level = Level::TermSection;

  bool operator==(const DroppedCategory&) const = default;
};

struct TreeMapping {
  GmtNode tree;
  std::vector<DroppedCategory> dropped;
};

struct CollectionMapping {
  TermCollection collection;
  std::vector<DroppedCategory> dropped;
};

// Renames/rewrites features per `mapping`. Features without a rule pass
// through when `target` admits them at their level and are dropped (and
// reported) otherwise; dropping a bracket head drops the whole bracket.
// Global information is copied verbatim. Throws MappingError when a rule
// targets a category the target selection lacks.
TreeMapping map_categories(const GmtNode& tree, const CategoryMapping& mapping,
                           const DataCategorySelection& target);
CollectionMapping map_categories(const TermCollection& collection, const CategoryMapping& mapping,
                                 const DataCategorySelection& target);

}  // namespace termfuse

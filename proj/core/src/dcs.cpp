#include "termfuse/dcs.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>

#include "termfuse/categories.hpp"
#include "termfuse/error.hpp"
#include "text_util.hpp"

namespace termfuse {

namespace detail {
extern const std::string_view kDefaultDcsText;
}

namespace {

namespace cat = category;
using detail::split;
using detail::trim;

std::optional<Datatype> parse_datatype(std::string_view s) {
  if (s == "plainText") return Datatype::PlainText;
  if (s == "languageCode") return Datatype::LanguageCode;
  if (s == "date") return Datatype::Date;
  if (s == "picklistValue") return Datatype::PicklistValue;
  return std::nullopt;
}

bool is_iso_date(std::string_view s) {
  if (s.size() != 10 || s[4] != '-' || s[7] != '-') return false;
  auto number = [&](std::size_t pos, std::size_t len, int& out) {
    auto [ptr, ec] = std::from_chars(s.data() + pos, s.data() + pos + len, out);
    return ec == std::errc{} && ptr == s.data() + pos + len;
  };
  int y = 0, m = 0, d = 0;
  if (!number(0, 4, y) || !number(5, 2, m) || !number(8, 2, d)) return false;
  const std::chrono::year_month_day ymd{std::chrono::year{y}, std::chrono::month{static_cast<unsigned>(m)},
                                        std::chrono::day{static_cast<unsigned>(d)}};
  return ymd.ok();
}

class Validator {
 public:
  Validator(const DataCategorySelection& selection, std::vector<CategoryViolation>& out)
      : selection_(selection), out_(out) {}

  void check(const std::string& node, Level level, std::string_view category, std::string_view value,
             bool sourced) {
    const DataCategory* dc = selection_.find(category);
    const std::string name{category};
    if (!dc) {
      emit(node, name, ViolationKind::UnknownCategory, "unknown category " + name);
      return;
    }
    if (!dc->admits(level)) {
      emit(node, name, ViolationKind::Level,
           name + " not admissible at " + std::string(level_name(level)));
      return;
    }
    switch (dc->datatype) {
      case Datatype::PlainText:
        break;
      case Datatype::LanguageCode:
        if (!is_language_code(value)) {
          emit(node, name, ViolationKind::Datatype,
               name + " value '" + std::string(value) + "' is not a two-letter code");
          return;
        }
        break;
      case Datatype::Date:
        if (!is_iso_date(value)) {
          emit(node, name, ViolationKind::Datatype,
               name + " value '" + std::string(value) + "' is not an ISO-8601 date");
          return;
        }
        break;
      case Datatype::PicklistValue:
        if (std::find(dc->picklist.begin(), dc->picklist.end(), value) == dc->picklist.end()) {
          emit(node, name, ViolationKind::Picklist,
               name + " value '" + std::string(value) + "' not in picklist");
          return;
        }
        break;
    }
    if (sourced && !dc->provenance_allowed) {
      emit(node, name, ViolationKind::Provenance, name + " may not carry a source or provenance");
    }
  }

  void provenance(const std::string& node, Level level, const ProvenanceBlock& p) {
    check(node, level, cat::kOriginatingInstitution, p.institution, false);
    if (!p.database.empty()) check(node, level, cat::kOriginatingDatabaseName, p.database, false);
    if (p.bibliographic_source) check(node, level, cat::kSource, *p.bibliographic_source, false);
    if (p.last_modified) check(node, level, cat::kLastModificationDate, *p.last_modified, false);
    if (p.native_pointer) check(node, level, cat::kNativePointer, format_pointer(*p.native_pointer), false);
  }

  void features(const std::string& node, Level level, const std::vector<Feature>& features) {
    for (const auto& f : features) {
      check(node, level, f.category, f.value, !f.is_plain());
      if (f.source) check(node, level, cat::kSource, *f.source, false);
      for (const auto& p : f.provenance) provenance(node, level, p);
    }
  }

  void entry(const TermEntry& e) {
    features(e.id, Level::Entry, e.features);
    for (const auto& r : e.relations) {
      check(e.id, Level::Entry, category_of(r.kind), r.target, false);
      check(e.id, Level::Entry, cat::kTypology, r.typology, false);
      provenance(e.id, Level::Entry, r.provenance);
    }
    for (const auto& ls : e.lang_sections) {
      const std::string lnode = e.id + "/" + ls.language;
      check(lnode, Level::LanguageSection, cat::kLanguageIdentifier, ls.language, false);
      features(lnode, Level::LanguageSection, ls.features);
      for (const auto& ts : ls.term_sections) {
        check(ts.id, Level::TermSection, cat::kTerm, ts.term, false);
        features(ts.id, Level::TermSection, ts.features);
        for (const auto& p : ts.provenance) provenance(ts.id, Level::TermSection, p);
        for (const auto& r : ts.relations) {
          check(ts.id, Level::TermSection, cat::kDescriptorOf, r.target, false);
          provenance(ts.id, Level::TermSection, r.provenance);
        }
        for (const auto& c : ts.components) {
          const std::string cnode = ts.id + "/component";
          check(cnode, Level::TermComponentSection, cat::kTermComponent, c.text, false);
          features(cnode, Level::TermComponentSection, c.features);
        }
      }
    }
  }

 private:
  void emit(const std::string& node, const std::string& category, ViolationKind kind, std::string message) {
    out_.push_back({node, category, kind, std::move(message)});
  }

  const DataCategorySelection& selection_;
  std::vector<CategoryViolation>& out_;
};

}  // namespace

std::string_view datatype_name(Datatype type) noexcept {
  switch (type) {
    case Datatype::PlainText: return "plainText";
    case Datatype::LanguageCode: return "languageCode";
    case Datatype::Date: return "date";
    case Datatype::PicklistValue: return "picklistValue";
  }
  return {};
}

const DataCategory* DataCategorySelection::find(std::string_view name) const {
  auto it = categories_.find(name);
  return it == categories_.end() ? nullptr : &it->second;
}

void DataCategorySelection::add(DataCategory category) {
  if (category.datatype == Datatype::PicklistValue && category.picklist.empty()) {
    throw Error(ErrorKind::BadPicklist, "picklist category " + category.name + " has no values");
  }
  if (category.datatype != Datatype::PicklistValue && !category.picklist.empty()) {
    throw Error(ErrorKind::BadPicklist, category.name + " declares a picklist but is not picklistValue");
  }
  if (category.levels.empty()) {
    throw Error(ErrorKind::SyntaxError, category.name + " declares no levels");
  }
  auto name = category.name;
  if (!categories_.emplace(name, std::move(category)).second) {
    throw Error(ErrorKind::DuplicateCategory, "category " + name + " declared twice");
  }
}

DataCategorySelection load_dcs(std::string_view text) {
  std::optional<DataCategorySelection> selection;
  detail::for_each_line(text, [&](std::size_t number, std::string_view raw) {
    const auto line = trim(raw);
    if (line.empty() || line.front() == '#') return;
    if (!selection) {
      if (!line.starts_with("DCS ") || trim(line.substr(4)).empty()) {
        throw Error(ErrorKind::SyntaxError, "expected header 'DCS <name>'", number);
      }
      selection.emplace(std::string(trim(line.substr(4))));
      return;
    }
    const auto fields = split(line, '|');
    if (fields.size() < 3) {
      throw Error(ErrorKind::SyntaxError, "expected '<name> | <datatype> | <levels>'", number);
    }
    DataCategory dc;
    dc.name = std::string(trim(fields[0]));
    if (dc.name.empty() || dc.name.find_first_of(" \t") != std::string::npos) {
      throw Error(ErrorKind::SyntaxError, "bad category name '" + dc.name + "'", number);
    }
    auto type = parse_datatype(trim(fields[1]));
    if (!type) throw Error(ErrorKind::SyntaxError, "unknown datatype '" + std::string(trim(fields[1])) + "'", number);
    dc.datatype = *type;
    for (auto level : split(fields[2], ',')) {
      auto parsed = parse_level(trim(level));
      if (!parsed) throw Error(ErrorKind::SyntaxError, "unknown level '" + std::string(trim(level)) + "'", number);
      dc.levels.insert(*parsed);
    }
    bool has_picklist = false;
    for (std::size_t i = 3; i < fields.size(); ++i) {
      auto extra = trim(fields[i]);
      if (extra.starts_with('[') && extra.ends_with(']')) extra = trim(extra.substr(1, extra.size() - 2));
      if (extra == "sourced") {
        dc.provenance_allowed = true;
      } else if (extra.starts_with("picklist:")) {
        has_picklist = true;
        for (auto v : split(extra.substr(9), ',')) {
          if (!trim(v).empty()) dc.picklist.emplace_back(trim(v));
        }
      } else if (!extra.empty()) {
        throw Error(ErrorKind::SyntaxError, "unexpected field '" + std::string(extra) + "'", number);
      }
    }
    if (has_picklist && dc.picklist.empty()) {
      throw Error(ErrorKind::BadPicklist, "picklist of " + dc.name + " is empty", number);
    }
    try {
      selection->add(std::move(dc));
    } catch (const Error& e) {
      throw Error(e.kind(), e.message(), number);
    }
  });
  if (!selection) throw Error(ErrorKind::SyntaxError, "missing 'DCS <name>' header", 1);
  return std::move(*selection);
}

std::string_view default_dcs_text() noexcept { return detail::kDefaultDcsText; }

const DataCategorySelection& default_dcs() {
  static const DataCategorySelection selection = load_dcs(default_dcs_text());
  return selection;
}

std::vector<CategoryViolation> validate(const TermCollection& collection,
                                        const DataCategorySelection& selection) {
  std::vector<CategoryViolation> out;
  Validator v(selection, out);
  for (const auto& e : collection.entries()) v.entry(e);
  return out;
}

}  // namespace termfuse

#include <fstream>

#include "termfuse/error.hpp"
#include "termfuse/gmt.hpp"
#include "termfuse/gmt_model.hpp"
#include "termfuse/ingest.hpp"

namespace termfuse {

namespace {

void point(std::vector<Feature>& features, const Pointer& target) {
  for (auto& f : features) {
    for (auto& p : f.provenance) p.native_pointer = target;
  }
}

}  // namespace

NativeRegistration register_native(const TermCollection& pivoted, const SourceResource& resource,
                                   std::optional<std::string> file_name) {
  NativeRegistration reg{file_name ? std::move(*file_name) : native_file_name(resource.descriptor),
                         serialize_gmt(from_model(pivoted)), pivoted};

  auto global = pivoted.global();
  for (auto& r : global.resources) {
    if (r.institution == resource.descriptor.institution && r.database == resource.descriptor.database) {
      r.native_file = reg.file_name;
    }
  }
  reg.collection.mutable_global() = std::move(global);

  reg.collection.edit_entries([&](std::vector<TermEntry>& entries) {
    for (auto& e : entries) {
      const auto at_entry = Pointer::shorthand(e.id, reg.file_name);
      point(e.features, at_entry);
      for (auto& r : e.relations) r.provenance.native_pointer = at_entry;
      for (auto& ls : e.lang_sections) {
        point(ls.features, at_entry);
        for (auto& ts : ls.term_sections) {
          const auto at_term = Pointer::shorthand(ts.id, reg.file_name);
          for (auto& p : ts.provenance) p.native_pointer = at_term;
          point(ts.features, at_term);
          for (auto& r : ts.relations) r.provenance.native_pointer = at_term;
          for (auto& c : ts.components) point(c.features, at_term);
        }
      }
    }
  });
  return reg;
}

void write_native(const NativeRegistration& registration, const std::filesystem::path& directory) {
  std::error_code ec;
  std::filesystem::create_directories(directory, ec);
  if (ec) throw Error(ErrorKind::IoError, "cannot create " + directory.string() + ": " + ec.message());
  const auto path = directory / registration.file_name;
  std::ofstream out(path, std::ios::binary);
  out << registration.document;
  if (!out) throw Error(ErrorKind::IoError, "cannot write " + path.string());
}

}  // namespace termfuse

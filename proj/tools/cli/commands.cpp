#include "commands.hpp"

#include <ostream>

#include "termfuse/dcs.hpp"
#include "termfuse/fusion.hpp"
#include "termfuse/gmt.hpp"
#include "termfuse/gmt_model.hpp"
#include "termfuse/ingest.hpp"
#include "termfuse/termbase.hpp"

namespace termfuse::cli {

namespace fs = std::filesystem;

int exit_code(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::InvariantViolation:
    case ErrorKind::DuplicateId:
    case ErrorKind::AmbiguousId:
      return kInternalError;
    default:
      return kInputError;
  }
}

namespace {

template <typename Fn>
int guarded(Streams io, Fn&& body) {
  try {
    return body();
  } catch (const Error& e) {
    io.err << "termfuse: " << e.what() << '\n';
    return exit_code(e.kind());
  } catch (const std::exception& e) {
    io.err << "termfuse: internal error: " << e.what() << '\n';
    return kInternalError;
  }
}

TermCollection load_collection(const fs::path& file) {
  try {
    return to_model(parse_gmt(read_file(file)));
  } catch (const Error& e) {
    throw Error(e.kind(), file.string() + ": " + e.message(), e.line());
  }
}

std::string serialize(const TermCollection& collection) { return serialize_gmt(from_model(collection)); }

}  // namespace

int cmd_import(const WorkspaceConfig& config, std::span<const fs::path> files, Streams io) {
  return guarded(io, [&] {
    for (const auto& file : files) {
      SourceResource resource;
      try {
        resource = parse_source(read_file(file));
      } catch (const Error& e) {
        throw Error(e.kind(), file.string() + ": " + e.message(), e.line());
      }
      for (const auto& w : resource.warnings) io.err << file.string() << ": warning: " << w << '\n';

      PivotPolicy policy;
      policy.uf_handling = config.uf_handling;
      const auto registration = register_native(pivot(resource, policy), resource, file.stem().string() + ".native.gmt");
      write_native(registration, config.output_dir);
      const auto pivoted = config.output_dir / (file.stem().string() + ".gmt");
      write_file(pivoted, serialize(registration.collection));
      io.out << "imported " << file.filename().string() << ": " << registration.collection.size() << " entries -> "
             << pivoted.filename().string() << ", " << registration.file_name << '\n';
    }
    return kOk;
  });
}

int cmd_fuse(const WorkspaceConfig& config, std::span<const fs::path> files, Streams io) {
  return guarded(io, [&] {
    std::vector<TermCollection> inputs;
    for (const auto& file : files) inputs.push_back(load_collection(file));
    const auto result = fuse(inputs, config.fusion);
    write_file(config.output_dir / "fused.gmt", serialize(result.collection));
    write_file(config.output_dir / "fusion-report.txt", result.report.to_text());
    io.out << "fused " << result.report.entries_in << " entries into " << result.collection.size()
           << " (merges " << result.report.merges.size() << ", conflicts " << result.report.conflicts.size()
           << ", dropped edges " << result.report.dropped_edges.size() << ")\n";
    return kOk;
  });
}

int cmd_validate(const WorkspaceConfig& config, const fs::path& file, Streams io) {
  return guarded(io, [&] {
    const auto collection = load_collection(file);
    const DataCategorySelection selection =
        config.dcs_path ? load_dcs(read_file(*config.dcs_path)) : default_dcs();
    std::size_t findings = 0;
    for (const auto& v : check_structure(collection)) {
      io.out << "INVARIANT " << v.node << ' ' << v.rule << ": " << v.message << '\n';
      ++findings;
    }
    for (const auto& v : validate(collection, selection)) {
      io.out << "DCS " << v.node << ' ' << v.category << ": " << v.message << '\n';
      ++findings;
    }
    io.out << file.filename().string() << ": " << findings << (findings == 1 ? " violation\n" : " violations\n");
    return findings ? kFindings : kOk;
  });
}

int cmd_query(const WorkspaceConfig& config, const fs::path& file, const std::string& term,
              const std::optional<std::string>& language, const std::vector<std::string>& expand, Streams io) {
  return guarded(io, [&] {
    auto collection = load_collection(file);
    collection.freeze();
    std::optional<std::string_view> lang;
    if (language) lang = *language;
    for (const auto& id : lookup(collection, term, lang, config.fusion.normalization)) {
      if (expand.empty()) {
        io.out << id << '\n';
      } else {
        io.out << id << '\t' << expand_query(collection, id, expand).rendered << '\n';
      }
    }
    return kOk;
  });
}

int cmd_export(const WorkspaceConfig& config, const fs::path& file, const std::string& institution,
               const std::optional<std::string>& database, Streams io) {
  return guarded(io, [&] {
    const auto collection = load_collection(file);
    std::optional<std::string_view> db;
    if (database) db = *database;
    const auto exported = export_by_source(collection, institution, db);
    auto name = slugify(institution);
    if (database) name += "-" + slugify(*database);
    const auto path = config.output_dir / (name + ".export.gmt");
    write_file(path, serialize(exported));
    io.out << "exported " << exported.size() << " entries -> " << path.filename().string() << '\n';
    return kOk;
  });
}

int cmd_diff(const WorkspaceConfig&, const fs::path& old_file, const fs::path& new_file,
             const std::optional<std::string>& date, Streams io) {
  return guarded(io, [&] {
    const auto updates = diff_native(read_file(old_file), read_file(new_file), old_file.filename().string(),
                                     date.value_or(std::string()));
    io.out << updates.to_text();
    return kOk;
  });
}

}  // namespace termfuse::cli

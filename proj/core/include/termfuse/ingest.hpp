#pragma once

// Term-centred source resources (TSF text format) and their pivot into
// concept-oriented collections.

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "termfuse/model.hpp"

namespace termfuse {

// Definition or context text with its bibliographic source.
struct SourcedText {
  std::string text;
  std::optional<std::string> source;
  std::vector<Annotation> annotations;

  bool operator==(const SourcedText&) const = default;
};

struct SourceRecord {
  std::string native_id;
  std::string descriptor_term;
  std::string language;
  std::vector<std::string> uf_terms;
  std::optional<std::string> use_target;
  std::vector<std::string> bt;
  std::vector<std::string> nt;
  std::vector<std::string> rt;
  std::vector<SourcedText> definitions;
  std::vector<SourcedText> contexts;
  std::vector<std::pair<std::string, std::string>> translations;  // (language, term)
  std::size_t line = 0;

  bool is_descriptor() const noexcept { return !use_target; }
};

struct SourceResource {
  ResourceDescriptor descriptor;
  std::vector<SourceRecord> records;
  std::vector<std::string> warnings;  // dangling BT/NT/RT/USE references

  const SourceRecord* find(std::string_view native_id) const;
};

// TSF: UTF-8, blank-line separated blocks. First line
// `RESOURCE: <institution>|<database>|<citation?>`; record lines `KEY: value`
// with KEY in {ID, DE, LANG, UF, USE, BT, NT, RT, DEF, DEFSRC, CTX, CTXSRC, TR}.
// TR values are `lang=term`; CTX values may mark spans as `{type|text}`.
// Throws SyntaxError (with line) or DuplicateNativeId.
SourceResource parse_source(std::string_view text);

enum class UfHandling { SynonymCapture, SplitNonPreferred };

std::string_view to_string(UfHandling handling) noexcept;
std::optional<UfHandling> parse_uf_handling(std::string_view text) noexcept;

struct PivotPolicy {
  UfHandling uf_handling = UfHandling::SynonymCapture;
  std::string typology_label;  // empty: the database name
  std::string id_prefix;       // empty: derived from the institution
};

// Semasiological records -> one entry per concept. Throws DanglingReference
// for unresolved USE targets and InvariantViolation from the model.
TermCollection pivot(const SourceResource& resource, const PivotPolicy& policy = {});

// Lower-case ASCII slug ("Vocabulaire multidisciplinaire PASCAL" ->
// "vocabulaire-multidisciplinaire-pascal").
std::string slugify(std::string_view text);
std::string default_id_prefix(const ResourceDescriptor& descriptor);
std::string native_file_name(const ResourceDescriptor& descriptor);

struct NativeRegistration {
  std::string file_name;
  std::string document;       // the pivoted resource as its own GMT document
  TermCollection collection;  // provenance wired to the native document
};

// Serializes the pivoted resource as its native GMT document and points
// every provenance block at the node (term section or entry) it documents.
// `file_name` defaults to native_file_name(resource.descriptor).
NativeRegistration register_native(const TermCollection& pivoted, const SourceResource& resource,
                                   std::optional<std::string> file_name = std::nullopt);

// Writes `registration.document` under `directory`. Throws IoError.
void write_native(const NativeRegistration& registration, const std::filesystem::path& directory);

}  // namespace termfuse

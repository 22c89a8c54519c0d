#pragma once

#include <string>

#include "termfuse/gmt.hpp"
#include "termfuse/model.hpp"

namespace termfuse {

// GMT tree -> model. Provenance brackets are those headed by
// originatingInstitution; brackets headed by broaderConcept/relatedConcept
// (entry level) or descriptorOf (term level) are relations; any other
// bracket is a feature with its source companion and provenance.
// `id_prefix` drives ids for entries lacking xml:id.
// Throws Error{MappingError} (and DuplicateId/InvariantViolation from the model).
TermCollection to_model(const GmtNode& tree, std::string id_prefix = "BV");

// Model -> canonical GMT tree. globalInformation is emitted as the first
// child struct unless the global information is entirely empty.
GmtNode from_model(const TermCollection& collection);

}  // namespace termfuse

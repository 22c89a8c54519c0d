#pragma once

#include <string_view>

// Data-category names used structurally by the model and the GMT mapping.
namespace termfuse::category {

inline constexpr std::string_view kTerm = "term";
inline constexpr std::string_view kLanguageIdentifier = "languageIdentifier";
inline constexpr std::string_view kContext = "context";
inline constexpr std::string_view kDefinition = "definition";
inline constexpr std::string_view kSource = "source";
inline constexpr std::string_view kTermType = "termType";
inline constexpr std::string_view kAdministrativeStatus = "administrativeStatus";
inline constexpr std::string_view kVariant = "variant";
inline constexpr std::string_view kTermComponent = "termComponent";

inline constexpr std::string_view kOriginatingInstitution = "originatingInstitution";
inline constexpr std::string_view kOriginatingDatabaseName = "originatingDatabaseName";
inline constexpr std::string_view kLastModificationDate = "lastModificationDate";
inline constexpr std::string_view kNativePointer = "nativePointer";

inline constexpr std::string_view kBroaderConcept = "broaderConcept";
inline constexpr std::string_view kRelatedConcept = "relatedConcept";
inline constexpr std::string_view kTypology = "typology";
inline constexpr std::string_view kDescriptorOf = "descriptorOf";

// Global information
inline constexpr std::string_view kTitle = "title";
inline constexpr std::string_view kDcsName = "dcsName";
inline constexpr std::string_view kNativeFile = "nativeFile";

// Picklist values
inline constexpr std::string_view kFullForm = "fullForm";
inline constexpr std::string_view kPreferredTerm = "preferredTerm";
inline constexpr std::string_view kAdmittedTerm = "admittedTerm";

}  // namespace termfuse::category

#pragma once

#include <string>
#include <vector>

#include <json.hpp>

namespace vaxalloc {

struct SchemaViolation {
  std::string path;  // JSON pointer of the offending value, "" for the root
  std::string message;
};

// Validates `instance` against `schema`. Supports the keyword subset used by
// the shipped dataset schema: type, enum, required, properties,
// additionalProperties (boolean or schema), items, minItems, minLength,
// minimum and exclusiveMinimum. Unknown keywords are ignored.
std::vector<SchemaViolation> validate_against_schema(const nlohmann::ordered_json& schema,
                                                     const nlohmann::ordered_json& instance);

// The dataset schema compiled into the library.
const nlohmann::ordered_json& district_schema();

}  // namespace vaxalloc

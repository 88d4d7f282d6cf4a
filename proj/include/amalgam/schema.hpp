#pragma once

#include <string>
#include <vector>

#include "amalgam/json_io.hpp"

namespace amalgam {

// Validator for the keyword subset used by docs/schemas: $ref (within the
// shipped set), anyOf, type, enum, minimum, maximum, required, properties,
// additionalProperties, items, minItems, maxItems.  Annotation keywords are
// ignored; any other keyword is an error when the schema is loaded.

std::vector<std::string> schema_names();

// Parsed and checked schema; ref is "name.json" or "name.json#/definitions/x".
const Json &schema(const std::string &ref);

// Messages of the form "<json pointer>: <problem>", empty when doc conforms.
std::vector<std::string> schema_violations(const Json &doc, const std::string &ref);

// Throws ValidationError with one field per violation.
void require_schema(const Json &doc, const std::string &ref);

} // namespace amalgam

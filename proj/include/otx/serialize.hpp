#pragma once

#include <string>

#include "otx/chartable.hpp"
#include "otx/machine.hpp"

namespace otx {

/// Schema identifier written into every document.
inline const std::string kFormatTag = "otx/1";

/// Deterministic pretty-printed JSON document for any machine kind.
std::string machine_to_json(const Machine& m);

/// Parse and validate a document produced by machine_to_json (or written
/// by hand to the same schema). Malformed documents raise ParseError with
/// position context; semantic violations raise ValidationError.
Machine machine_from_json(const std::string& text);

/// Load from a file path, or parse directly when the argument itself is a
/// JSON object (starts with '{').
Machine load_machine(const std::string& path_or_inline);

void save_machine(const Machine& m, const std::string& path);

/// Debugging view of a table (write-only; not parsed back).
std::string chartable_to_json(const CharTable& t);

}  // namespace otx

#pragma once

// JSON interchange.  Rationals travel as "p/q" strings; integers and
// decimals are accepted on input.

#include <string>

#include "json.hpp"
#include "modblob/curves.hpp"
#include "modblob/diagram.hpp"
#include "modblob/family.hpp"
#include "modblob/invariants.hpp"
#include "modblob/rewriting.hpp"

namespace modblob {

using Json = nlohmann::json;

Json to_json(const StrandDiagram& diagram);
Json to_json(const BlobDiagram& blob);  // diagram plus "faces"
Json to_json(const ValidationReport& report);
Json to_json(const InvariantReport& report);
Json to_json(const Move& move);
Json to_json(const MoveTrace& trace);
Json to_json(const PolynomialFamily& family);
Json to_json(const ParametricCurveSet& curves);

/// Throws Error(MalformedInput) on anything unexpected.
StrandDiagram diagram_from_json(const Json& j);
/// Uses the "faces" field when present, otherwise fills from orientation.
BlobDiagram blob_from_json(const Json& j);
bool has_faces(const Json& j);
Move move_from_json(const Json& j);
MoveTrace trace_from_json(const Json& j);
InvariantReport report_from_json(const Json& j);
PolynomialFamily family_from_json(const Json& j);
ParametricCurveSet curves_from_json(const Json& j);

/// Parses text; throws Error(MalformedInput).
Json parse_json(const std::string& text);
/// Stable pretty print (sorted keys, two-space indent, trailing newline).
std::string dump(const Json& j);

}  // namespace modblob

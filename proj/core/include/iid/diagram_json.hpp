#pragma once

#include <iosfwd>
#include <string>

#include "iid/diagram.hpp"

namespace iid {

/// Decodes a diagram from its JSON document form:
///
///   {"nodes":[{"id":"Y","outcomes":["y1","y2"],"parents":[],
///              "lower_bounds":{"":[0.2,0.7]}}, ...]}
///
/// Context keys are parent outcome labels joined by "," in the table's
/// parent order; the root context key is the empty string. Numbers are
/// decimal literals parsed as 64-bit floating point.
///
/// Throws ParseError on malformed documents. Semantic defects (bad sums,
/// cycles, missing contexts, ...) load fine and are left to
/// validate_diagram, so they can be reported exhaustively.
InfluenceDiagram diagram_from_json(const std::string& text);

/// Reads and decodes a diagram file. Throws ParseError when the file cannot
/// be read or decoded.
InfluenceDiagram load_diagram(const std::string& path);

/// Encodes a diagram back into the document form accepted by
/// diagram_from_json.
std::string diagram_to_json(const InfluenceDiagram& d);

}  // namespace iid

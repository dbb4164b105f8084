#pragma once

#include <string>

#include "eqtree/automorphism.hpp"
#include "eqtree/quotient.hpp"
#include "eqtree/reduction.hpp"
#include "json.hpp"

namespace eqtree::io {

using json = nlohmann::json;

enum class DocumentKind { Instance, Quotient, Graph };

// Instance: {"n", "k", "mode", "edges": [[u, v, color]...], "perm": [...]}
// Quotient: {"m", "k", "weights", "edges": [[a, b, color]...], "loop": null | {"vertex", "color"}}
// Graph:    {"nv", "edges": [[a, b]...], "provenance"?: [...], "k"?: int}
// Unknown fields are rejected; errors carry a JSON path.
DocumentKind detect_kind(const json& doc);

EquippedColoredTree parse_instance(const json& doc);
json to_json(const EquippedColoredTree& et);

QuotientTree parse_quotient(const json& doc);
json to_json(const QuotientTree& q);

// Returns the graph and the optional "k" hint. Provenance, if present, is
// checked for shape but not used.
SimpleGraph parse_graph(const json& doc, Color* k_hint = nullptr);
json to_json(const SimpleGraph& g);

json read_file(const std::string& path);  // throws Error(ParseError) with the byte offset
void write_file(const std::string& path, const json& doc);

}  // namespace eqtree::io

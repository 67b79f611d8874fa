#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include <json.hpp>

#include "hyperfacet/facets.hpp"

namespace hyperfacet {

// Canonical hypergraph JSON plus, per edge, "edge_source" (raw) or
// "class" and "weight" (reduced), and "empty". Top level carries
// "facet":{"type","ref"} and "reduced".
nlohmann::json facet_to_json(const RawFacet& raw);
nlohmann::json facet_to_json(const ReducedFacet& reduced);

// Keeps the k heaviest edges, ties broken by id. Adds "truncated_from"
// with the original edge count when anything was cut. Vertices stay.
nlohmann::json keep_top_edges(nlohmann::json facet, std::size_t k);

// Switched facet JSON plus "s_a_count" and "reference_values".
nlohmann::json switch_to_json(const SwitchResult& result, bool reduced);

// GraphML via bipartite expansion: each hyperedge becomes an edge-node
// linked to its member vertices.
std::string facet_to_graphml(const RawFacet& raw);
std::string facet_to_graphml(const ReducedFacet& reduced);

// Structural check of an exported facet document. Empty when valid.
std::vector<std::string> validate_facet_json(const nlohmann::json& j);

// The one serialization used for API bodies and CLI output.
std::string to_body(const nlohmann::json& j);

} // namespace hyperfacet

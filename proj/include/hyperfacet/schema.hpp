#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "hyperfacet/hypergraph.hpp"

namespace hyperfacet {

using TypeName = std::string;
using TypeSet = VertexSet;

/// Schema hypergraph over metadata types. Vertices are type names, each
/// hyperedge records a group of types that are related in the dataset.
struct SchemaHypergraph {
    Hypergraph carrier;
    std::map<TypeName, std::string, std::less<>> vertex_labels;
    std::map<EdgeId, std::string, std::less<>> edge_labels;
    // candidate reference types offered to navigation
    TypeSet reference_types;
    // type that mirrors the physical reference of each record, if any
    std::optional<TypeName> ref_type;

    bool has_type(std::string_view t) const { return carrier.vertices.contains(t); }
    // Falls back to the type name itself.
    std::string label_of(std::string_view t) const;
    // Adds t as an isolated type. No-op if already present.
    void add_type(const TypeName& t);

    friend bool operator==(const SchemaHypergraph&, const SchemaHypergraph&) = default;
};

// Deterministic edge id for a type group, used when the input gives none.
EdgeId group_edge_id(const TypeSet& members);

// Schema file: {"types":[name | {"name","label"}],
//   "edges":[{"id"?,"members":[...],"label"?}], "reference_types":[...],
//   "ref_type"?}. Throws Error(MalformedSchema | UnknownType).
SchemaHypergraph schema_from_json(const nlohmann::json& j);
nlohmann::json schema_to_json(const SchemaHypergraph& s);

struct ExtractedSchema {
    Hypergraph carrier;
    TypeSet selected;
};

/// Extracted schema for the selected types U: each schema edge e becomes
/// e ∩ U. Throws Error(EmptySelection) for an empty U and Error(UnknownType)
/// for types outside the schema.
ExtractedSchema extract_schema(const SchemaHypergraph& schema, const TypeSet& u,
                               EmptyEdges policy = EmptyEdges::Drop);

/// One hyperedge per connected component of the extracted schema, holding
/// the union of that component's edge images. Types in no extracted edge
/// stay as isolated vertices without a reachability edge.
struct ReachabilityHypergraph {
    Hypergraph carrier;
    std::map<EdgeId, std::set<EdgeId, std::less<>>, std::less<>> component_edges;
    TypeSet isolated;

    // Reachability edge holding t, or nullptr if t is isolated or unknown.
    const Hyperedge* component_of(std::string_view t) const;
};

ReachabilityHypergraph build_reachability(const ExtractedSchema& x);

// Maximum |R_ref| accepted by build_navigation (2^20 - 1 edges).
inline constexpr std::size_t kMaxReferenceTypes = 20;

/// Navigation hypergraph over one reachability edge: for every non-empty
/// subset R of the reference types, the edge e_R \ R tagged with R.
struct NavigationHypergraph {
    Hypergraph carrier;
    TypeSet ref_types;
    std::map<EdgeId, TypeSet, std::less<>> edge_refs;
};

NavigationHypergraph build_navigation(const TypeSet& component, const TypeSet& ref_types);

struct FacetPair {
    TypeName cooc_type;  // alpha
    TypeName ref_type;   // rho

    friend bool operator==(const FacetPair&, const FacetPair&) = default;
    friend auto operator<=>(const FacetPair&, const FacetPair&) = default;
};

// All (alpha, rho) with alpha in the edge and rho in its removed set, sorted.
std::vector<FacetPair> facet_pairs(const NavigationHypergraph& nav, std::string_view edge_id);

// True when every type lies in one reachability component of the full
// schema, i.e. a single navigation can reach all of them.
bool navigable_together(const SchemaHypergraph& schema, const TypeSet& types);

nlohmann::json to_json(const ExtractedSchema& x);
nlohmann::json to_json(const ReachabilityHypergraph& r);
nlohmann::json to_json(const NavigationHypergraph& n);

} // namespace hyperfacet

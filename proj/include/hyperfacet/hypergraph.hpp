#pragma once

#include <map>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <json.hpp>

namespace hyperfacet {

using VertexId = std::string;
using EdgeId = std::string;
using VertexSet = std::set<VertexId, std::less<>>;

struct Hyperedge {
    EdgeId id;
    VertexSet members;

    bool empty() const { return members.empty(); }
    friend bool operator==(const Hyperedge&, const Hyperedge&) = default;
};

// Whether restriction keeps hyperedges whose intersection with the kept
// vertices is empty.
enum class EmptyEdges { Drop, Keep };

/// A finite hypergraph (V, E, i). Edges form a family: two edges may carry
/// the same member set as long as their ids differ. The incidence function
/// is the `members` field of each edge.
///
/// Construction is permissive; `validate` reports every broken invariant.
/// Operations in this library emit edges sorted by id.
struct Hypergraph {
    VertexSet vertices;
    std::vector<Hyperedge> edges;
    bool allow_empty_edges = true;

    Hypergraph() = default;
    explicit Hypergraph(VertexSet vs, bool allow_empty = true)
        : vertices(std::move(vs)), allow_empty_edges(allow_empty) {}

    void add_vertex(VertexId v) { vertices.insert(std::move(v)); }
    void add_edge(EdgeId id, VertexSet members) {
        edges.push_back(Hyperedge{std::move(id), std::move(members)});
    }

    const Hyperedge* find_edge(std::string_view id) const;
    // Throws Error(UnknownEdge).
    const VertexSet& incidence(std::string_view id) const;

    void sort_edges();

    friend bool operator==(const Hypergraph&, const Hypergraph&) = default;
};

struct WeightedHypergraph {
    Hypergraph base;
    std::map<EdgeId, double, std::less<>> weight;

    double weight_of(std::string_view id) const;

    friend bool operator==(const WeightedHypergraph&, const WeightedHypergraph&) = default;
};

enum class ViolationKind {
    EmptyVertexId,
    EmptyEdgeId,
    DuplicateEdgeId,
    UnknownMember,
    EmptyEdge,
    MissingWeight,
    NonPositiveWeight,
    WeightWithoutEdge,
};

std::string_view to_string(ViolationKind kind);

struct Violation {
    ViolationKind kind;
    std::string subject;  // offending edge or vertex id
    std::string detail;
};

using ValidationReport = std::vector<Violation>;

ValidationReport validate(const Hypergraph& h);
ValidationReport validate(const WeightedHypergraph& h);

/// Restriction to a vertex subset: every edge e becomes e ∩ u under the
/// same id. Throws Error(UnknownVertex) if u is not a subset of h's vertices.
Hypergraph restrict(const Hypergraph& h, const VertexSet& u,
                    EmptyEdges policy = EmptyEdges::Drop);

struct Component {
    VertexSet vertices;
    std::set<EdgeId, std::less<>> edges;

    friend bool operator==(const Component&, const Component&) = default;
    friend auto operator<=>(const Component&, const Component&) = default;
};

using ComponentPartition = std::vector<Component>;

/// Connected components of h. Vertices joined by a chain of pairwise
/// intersecting hyperedges share a component. Empty edges belong to no
/// component; vertices outside every non-empty edge are singleton
/// components. Components are ordered by their smallest vertex id.
/// Edge members that are not vertices of h are ignored.
ComponentPartition connected_components(const Hypergraph& h);

struct RepeatedEdges {
    bool repeated = false;
    std::vector<std::pair<EdgeId, EdgeId>> witnesses;
};

RepeatedEdges has_repeated_edges(const Hypergraph& h);

// Canonical JSON: {"vertices":[...],"edges":[{"id","members","weight"?}]},
// every array sorted.
nlohmann::json to_json(const Hypergraph& h);
nlohmann::json to_json(const WeightedHypergraph& h);
Hypergraph hypergraph_from_json(const nlohmann::json& j);
WeightedHypergraph weighted_from_json(const nlohmann::json& j);

// Emits integral weights as JSON integers so exports stay byte-stable.
nlohmann::json weight_to_json(double w);

} // namespace hyperfacet

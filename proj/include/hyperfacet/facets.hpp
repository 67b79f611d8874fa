#pragma once

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "hyperfacet/hypergraph.hpp"
#include "hyperfacet/schema.hpp"
#include "hyperfacet/store.hpp"

namespace hyperfacet {

/// Reference side of a facet alpha/rho over a search S: the values of rho
/// met in S (sigma) and, for each such value v, the references R_v of S
/// that carry it.
struct ReferenceIndex {
    FacetPair facet;
    RefSet search;
    ValueSet sigma;
    std::map<std::string, RefSet, std::less<>> ref_map;

    const RefSet& refs_of(std::string_view value) const;
};

// Throws Error(UnknownType), Error(EmptySearch) for an empty S and
// Error(UnknownReference) for references outside the store.
ReferenceIndex build_reference_index(const DatasetStore& store, const SearchResult& s,
                                     const FacetPair& facet);

/// Raw visualisation hypergraph: one hyperedge per reference value v,
/// holding every alpha value co-occurring with v. The edge id is v itself.
/// Empty hyperedges are kept so the family stays indexed by sigma.
struct RawFacet {
    FacetPair facet;
    Hypergraph carrier;
    std::map<EdgeId, std::string, std::less<>> edge_source;
};

RawFacet build_raw_facet(const ReferenceIndex& index, const DatasetStore& store);

/// Reduced weighted hypergraph: raw hyperedges with equal member sets are
/// merged. `class_map` sends each merged hyperedge to its class of
/// reference values; the weight is the class size. A merged edge is named
/// after the smallest value of its class.
struct ReducedFacet {
    FacetPair facet;
    WeightedHypergraph carrier;
    std::map<EdgeId, ValueSet, std::less<>> class_map;

    const ValueSet& class_of(std::string_view edge) const;
};

ReducedFacet reduce_facet(const RawFacet& raw);
// Merges any repeated images left in an already reduced facet; weights add.
ReducedFacet reduce_facet(const ReducedFacet& reduced);

/// Pivot from the current facet alpha/rho to alpha'/rho through a vertex
/// selection A.
struct SwitchResult {
    VertexSet selection;
    std::vector<EdgeId> selected_edges;      // reduced edges meeting A
    std::vector<ValueSet> selected_classes;  // their classes
    ValueSet reference_values;               // union of those classes
    RefSet search;                           // S_A, union of R_v over them
    RawFacet facet;                          // raw alpha'/rho facet over S_A
    bool empty_selection = false;
};

// An empty A yields an empty, flagged result. Throws Error(UnknownVertex)
// if A holds a vertex outside the current facet, Error(UnknownType) for an
// unknown target, Error(InvalidRequest) if index and facet disagree on rho.
SwitchResult switch_facet(const ReducedFacet& current, const ReferenceIndex& index,
                          const VertexSet& selection, const TypeName& target,
                          const DatasetStore& store);

// Raw alpha'/rho facet for the same search, reusing the index's R_v sets.
RawFacet same_reference_refacet(const ReferenceIndex& index, const TypeName& target,
                                const DatasetStore& store);

RawFacet drop_empty_edges(RawFacet raw);
ReducedFacet drop_empty_edges(ReducedFacet reduced);

} // namespace hyperfacet

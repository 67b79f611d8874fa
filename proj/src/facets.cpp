#include "hyperfacet/facets.hpp"

#include <algorithm>

#include "hyperfacet/error.hpp"

namespace hyperfacet {

namespace {

const RefSet kNoRefs;

void require_type(const DatasetStore& store, const TypeName& t) {
    if (!store.has_type(t)) {
        throw Error(ErrorCode::UnknownType, "type '" + t + "' is not in the schema");
    }
}

// Raw alpha/rho facet over an explicit reference-value family: vertices are
// the alpha values of `search`, one edge per value v in `values`.
RawFacet raw_facet_over(const DatasetStore& store, const FacetPair& facet, const RefSet& search,
                        const ValueSet& values, const ReferenceIndex& index) {
    RawFacet raw;
    raw.facet = facet;
    raw.carrier.allow_empty_edges = true;
    for (const auto& r : search) {
        const ValueSet& a = store.values(r, facet.cooc_type);
        raw.carrier.vertices.insert(a.begin(), a.end());
    }
    for (const auto& v : values) {
        VertexSet members;
        for (const auto& r : index.refs_of(v)) {
            const ValueSet& a = store.values(r, facet.cooc_type);
            members.insert(a.begin(), a.end());
        }
        raw.carrier.add_edge(v, std::move(members));
        raw.edge_source.emplace(v, v);
    }
    // values arrive sorted, so edges are already in id order
    return raw;
}

struct MergedEdge {
    ValueSet klass;
    double weight = 0.0;
};

ReducedFacet assemble(const FacetPair& facet, const VertexSet& vertices,
                      const std::map<VertexSet, MergedEdge>& groups) {
    ReducedFacet out;
    out.facet = facet;
    out.carrier.base = Hypergraph(vertices, true);
    for (const auto& [members, merged] : groups) {
        EdgeId id = *merged.klass.begin();
        out.carrier.base.add_edge(id, members);
        out.carrier.weight.emplace(id, merged.weight);
        out.class_map.emplace(std::move(id), merged.klass);
    }
    out.carrier.base.sort_edges();
    return out;
}

} // namespace

const RefSet& ReferenceIndex::refs_of(std::string_view value) const {
    auto it = ref_map.find(value);
    return it == ref_map.end() ? kNoRefs : it->second;
}

ReferenceIndex build_reference_index(const DatasetStore& store, const SearchResult& s,
                                     const FacetPair& facet) {
    require_type(store, facet.cooc_type);
    require_type(store, facet.ref_type);
    if (s.refs.empty()) {
        throw Error(ErrorCode::EmptySearch, "search result is empty");
    }
    ReferenceIndex index;
    index.facet = facet;
    index.search = s.refs;
    for (const auto& r : s.refs) {
        for (const auto& v : store.values(r, facet.ref_type)) {
            index.sigma.insert(v);
            index.ref_map[v].insert(r);
        }
    }
    return index;
}

RawFacet build_raw_facet(const ReferenceIndex& index, const DatasetStore& store) {
    require_type(store, index.facet.cooc_type);
    return raw_facet_over(store, index.facet, index.search, index.sigma, index);
}

const ValueSet& ReducedFacet::class_of(std::string_view edge) const {
    auto it = class_map.find(edge);
    if (it == class_map.end()) {
        throw Error(ErrorCode::UnknownEdge, "unknown reduced hyperedge '" + std::string(edge) + "'");
    }
    return it->second;
}

ReducedFacet reduce_facet(const RawFacet& raw) {
    std::map<VertexSet, MergedEdge> groups;
    for (const auto& e : raw.carrier.edges) {
        auto& g = groups[e.members];
        g.klass.insert(raw.edge_source.at(e.id));
        g.weight += 1.0;
    }
    return assemble(raw.facet, raw.carrier.vertices, groups);
}

ReducedFacet reduce_facet(const ReducedFacet& reduced) {
    std::map<VertexSet, MergedEdge> groups;
    for (const auto& e : reduced.carrier.base.edges) {
        auto& g = groups[e.members];
        const ValueSet& k = reduced.class_of(e.id);
        g.klass.insert(k.begin(), k.end());
        g.weight += reduced.carrier.weight_of(e.id);
    }
    return assemble(reduced.facet, reduced.carrier.base.vertices, groups);
}

SwitchResult switch_facet(const ReducedFacet& current, const ReferenceIndex& index,
                          const VertexSet& selection, const TypeName& target,
                          const DatasetStore& store) {
    require_type(store, target);
    if (current.facet.ref_type != index.facet.ref_type) {
        throw Error(ErrorCode::InvalidRequest, "facet reference type '" + current.facet.ref_type +
                                                   "' differs from index reference type '" +
                                                   index.facet.ref_type + "'");
    }
    const VertexSet& vertices = current.carrier.base.vertices;
    for (const auto& x : selection) {
        if (!vertices.contains(x)) {
            throw Error(ErrorCode::UnknownVertex, "selected vertex '" + x + "' is not in the current facet");
        }
    }

    SwitchResult out;
    out.selection = selection;
    out.facet.facet = FacetPair{target, index.facet.ref_type};
    if (selection.empty()) {
        out.empty_selection = true;
        return out;
    }

    for (const auto& e : current.carrier.base.edges) {
        const bool meets = std::any_of(e.members.begin(), e.members.end(),
                                       [&](const VertexId& x) { return selection.contains(x); });
        if (!meets) continue;
        const ValueSet& klass = current.class_of(e.id);
        out.selected_edges.push_back(e.id);
        out.selected_classes.push_back(klass);
        out.reference_values.insert(klass.begin(), klass.end());
    }
    for (const auto& v : out.reference_values) {
        if (!index.sigma.contains(v)) {
            throw Error(ErrorCode::InvalidRequest, "class value '" + v + "' is not a reference value of the index");
        }
        const RefSet& rv = index.refs_of(v);
        out.search.insert(rv.begin(), rv.end());
    }
    const FacetPair switched{target, index.facet.ref_type};
    out.facet = raw_facet_over(store, switched, out.search, out.reference_values, index);
    return out;
}

RawFacet same_reference_refacet(const ReferenceIndex& index, const TypeName& target,
                                const DatasetStore& store) {
    require_type(store, target);
    return raw_facet_over(store, FacetPair{target, index.facet.ref_type}, index.search, index.sigma, index);
}

RawFacet drop_empty_edges(RawFacet raw) {
    std::erase_if(raw.carrier.edges, [&](const Hyperedge& e) {
        if (!e.empty()) return false;
        raw.edge_source.erase(e.id);
        return true;
    });
    raw.carrier.allow_empty_edges = false;
    return raw;
}

ReducedFacet drop_empty_edges(ReducedFacet reduced) {
    std::erase_if(reduced.carrier.base.edges, [&](const Hyperedge& e) {
        if (!e.empty()) return false;
        reduced.carrier.weight.erase(e.id);
        reduced.class_map.erase(e.id);
        return true;
    });
    reduced.carrier.base.allow_empty_edges = false;
    return reduced;
}

} // namespace hyperfacet

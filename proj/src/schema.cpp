#include "hyperfacet/schema.hpp"

#include <algorithm>

#include "hyperfacet/error.hpp"

namespace hyperfacet {

using nlohmann::json;

std::string SchemaHypergraph::label_of(std::string_view t) const {
    auto it = vertex_labels.find(t);
    return it == vertex_labels.end() ? std::string(t) : it->second;
}

void SchemaHypergraph::add_type(const TypeName& t) {
    carrier.add_vertex(t);
    vertex_labels.try_emplace(t, t);
}

EdgeId group_edge_id(const TypeSet& members) {
    std::string id;
    for (const auto& m : members) {
        if (!id.empty()) id += '+';
        id += m;
    }
    return id;
}

namespace {

TypeSet type_list(const json& j, const char* field) {
    if (!j.is_array()) {
        throw Error(ErrorCode::MalformedSchema, std::string("'") + field + "' must be an array of type names");
    }
    TypeSet out;
    for (const auto& item : j) {
        if (!item.is_string() || item.get<std::string>().empty()) {
            throw Error(ErrorCode::MalformedSchema, std::string("'") + field + "' holds a non-string or empty type");
        }
        out.insert(item.get<std::string>());
    }
    return out;
}

void require_known(const SchemaHypergraph& s, const TypeSet& types, const std::string& where) {
    for (const auto& t : types) {
        if (!s.has_type(t)) {
            throw Error(ErrorCode::UnknownType, where + " names unknown type '" + t + "'");
        }
    }
}

} // namespace

SchemaHypergraph schema_from_json(const json& j) {
    if (!j.is_object() || !j.contains("types") || !j["types"].is_array()) {
        throw Error(ErrorCode::MalformedSchema, "schema needs a 'types' array");
    }
    SchemaHypergraph s;
    s.carrier.allow_empty_edges = false;
    for (const auto& t : j["types"]) {
        std::string name;
        std::string label;
        if (t.is_string()) {
            name = t.get<std::string>();
            label = name;
        } else if (t.is_object() && t.contains("name") && t["name"].is_string()) {
            name = t["name"].get<std::string>();
            label = t.value("label", name);
        } else {
            throw Error(ErrorCode::MalformedSchema, "type entries must be strings or {\"name\",\"label\"}");
        }
        if (name.empty()) {
            throw Error(ErrorCode::MalformedSchema, "type name is empty");
        }
        if (s.has_type(name)) {
            throw Error(ErrorCode::MalformedSchema, "type '" + name + "' declared twice");
        }
        s.carrier.add_vertex(name);
        s.vertex_labels[name] = label;
    }

    if (j.contains("edges")) {
        if (!j["edges"].is_array()) {
            throw Error(ErrorCode::MalformedSchema, "'edges' must be an array");
        }
        for (const auto& e : j["edges"]) {
            if (!e.is_object() || !e.contains("members")) {
                throw Error(ErrorCode::MalformedSchema, "schema edge needs 'members'");
            }
            TypeSet members = type_list(e["members"], "members");
            if (members.empty()) {
                throw Error(ErrorCode::MalformedSchema, "schema edge has no members");
            }
            EdgeId id = e.contains("id") ? e["id"].get<std::string>() : group_edge_id(members);
            if (id.empty() || s.carrier.find_edge(id) != nullptr) {
                throw Error(ErrorCode::MalformedSchema, "schema edge id '" + id + "' is empty or repeated");
            }
            require_known(s, members, "schema edge '" + id + "'");
            if (e.contains("label")) {
                s.edge_labels[id] = e["label"].get<std::string>();
            }
            s.carrier.add_edge(std::move(id), std::move(members));
        }
    }
    s.carrier.sort_edges();

    if (j.contains("reference_types")) {
        s.reference_types = type_list(j["reference_types"], "reference_types");
        require_known(s, s.reference_types, "reference_types");
    }
    if (j.contains("ref_type") && !j["ref_type"].is_null()) {
        if (!j["ref_type"].is_string()) {
            throw Error(ErrorCode::MalformedSchema, "'ref_type' must be a string");
        }
        s.ref_type = j["ref_type"].get<std::string>();
        require_known(s, {*s.ref_type}, "ref_type");
    }
    return s;
}

json schema_to_json(const SchemaHypergraph& s) {
    json types = json::array();
    for (const auto& t : s.carrier.vertices) {
        types.push_back({{"name", t}, {"label", s.label_of(t)}});
    }
    json edges = to_json(s.carrier)["edges"];
    for (auto& e : edges) {
        auto it = s.edge_labels.find(e["id"].get<std::string>());
        if (it != s.edge_labels.end()) e["label"] = it->second;
    }
    json out = {{"types", std::move(types)},
                {"edges", std::move(edges)},
                {"reference_types", s.reference_types}};
    if (s.ref_type) out["ref_type"] = *s.ref_type;
    return out;
}

ExtractedSchema extract_schema(const SchemaHypergraph& schema, const TypeSet& u, EmptyEdges policy) {
    if (u.empty()) {
        throw Error(ErrorCode::EmptySelection, "type selection is empty");
    }
    require_known(schema, u, "selection");
    return ExtractedSchema{restrict(schema.carrier, u, policy), u};
}

const Hyperedge* ReachabilityHypergraph::component_of(std::string_view t) const {
    for (const auto& e : carrier.edges) {
        if (e.members.contains(t)) return &e;
    }
    return nullptr;
}

ReachabilityHypergraph build_reachability(const ExtractedSchema& x) {
    ReachabilityHypergraph out;
    out.carrier = Hypergraph(x.carrier.vertices, false);
    for (const auto& comp : connected_components(x.carrier)) {
        if (comp.edges.empty()) {
            out.isolated.insert(comp.vertices.begin(), comp.vertices.end());
            continue;
        }
        // union of the component's own edge images, not of every component
        TypeSet members;
        for (const auto& id : comp.edges) {
            const auto& image = x.carrier.incidence(id);
            members.insert(image.begin(), image.end());
        }
        EdgeId id = "cc:" + *members.begin();
        out.component_edges[id] = comp.edges;
        out.carrier.add_edge(std::move(id), std::move(members));
    }
    out.carrier.sort_edges();
    return out;
}

namespace {

EdgeId navigation_edge_id(const TypeSet& removed) {
    std::string id = "R{";
    bool first = true;
    for (const auto& t : removed) {
        if (!first) id += ',';
        id += t;
        first = false;
    }
    return id + "}";
}

} // namespace

NavigationHypergraph build_navigation(const TypeSet& component, const TypeSet& ref_types) {
    if (ref_types.empty()) {
        throw Error(ErrorCode::EmptyRefSet, "reference type set is empty");
    }
    for (const auto& r : ref_types) {
        if (!component.contains(r)) {
            throw Error(ErrorCode::RefNotInComponent, "reference type '" + r + "' is not in the component");
        }
    }
    if (ref_types.size() > kMaxReferenceTypes) {
        throw Error(ErrorCode::TooManyReferences,
                    "at most " + std::to_string(kMaxReferenceTypes) + " reference types are supported");
    }

    NavigationHypergraph nav;
    nav.carrier = Hypergraph(component, true);
    nav.ref_types = ref_types;

    const std::vector<TypeName> refs(ref_types.begin(), ref_types.end());
    const std::size_t subsets = std::size_t{1} << refs.size();
    for (std::size_t mask = 1; mask < subsets; ++mask) {
        TypeSet removed;
        for (std::size_t bit = 0; bit < refs.size(); ++bit) {
            if (mask & (std::size_t{1} << bit)) removed.insert(refs[bit]);
        }
        TypeSet members;
        std::set_difference(component.begin(), component.end(), removed.begin(), removed.end(),
                            std::inserter(members, members.end()));
        EdgeId id = navigation_edge_id(removed);
        nav.edge_refs[id] = std::move(removed);
        nav.carrier.add_edge(std::move(id), std::move(members));
    }
    nav.carrier.sort_edges();
    return nav;
}

std::vector<FacetPair> facet_pairs(const NavigationHypergraph& nav, std::string_view edge_id) {
    const VertexSet& members = nav.carrier.incidence(edge_id);
    const TypeSet& removed = nav.edge_refs.find(edge_id)->second;
    std::vector<FacetPair> out;
    out.reserve(members.size() * removed.size());
    for (const auto& alpha : members) {
        for (const auto& rho : removed) {
            out.push_back({alpha, rho});
        }
    }
    return out;
}

bool navigable_together(const SchemaHypergraph& schema, const TypeSet& types) {
    if (types.empty()) return true;
    for (const auto& t : types) {
        if (!schema.has_type(t)) return false;
    }
    // components are computed on the full schema, so membership of one type
    // determines the component for all of them
    for (const auto& comp : connected_components(schema.carrier)) {
        if (comp.vertices.contains(*types.begin())) {
            return std::all_of(types.begin(), types.end(),
                               [&](const TypeName& t) { return comp.vertices.contains(t); });
        }
    }
    return false;
}

json to_json(const ExtractedSchema& x) {
    json out = to_json(x.carrier);
    out["selected"] = x.selected;
    return out;
}

json to_json(const ReachabilityHypergraph& r) {
    json out = to_json(r.carrier);
    for (auto& e : out["edges"]) {
        e["component_edges"] = r.component_edges.at(e["id"].get<std::string>());
    }
    out["isolated"] = r.isolated;
    return out;
}

json to_json(const NavigationHypergraph& n) {
    json out = to_json(n.carrier);
    for (auto& e : out["edges"]) {
        e["removed_ref_set"] = n.edge_refs.at(e["id"].get<std::string>());
    }
    out["ref_types"] = n.ref_types;
    return out;
}

} // namespace hyperfacet

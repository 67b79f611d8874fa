#include "hyperfacet/hypergraph.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "hyperfacet/error.hpp"

namespace hyperfacet {

using nlohmann::json;

const Hyperedge* Hypergraph::find_edge(std::string_view id) const {
    auto it = std::find_if(edges.begin(), edges.end(),
                           [&](const Hyperedge& e) { return e.id == id; });
    return it == edges.end() ? nullptr : &*it;
}

const VertexSet& Hypergraph::incidence(std::string_view id) const {
    const Hyperedge* e = find_edge(id);
    if (e == nullptr) {
        throw Error(ErrorCode::UnknownEdge, "unknown hyperedge '" + std::string(id) + "'");
    }
    return e->members;
}

void Hypergraph::sort_edges() {
    std::stable_sort(edges.begin(), edges.end(),
                     [](const Hyperedge& a, const Hyperedge& b) { return a.id < b.id; });
}

double WeightedHypergraph::weight_of(std::string_view id) const {
    auto it = weight.find(id);
    if (it == weight.end()) {
        throw Error(ErrorCode::UnknownEdge, "no weight for hyperedge '" + std::string(id) + "'");
    }
    return it->second;
}

std::string_view to_string(ViolationKind kind) {
    switch (kind) {
    case ViolationKind::EmptyVertexId: return "EmptyVertexId";
    case ViolationKind::EmptyEdgeId: return "EmptyEdgeId";
    case ViolationKind::DuplicateEdgeId: return "DuplicateEdgeId";
    case ViolationKind::UnknownMember: return "UnknownMember";
    case ViolationKind::EmptyEdge: return "EmptyEdge";
    case ViolationKind::MissingWeight: return "MissingWeight";
    case ViolationKind::NonPositiveWeight: return "NonPositiveWeight";
    case ViolationKind::WeightWithoutEdge: return "WeightWithoutEdge";
    }
    return "Unknown";
}

ValidationReport validate(const Hypergraph& h) {
    ValidationReport report;
    if (h.vertices.contains("")) {
        report.push_back({ViolationKind::EmptyVertexId, "", "vertex id is empty"});
    }
    std::set<std::string_view> seen;
    for (const auto& e : h.edges) {
        if (e.id.empty()) {
            report.push_back({ViolationKind::EmptyEdgeId, e.id, "hyperedge id is empty"});
        }
        if (!seen.insert(e.id).second) {
            report.push_back({ViolationKind::DuplicateEdgeId, e.id, "hyperedge id repeated"});
        }
        for (const auto& m : e.members) {
            if (!h.vertices.contains(m)) {
                report.push_back({ViolationKind::UnknownMember, e.id,
                                  "member '" + m + "' is not a vertex"});
            }
        }
        if (e.members.empty() && !h.allow_empty_edges) {
            report.push_back({ViolationKind::EmptyEdge, e.id, "empty hyperedge not allowed"});
        }
    }
    return report;
}

ValidationReport validate(const WeightedHypergraph& h) {
    ValidationReport report = validate(h.base);
    for (const auto& e : h.base.edges) {
        auto it = h.weight.find(e.id);
        if (it == h.weight.end()) {
            report.push_back({ViolationKind::MissingWeight, e.id, "hyperedge has no weight"});
        } else if (!(it->second > 0.0) || !std::isfinite(it->second)) {
            report.push_back({ViolationKind::NonPositiveWeight, e.id,
                              "weight " + std::to_string(it->second) + " is not strictly positive"});
        }
    }
    for (const auto& [id, w] : h.weight) {
        if (h.base.find_edge(id) == nullptr) {
            report.push_back({ViolationKind::WeightWithoutEdge, id, "weight for unknown hyperedge"});
        }
    }
    return report;
}

Hypergraph restrict(const Hypergraph& h, const VertexSet& u, EmptyEdges policy) {
    for (const auto& v : u) {
        if (!h.vertices.contains(v)) {
            throw Error(ErrorCode::UnknownVertex, "restriction vertex '" + v + "' is not in the hypergraph");
        }
    }
    Hypergraph out(u, policy == EmptyEdges::Keep);
    for (const auto& e : h.edges) {
        VertexSet kept;
        std::set_intersection(e.members.begin(), e.members.end(), u.begin(), u.end(),
                              std::inserter(kept, kept.end()));
        if (kept.empty() && policy == EmptyEdges::Drop) {
            continue;
        }
        out.add_edge(e.id, std::move(kept));
    }
    out.sort_edges();
    return out;
}

namespace {

class DisjointSets {
public:
    explicit DisjointSets(std::size_t n) : parent_(n), rank_(n, 0) {
        std::iota(parent_.begin(), parent_.end(), std::size_t{0});
    }

    std::size_t find(std::size_t x) {
        while (parent_[x] != x) {
            parent_[x] = parent_[parent_[x]];
            x = parent_[x];
        }
        return x;
    }

    void unite(std::size_t a, std::size_t b) {
        a = find(a);
        b = find(b);
        if (a == b) return;
        if (rank_[a] < rank_[b]) std::swap(a, b);
        parent_[b] = a;
        if (rank_[a] == rank_[b]) ++rank_[a];
    }

private:
    std::vector<std::size_t> parent_;
    std::vector<std::size_t> rank_;
};

} // namespace

ComponentPartition connected_components(const Hypergraph& h) {
    std::vector<const VertexId*> ids;
    ids.reserve(h.vertices.size());
    std::map<std::string_view, std::size_t> index;
    for (const auto& v : h.vertices) {
        index.emplace(v, ids.size());
        ids.push_back(&v);
    }

    DisjointSets sets(ids.size());
    // first known member of each edge, or npos if the edge touches no vertex
    std::vector<std::size_t> anchor(h.edges.size(), static_cast<std::size_t>(-1));
    for (std::size_t k = 0; k < h.edges.size(); ++k) {
        for (const auto& m : h.edges[k].members) {
            auto it = index.find(m);
            if (it == index.end()) continue;
            if (anchor[k] == static_cast<std::size_t>(-1)) {
                anchor[k] = it->second;
            } else {
                sets.unite(anchor[k], it->second);
            }
        }
    }

    // vertices are visited in sorted order, so the first vertex seen for a
    // root is the component's smallest id and components come out ordered
    ComponentPartition out;
    std::map<std::size_t, std::size_t> slot_of_root;
    std::vector<std::size_t> slot_of_vertex(ids.size());
    for (std::size_t i = 0; i < ids.size(); ++i) {
        std::size_t root = sets.find(i);
        auto [it, inserted] = slot_of_root.emplace(root, out.size());
        if (inserted) out.emplace_back();
        out[it->second].vertices.insert(*ids[i]);
        slot_of_vertex[i] = it->second;
    }
    for (std::size_t k = 0; k < h.edges.size(); ++k) {
        if (anchor[k] == static_cast<std::size_t>(-1)) continue;
        out[slot_of_vertex[anchor[k]]].edges.insert(h.edges[k].id);
    }
    return out;
}

RepeatedEdges has_repeated_edges(const Hypergraph& h) {
    std::map<VertexSet, std::vector<EdgeId>> by_image;
    for (const auto& e : h.edges) {
        by_image[e.members].push_back(e.id);
    }
    RepeatedEdges out;
    for (auto& [image, ids] : by_image) {
        std::sort(ids.begin(), ids.end());
        for (std::size_t i = 0; i < ids.size(); ++i) {
            for (std::size_t j = i + 1; j < ids.size(); ++j) {
                out.witnesses.emplace_back(ids[i], ids[j]);
            }
        }
    }
    std::sort(out.witnesses.begin(), out.witnesses.end());
    out.repeated = !out.witnesses.empty();
    return out;
}

json weight_to_json(double w) {
    double integral = 0.0;
    if (std::modf(w, &integral) == 0.0 && std::fabs(w) < 9.0e15) {
        return static_cast<std::int64_t>(integral);
    }
    return w;
}

namespace {

json edges_json(const Hypergraph& h, const std::map<EdgeId, double, std::less<>>* weights) {
    std::vector<const Hyperedge*> sorted;
    sorted.reserve(h.edges.size());
    for (const auto& e : h.edges) sorted.push_back(&e);
    std::stable_sort(sorted.begin(), sorted.end(),
                     [](const Hyperedge* a, const Hyperedge* b) { return a->id < b->id; });

    json edges = json::array();
    for (const Hyperedge* e : sorted) {
        json entry = {{"id", e->id}, {"members", e->members}};
        if (weights != nullptr) {
            if (auto it = weights->find(e->id); it != weights->end()) {
                entry["weight"] = weight_to_json(it->second);
            }
        }
        edges.push_back(std::move(entry));
    }
    return edges;
}

VertexSet string_set(const json& j, const char* what) {
    if (!j.is_array()) {
        throw Error(ErrorCode::InvalidRequest, std::string(what) + " must be an array of strings");
    }
    VertexSet out;
    for (const auto& item : j) {
        if (!item.is_string()) {
            throw Error(ErrorCode::InvalidRequest, std::string(what) + " must be an array of strings");
        }
        out.insert(item.get<std::string>());
    }
    return out;
}

} // namespace

json to_json(const Hypergraph& h) {
    return json{{"vertices", h.vertices}, {"edges", edges_json(h, nullptr)}};
}

json to_json(const WeightedHypergraph& h) {
    return json{{"vertices", h.base.vertices}, {"edges", edges_json(h.base, &h.weight)}};
}

Hypergraph hypergraph_from_json(const json& j) {
    if (!j.is_object() || !j.contains("vertices") || !j.contains("edges") || !j["edges"].is_array()) {
        throw Error(ErrorCode::InvalidRequest, "hypergraph JSON needs 'vertices' and 'edges' arrays");
    }
    Hypergraph h(string_set(j["vertices"], "vertices"));
    for (const auto& e : j["edges"]) {
        if (!e.is_object() || !e.contains("id") || !e["id"].is_string() || !e.contains("members")) {
            throw Error(ErrorCode::InvalidRequest, "hyperedge JSON needs 'id' and 'members'");
        }
        h.add_edge(e["id"].get<std::string>(), string_set(e["members"], "members"));
    }
    return h;
}

WeightedHypergraph weighted_from_json(const json& j) {
    WeightedHypergraph out{hypergraph_from_json(j), {}};
    for (const auto& e : j["edges"]) {
        if (!e.contains("weight") || !e["weight"].is_number()) {
            throw Error(ErrorCode::InvalidRequest,
                        "weighted hyperedge '" + e["id"].get<std::string>() + "' has no numeric weight");
        }
        out.weight[e["id"].get<std::string>()] = e["weight"].get<double>();
    }
    return out;
}

} // namespace hyperfacet

#include "hyperfacet/facet_export.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace hyperfacet {

using nlohmann::json;

namespace {

json facet_header(const FacetPair& facet, bool reduced) {
    return json{{"facet", {{"type", facet.cooc_type}, {"ref", facet.ref_type}}}, {"reduced", reduced}};
}

std::string xml_escape(const std::string& s) {
    std::string out;
    out.reserve(s.size());
    for (char c : s) {
        switch (c) {
        case '&': out += "&amp;"; break;
        case '<': out += "&lt;"; break;
        case '>': out += "&gt;"; break;
        case '"': out += "&quot;"; break;
        case '\'': out += "&apos;"; break;
        default: out += c;
        }
    }
    return out;
}

std::string join(const ValueSet& values, char sep) {
    std::string out;
    for (const auto& v : values) {
        if (!out.empty()) out += sep;
        out += v;
    }
    return out;
}

struct GraphmlEdgeNode {
    const Hyperedge* edge;
    double weight;
    std::string source;  // edge_source or joined class
};

std::string graphml(const FacetPair& facet, const VertexSet& vertices,
                    const std::vector<GraphmlEdgeNode>& edges) {
    std::ostringstream out;
    out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
        << "<graphml xmlns=\"http://graphml.graphdrawing.org/xmlns\">\n"
        << "  <key id=\"kind\" for=\"node\" attr.name=\"kind\" attr.type=\"string\"/>\n"
        << "  <key id=\"label\" for=\"node\" attr.name=\"label\" attr.type=\"string\"/>\n"
        << "  <key id=\"weight\" for=\"node\" attr.name=\"weight\" attr.type=\"double\"/>\n"
        << "  <key id=\"references\" for=\"node\" attr.name=\"references\" attr.type=\"string\"/>\n"
        << "  <graph id=\"" << xml_escape(facet.cooc_type + "/" + facet.ref_type)
        << "\" edgedefault=\"undirected\">\n";
    // "v:" and "e:" prefixes keep vertex and edge-node ids apart
    for (const auto& v : vertices) {
        out << "    <node id=\"v:" << xml_escape(v) << "\">"
            << "<data key=\"kind\">vertex</data>"
            << "<data key=\"label\">" << xml_escape(v) << "</data></node>\n";
    }
    for (const auto& en : edges) {
        out << "    <node id=\"e:" << xml_escape(en.edge->id) << "\">"
            << "<data key=\"kind\">hyperedge</data>"
            << "<data key=\"weight\">" << weight_to_json(en.weight).dump() << "</data>"
            << "<data key=\"references\">" << xml_escape(en.source) << "</data></node>\n";
    }
    std::size_t link = 0;
    for (const auto& en : edges) {
        for (const auto& m : en.edge->members) {
            out << "    <edge id=\"l" << link++ << "\" source=\"e:" << xml_escape(en.edge->id)
                << "\" target=\"v:" << xml_escape(m) << "\"/>\n";
        }
    }
    out << "  </graph>\n</graphml>\n";
    return out.str();
}

} // namespace

json facet_to_json(const RawFacet& raw) {
    json out = facet_header(raw.facet, false);
    json hg = to_json(raw.carrier);
    for (auto& e : hg["edges"]) {
        const auto id = e["id"].get<std::string>();
        e["edge_source"] = raw.edge_source.at(id);
        e["empty"] = e["members"].empty();
    }
    out["vertices"] = std::move(hg["vertices"]);
    out["edges"] = std::move(hg["edges"]);
    return out;
}

json facet_to_json(const ReducedFacet& reduced) {
    json out = facet_header(reduced.facet, true);
    json hg = to_json(reduced.carrier);
    for (auto& e : hg["edges"]) {
        const auto id = e["id"].get<std::string>();
        e["class"] = reduced.class_of(id);
        e["empty"] = e["members"].empty();
    }
    out["vertices"] = std::move(hg["vertices"]);
    out["edges"] = std::move(hg["edges"]);
    return out;
}

json keep_top_edges(json facet, std::size_t k) {
    json& edges = facet["edges"];
    if (edges.size() <= k) return facet;
    const std::size_t total = edges.size();
    std::vector<json> sorted(edges.begin(), edges.end());
    std::stable_sort(sorted.begin(), sorted.end(), [](const json& a, const json& b) {
        const double wa = a.value("weight", 1.0);
        const double wb = b.value("weight", 1.0);
        if (wa != wb) return wa > wb;
        return a["id"].get<std::string>() < b["id"].get<std::string>();
    });
    sorted.resize(k);
    std::sort(sorted.begin(), sorted.end(), [](const json& a, const json& b) {
        return a["id"].get<std::string>() < b["id"].get<std::string>();
    });
    edges = json(sorted);
    facet["truncated_from"] = total;
    return facet;
}

json switch_to_json(const SwitchResult& result, bool reduced) {
    json out = reduced ? facet_to_json(reduce_facet(result.facet)) : facet_to_json(result.facet);
    out["s_a_count"] = result.search.size();
    out["reference_values"] = result.reference_values;
    return out;
}

std::string facet_to_graphml(const RawFacet& raw) {
    std::vector<GraphmlEdgeNode> nodes;
    for (const auto& e : raw.carrier.edges) {
        nodes.push_back({&e, 1.0, raw.edge_source.at(e.id)});
    }
    return graphml(raw.facet, raw.carrier.vertices, nodes);
}

std::string facet_to_graphml(const ReducedFacet& reduced) {
    std::vector<GraphmlEdgeNode> nodes;
    for (const auto& e : reduced.carrier.base.edges) {
        nodes.push_back({&e, reduced.carrier.weight_of(e.id), join(reduced.class_of(e.id), ';')});
    }
    return graphml(reduced.facet, reduced.carrier.base.vertices, nodes);
}

std::vector<std::string> validate_facet_json(const json& j) {
    std::vector<std::string> problems;
    auto bad = [&](std::string msg) { problems.push_back(std::move(msg)); };

    if (!j.is_object()) {
        bad("document is not an object");
        return problems;
    }
    if (!j.contains("facet") || !j["facet"].is_object() || !j["facet"].contains("type") ||
        !j["facet"].contains("ref") || !j["facet"]["type"].is_string() || !j["facet"]["ref"].is_string()) {
        bad("'facet' must be {\"type\":string,\"ref\":string}");
    }
    if (!j.contains("reduced") || !j["reduced"].is_boolean()) {
        bad("'reduced' must be a boolean");
    }
    auto sorted_strings = [&](const json& arr, const std::string& where) {
        if (!arr.is_array()) {
            bad(where + " is not an array");
            return false;
        }
        for (std::size_t i = 0; i < arr.size(); ++i) {
            if (!arr[i].is_string()) {
                bad(where + " holds a non-string");
                return false;
            }
            if (i > 0 && !(arr[i - 1].get<std::string>() < arr[i].get<std::string>())) {
                bad(where + " is not strictly sorted");
                return false;
            }
        }
        return true;
    };
    if (!j.contains("vertices") || !sorted_strings(j["vertices"], "'vertices'")) {
        if (!j.contains("vertices")) bad("'vertices' missing");
        return problems;
    }
    if (!j.contains("edges") || !j["edges"].is_array()) {
        bad("'edges' must be an array");
        return problems;
    }
    const bool reduced = j.value("reduced", false);
    std::set<std::string> vertices;
    for (const auto& v : j["vertices"]) vertices.insert(v.get<std::string>());

    std::string prev_id;
    std::set<std::string> seen_class_values;
    std::set<std::vector<std::string>> seen_images;
    for (std::size_t i = 0; i < j["edges"].size(); ++i) {
        const json& e = j["edges"][i];
        const std::string where = "edge #" + std::to_string(i);
        if (!e.is_object() || !e.contains("id") || !e["id"].is_string() || e["id"].get<std::string>().empty()) {
            bad(where + " has no id");
            continue;
        }
        const std::string id = e["id"].get<std::string>();
        if (i > 0 && !(prev_id < id)) bad(where + " id '" + id + "' out of order or repeated");
        prev_id = id;
        if (!e.contains("members") || !sorted_strings(e["members"], where + " members")) {
            if (!e.contains("members")) bad(where + " has no members");
            continue;
        }
        for (const auto& m : e["members"]) {
            if (!vertices.contains(m.get<std::string>())) {
                bad(where + " member '" + m.get<std::string>() + "' is not a vertex");
            }
        }
        if (!e.contains("empty") || !e["empty"].is_boolean() || e["empty"].get<bool>() != e["members"].empty()) {
            bad(where + " 'empty' flag missing or wrong");
        }
        if (reduced) {
            if (!e.contains("weight") || !e["weight"].is_number_integer() || e["weight"].get<std::int64_t>() <= 0) {
                bad(where + " needs a positive integer weight");
            }
            if (!e.contains("class") || !sorted_strings(e["class"], where + " class")) {
                if (!e.contains("class")) bad(where + " has no class");
                continue;
            }
            if (e.contains("weight") && e["weight"].is_number_integer() &&
                e["weight"].get<std::int64_t>() != static_cast<std::int64_t>(e["class"].size())) {
                bad(where + " weight differs from its class size");
            }
            for (const auto& v : e["class"]) {
                if (!seen_class_values.insert(v.get<std::string>()).second) {
                    bad(where + " class value '" + v.get<std::string>() + "' belongs to two classes");
                }
            }
            if (!seen_images.insert(e["members"].get<std::vector<std::string>>()).second) {
                bad(where + " repeats the member set of another reduced edge");
            }
        } else if (!e.contains("edge_source") || !e["edge_source"].is_string()) {
            bad(where + " needs a string edge_source");
        }
    }
    return problems;
}

std::string to_body(const json& j) {
    return j.dump(2) + "\n";
}

} // namespace hyperfacet

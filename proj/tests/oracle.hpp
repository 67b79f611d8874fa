#pragma once

// Brute-force reference implementations used only by tests. Every set is
// materialized straight from its definition over the raw records, without
// going through the store, its inverted index or the facet code.

#include <algorithm>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "hyperfacet/store.hpp"

namespace hyperfacet::oracle {

using Set = std::set<std::string>;

class Dataset {
public:
    explicit Dataset(const std::vector<RecordDocument>& records) {
        for (const auto& r : records) {
            auto& entry = values_[r.ref];
            for (const auto& [type, vs] : r.attrs) {
                entry[type].insert(vs.begin(), vs.end());
            }
        }
    }

    // A_{type,ref}
    Set values(const std::string& ref, const std::string& type) const {
        auto r = values_.find(ref);
        if (r == values_.end()) return {};
        auto t = r->second.find(type);
        return t == r->second.end() ? Set{} : t->second;
    }

    Set refs() const {
        Set out;
        for (const auto& [ref, _] : values_) out.insert(ref);
        return out;
    }

private:
    std::map<std::string, std::map<std::string, Set>> values_;
};

inline Set sigma(const Dataset& d, const Set& search, const std::string& rho) {
    Set out;
    for (const auto& r : search) {
        for (const auto& v : d.values(r, rho)) out.insert(v);
    }
    return out;
}

// R_v = {r in S : v in A_{rho,r}}
inline Set refs_of(const Dataset& d, const Set& search, const std::string& rho, const std::string& v) {
    Set out;
    for (const auto& r : search) {
        if (d.values(r, rho).count(v) != 0) out.insert(r);
    }
    return out;
}

struct Raw {
    Set vertices;
    std::map<std::string, Set> edges;  // v -> e_{alpha,v}

    bool operator==(const Raw&) const = default;
};

struct Reduced {
    Set vertices;
    // (member set, class); weight is class size
    std::set<std::pair<Set, Set>> edges;

    bool operator==(const Reduced&) const = default;
};

// Raw facet over reference values `values`, with R_v taken from `search`
// and vertices from `vertex_refs`.
inline Raw raw_facet(const Dataset& d, const Set& search, const Set& vertex_refs, const Set& values,
                     const std::string& alpha, const std::string& rho) {
    Raw out;
    for (const auto& r : vertex_refs) {
        for (const auto& x : d.values(r, alpha)) out.vertices.insert(x);
    }
    for (const auto& v : values) {
        Set e;
        for (const auto& r : refs_of(d, search, rho, v)) {
            for (const auto& x : d.values(r, alpha)) e.insert(x);
        }
        out.edges[v] = e;
    }
    return out;
}

inline Raw raw_facet(const Dataset& d, const Set& search, const std::string& alpha, const std::string& rho) {
    return raw_facet(d, search, search, sigma(d, search, rho), alpha, rho);
}

// Classes by pairwise comparison of images: v ~ w iff e_v == e_w.
inline Reduced reduce(const Raw& raw) {
    Reduced out;
    out.vertices = raw.vertices;
    for (const auto& [v, e] : raw.edges) {
        Set klass;
        for (const auto& [w, f] : raw.edges) {
            if (e == f) klass.insert(w);
        }
        out.edges.insert({e, klass});
    }
    return out;
}

struct Switch {
    Set reference_values;
    Set search;
    Raw facet;
};

inline Switch switch_facet(const Dataset& d, const Set& search, const std::string& alpha, const std::string& rho,
                           const Set& selection, const std::string& target) {
    Switch out;
    const Reduced current = reduce(raw_facet(d, search, alpha, rho));
    for (const auto& [e, klass] : current.edges) {
        bool meets = false;
        for (const auto& x : e) meets = meets || selection.count(x) != 0;
        if (meets) out.reference_values.insert(klass.begin(), klass.end());
    }
    for (const auto& v : out.reference_values) {
        for (const auto& r : refs_of(d, search, rho, v)) out.search.insert(r);
    }
    out.facet = raw_facet(d, search, out.search, out.reference_values, target, rho);
    return out;
}

// Connected components by boolean transitive closure of the "share a
// non-empty edge" relation over vertex indices 0..n-1. Returns, per
// component, (vertex set, edge index set), sorted by smallest vertex.
inline std::vector<std::pair<std::set<int>, std::set<int>>> components(int n,
                                                                       const std::vector<std::set<int>>& edges) {
    std::vector<std::vector<bool>> reach(n, std::vector<bool>(n, false));
    for (int i = 0; i < n; ++i) reach[i][i] = true;
    for (const auto& e : edges) {
        for (int a : e) {
            for (int b : e) reach[a][b] = true;
        }
    }
    for (int k = 0; k < n; ++k) {
        for (int i = 0; i < n; ++i) {
            for (int j = 0; j < n; ++j) {
                if (reach[i][k] && reach[k][j]) reach[i][j] = true;
            }
        }
    }
    std::vector<std::pair<std::set<int>, std::set<int>>> out;
    std::vector<bool> done(n, false);
    for (int i = 0; i < n; ++i) {
        if (done[i]) continue;
        std::set<int> vs;
        for (int j = 0; j < n; ++j) {
            if (reach[i][j]) {
                vs.insert(j);
                done[j] = true;
            }
        }
        std::set<int> es;
        for (int k = 0; k < static_cast<int>(edges.size()); ++k) {
            if (!edges[k].empty() && vs.count(*edges[k].begin()) != 0) es.insert(k);
        }
        out.emplace_back(std::move(vs), std::move(es));
    }
    return out;
}

} // namespace hyperfacet::oracle

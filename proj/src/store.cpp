#include "hyperfacet/store.hpp"

#include <algorithm>
#include <cctype>

#include "hyperfacet/error.hpp"

namespace hyperfacet {

using nlohmann::json;

namespace {

const ValueSet kNoValues;
const RefSet kNoRefs;

std::string normalize(std::string value, const IngestOptions& options) {
    if (options.trim) {
        auto space = [](unsigned char c) { return std::isspace(c) != 0; };
        auto first = std::find_if_not(value.begin(), value.end(), space);
        auto last = std::find_if_not(value.rbegin(), value.rend(), space).base();
        value = first < last ? std::string(first, last) : std::string();
    }
    if (options.lowercase) {
        std::transform(value.begin(), value.end(), value.begin(),
                       [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    }
    return value;
}

} // namespace

const ValueSet& PhysicalEntity::values(std::string_view type) const {
    auto it = attrs.find(type);
    return it == attrs.end() ? kNoValues : it->second;
}

DatasetStore::DatasetStore(SchemaHypergraph schema, std::map<Ref, PhysicalEntity, std::less<>> entities)
    : schema_(std::move(schema)), entities_(std::move(entities)), inverted_(transpose(entities_)) {}

const ValueSet& DatasetStore::values(std::string_view ref, std::string_view type) const {
    auto it = entities_.find(ref);
    if (it == entities_.end()) {
        throw Error(ErrorCode::UnknownReference, "unknown reference '" + std::string(ref) + "'");
    }
    return it->second.values(type);
}

const RefSet& DatasetStore::lookup(std::string_view type, std::string_view value) const {
    auto t = inverted_.find(type);
    if (t == inverted_.end()) return kNoRefs;
    auto v = t->second.find(value);
    return v == t->second.end() ? kNoRefs : v->second;
}

RefSet DatasetStore::all_refs() const {
    RefSet out;
    for (const auto& [ref, entity] : entities_) out.insert(out.end(), ref);
    return out;
}

TypeSet DatasetStore::uninstantiated_types() const {
    TypeSet out;
    for (const auto& t : schema_.carrier.vertices) {
        if (!inverted_.contains(t)) out.insert(t);
    }
    return out;
}

InvertedIndex DatasetStore::transpose(const std::map<Ref, PhysicalEntity, std::less<>>& entities) {
    InvertedIndex index;
    for (const auto& [ref, entity] : entities) {
        for (const auto& [type, values] : entity.attrs) {
            auto& by_value = index[type];
            for (const auto& v : values) {
                by_value[v].insert(ref);
            }
        }
    }
    return index;
}

json to_json(const IngestReport& r) {
    return json{{"records", r.records},
                {"duplicates", r.duplicates},
                {"values_per_type", r.values_per_type},
                {"unknown_type_occurrences", r.unknown_type_occurrences},
                {"added_types", r.added_types},
                {"uninstantiated_types", r.uninstantiated_types}};
}

StoreBuilder::StoreBuilder(SchemaHypergraph schema, IngestOptions options)
    : schema_(std::move(schema)), options_(options) {}

void StoreBuilder::add(RecordDocument record) {
    if (record.ref.empty()) {
        throw Error(ErrorCode::MalformedRecord, "record has an empty ref");
    }
    PhysicalEntity entity{record.ref, {}};
    for (auto& [type, values] : record.attrs) {
        if (type.empty()) {
            throw Error(ErrorCode::MalformedRecord, "record '" + record.ref + "' has an empty type name");
        }
        if (!schema_.has_type(type)) {
            if (options_.strict) {
                throw Error(ErrorCode::UnknownType,
                            "record '" + record.ref + "' uses type '" + type + "' absent from the schema");
            }
            schema_.add_type(type);
            report_.added_types.insert(type);
        }
        if (report_.added_types.contains(type)) {
            ++report_.unknown_type_occurrences[type];
        }
        ValueSet normalized;
        for (const auto& v : values) {
            std::string n = normalize(v, options_);
            if (n.empty()) {
                throw Error(ErrorCode::MalformedRecord,
                            "record '" + record.ref + "' has an empty value for type '" + type + "'");
            }
            normalized.insert(std::move(n));
        }
        if (!normalized.empty()) {
            entity.attrs.emplace(type, std::move(normalized));
        }
    }

    if (schema_.ref_type) {
        const TypeName& rt = *schema_.ref_type;
        auto it = entity.attrs.find(rt);
        if (it != entity.attrs.end() && it->second != ValueSet{record.ref}) {
            throw Error(ErrorCode::MalformedRecord,
                        "record '" + record.ref + "' carries a different value for reference type '" + rt + "'");
        }
        entity.attrs[rt] = ValueSet{record.ref};
    }

    ++report_.records;
    auto [it, inserted] = entities_.try_emplace(entity.ref, entity);
    if (!inserted) {
        if (it->second != entity) {
            throw Error(ErrorCode::DuplicateRef, "reference '" + entity.ref + "' ingested twice with differing attributes");
        }
        ++report_.duplicates;
    }
}

std::pair<DatasetStore, IngestReport> StoreBuilder::finish() && {
    DatasetStore store(std::move(schema_), std::move(entities_));
    for (const auto& [type, by_value] : store.inverted()) {
        report_.values_per_type[type] = by_value.size();
    }
    report_.uninstantiated_types = store.uninstantiated_types();
    return {std::move(store), std::move(report_)};
}

std::pair<DatasetStore, IngestReport> ingest(std::span<const RecordDocument> records,
                                             SchemaHypergraph schema, IngestOptions options) {
    StoreBuilder builder(std::move(schema), options);
    for (const auto& r : records) builder.add(r);
    return std::move(builder).finish();
}

SchemaHypergraph infer_schema(std::span<const RecordDocument> records) {
    if (records.empty()) {
        throw Error(ErrorCode::MalformedRecord, "cannot infer a schema from an empty corpus");
    }
    SchemaHypergraph s;
    s.carrier.allow_empty_edges = false;
    std::set<TypeSet> groups;
    for (const auto& r : records) {
        if (r.ref.empty()) {
            throw Error(ErrorCode::MalformedRecord, "record has an empty ref");
        }
        TypeSet present;
        for (const auto& [type, values] : r.attrs) {
            if (type.empty()) {
                throw Error(ErrorCode::MalformedRecord, "record '" + r.ref + "' has an empty type name");
            }
            s.add_type(type);
            if (!values.empty()) present.insert(type);
        }
        if (!present.empty()) groups.insert(std::move(present));
    }
    for (const auto& g : groups) {
        s.carrier.add_edge(group_edge_id(g), g);
    }
    s.carrier.sort_edges();
    return s;
}

SearchResult search(const DatasetStore& store, const SearchQuery& q) {
    if (q.all.empty() && q.any.empty()) {
        throw Error(ErrorCode::InvalidQuery, "query has no terms");
    }
    for (const auto* group : {&q.all, &q.any}) {
        for (const auto& t : *group) {
            if (!store.has_type(t.type)) {
                throw Error(ErrorCode::UnknownType, "query names unknown type '" + t.type + "'");
            }
        }
    }

    std::optional<RefSet> acc;
    for (const auto& t : q.all) {
        const RefSet& hits = store.lookup(t.type, t.value);
        if (!acc) {
            acc = hits;
            continue;
        }
        RefSet next;
        std::set_intersection(acc->begin(), acc->end(), hits.begin(), hits.end(),
                              std::inserter(next, next.end()));
        acc = std::move(next);
    }

    if (!q.any.empty()) {
        RefSet either;
        for (const auto& t : q.any) {
            const RefSet& hits = store.lookup(t.type, t.value);
            either.insert(hits.begin(), hits.end());
        }
        if (!acc) {
            acc = std::move(either);
        } else {
            RefSet next;
            std::set_intersection(acc->begin(), acc->end(), either.begin(), either.end(),
                                  std::inserter(next, next.end()));
            acc = std::move(next);
        }
    }
    return SearchResult{std::move(*acc)};
}

namespace {

std::vector<Term> terms_from_json(const json& j, const char* group) {
    if (!j.is_array()) {
        throw Error(ErrorCode::InvalidQuery, std::string("'") + group + "' must be an array of terms");
    }
    std::vector<Term> out;
    for (const auto& t : j) {
        if (t.is_object() && t.contains("type") && t.contains("value") && t["type"].is_string() &&
            t["value"].is_string()) {
            out.push_back({t["type"].get<std::string>(), t["value"].get<std::string>()});
        } else if (t.is_array() && t.size() == 2 && t[0].is_string() && t[1].is_string()) {
            out.push_back({t[0].get<std::string>(), t[1].get<std::string>()});
        } else {
            throw Error(ErrorCode::InvalidQuery,
                        std::string("terms in '") + group + "' must be {\"type\",\"value\"} or [type, value]");
        }
    }
    return out;
}

json terms_to_json(const std::vector<Term>& terms) {
    json out = json::array();
    for (const auto& t : terms) out.push_back({{"type", t.type}, {"value", t.value}});
    return out;
}

} // namespace

SearchQuery query_from_json(const json& j) {
    if (!j.is_object()) {
        throw Error(ErrorCode::InvalidQuery, "query must be a JSON object");
    }
    SearchQuery q;
    if (j.contains("all")) q.all = terms_from_json(j["all"], "all");
    if (j.contains("any")) q.any = terms_from_json(j["any"], "any");
    if (q.all.empty() && q.any.empty()) {
        throw Error(ErrorCode::InvalidQuery, "query has no terms");
    }
    return q;
}

json query_to_json(const SearchQuery& q) {
    json out = json::object();
    if (!q.all.empty()) out["all"] = terms_to_json(q.all);
    if (!q.any.empty()) out["any"] = terms_to_json(q.any);
    return out;
}

} // namespace hyperfacet

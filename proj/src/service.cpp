#include "hyperfacet/service.hpp"

#include <charconv>
#include <cstdio>

#include <httplib.h>

#include "hyperfacet/error.hpp"
#include "hyperfacet/facet_export.hpp"

namespace hyperfacet {

using nlohmann::json;

namespace views {

namespace {

void require_types(const DatasetStore& store, const TypeSet& types) {
    for (const auto& t : types) {
        if (!store.has_type(t)) {
            throw Error(ErrorCode::UnknownType, "type '" + t + "' is not in the schema");
        }
    }
}

} // namespace

void require_navigable(const DatasetStore& store, const TypeSet& types) {
    require_types(store, types);
    if (!navigable_together(store.schema(), types)) {
        throw Error(ErrorCode::CrossComponent, "types lie in separate reachability components");
    }
}

json schema(const DatasetStore& store) {
    return schema_to_json(store.schema());
}

json extract(const DatasetStore& store, const TypeSet& types) {
    ExtractedSchema x = extract_schema(store.schema(), types);
    ReachabilityHypergraph r = build_reachability(x);
    return json{{"extracted", to_json(x)}, {"reachability", to_json(r)}};
}

json navigation(const DatasetStore& store, const TypeSet& component, const TypeSet& ref_types) {
    require_types(store, component);
    return to_json(build_navigation(component, ref_types));
}

json facet(const DatasetStore& store, const SearchResult& s, const FacetRequest& req) {
    require_navigable(store, {req.type, req.ref});
    ReferenceIndex index = build_reference_index(store, s, FacetPair{req.type, req.ref});
    RawFacet raw = build_raw_facet(index, store);
    json out;
    if (req.reduced) {
        ReducedFacet reduced = reduce_facet(raw);
        out = facet_to_json(req.drop_empty ? drop_empty_edges(std::move(reduced)) : std::move(reduced));
    } else {
        out = facet_to_json(req.drop_empty ? drop_empty_edges(std::move(raw)) : std::move(raw));
    }
    if (req.top_k_edges) out = keep_top_edges(std::move(out), *req.top_k_edges);
    return out;
}

json switch_facet(const DatasetStore& store, const SearchResult& s, const SwitchRequest& req) {
    require_navigable(store, {req.from_type, req.ref, req.to_type});
    if (req.selection.empty()) {
        throw Error(ErrorCode::EmptySelection, "selection is empty");
    }
    ReferenceIndex index = build_reference_index(store, s, FacetPair{req.from_type, req.ref});
    ReducedFacet current = reduce_facet(build_raw_facet(index, store));
    SwitchResult result = hyperfacet::switch_facet(current, index, req.selection, req.to_type, store);
    if (req.drop_empty) result.facet = drop_empty_edges(std::move(result.facet));
    return switch_to_json(result, req.reduced);
}

} // namespace views

std::string search_id_for(const SearchQuery& q) {
    // FNV-1a over the canonical query text
    std::uint64_t h = 14695981039346656037ull;
    for (unsigned char c : query_to_json(q).dump()) {
        h ^= c;
        h *= 1099511628211ull;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return std::string("s-") + buf;
}

SessionCache::SessionCache(std::size_t capacity) : capacity_(capacity == 0 ? 1 : capacity) {}

void SessionCache::put(SessionSearch session) {
    std::lock_guard lock(mutex_);
    if (auto it = by_id_.find(session.id); it != by_id_.end()) {
        order_.erase(it->second);
        by_id_.erase(it);
    }
    order_.push_front(std::move(session));
    by_id_[order_.front().id] = order_.begin();
    while (order_.size() > capacity_) {
        by_id_.erase(order_.back().id);
        order_.pop_back();
    }
}

std::optional<SessionSearch> SessionCache::get(const std::string& id) {
    std::lock_guard lock(mutex_);
    auto it = by_id_.find(id);
    if (it == by_id_.end()) return std::nullopt;
    order_.splice(order_.begin(), order_, it->second);
    return *it->second;
}

std::size_t SessionCache::size() const {
    std::lock_guard lock(mutex_);
    return order_.size();
}

json error_json(std::string_view code, std::string_view message) {
    return json{{"error", {{"code", code}, {"message", message}}}};
}

int http_status(ErrorCode code) {
    switch (category(code)) {
    case ErrorCategory::Validation: return 400;
    case ErrorCategory::NotFound: return 404;
    case ErrorCategory::Io: return 500;
    }
    return 500;
}

struct FacetService::Server {
    httplib::Server http;
};

FacetService::FacetService(std::shared_ptr<const DatasetStore> store, ServiceOptions options)
    : store_(std::move(store)), options_(std::move(options)), sessions_(options_.cache_size) {}

FacetService::~FacetService() {
    stop();
}

namespace {

json parse_body(const std::string& body) {
    json j = json::parse(body, nullptr, false);
    if (j.is_discarded() || !j.is_object()) {
        throw Error(ErrorCode::InvalidRequest, "request body must be a JSON object");
    }
    return j;
}

std::string required_string(const json& j, const char* field) {
    if (!j.contains(field) || !j[field].is_string() || j[field].get<std::string>().empty()) {
        throw Error(ErrorCode::InvalidRequest, std::string("field '") + field + "' must be a non-empty string");
    }
    return j[field].get<std::string>();
}

TypeSet required_set(const json& j, const char* field) {
    if (!j.contains(field) || !j[field].is_array()) {
        throw Error(ErrorCode::InvalidRequest, std::string("field '") + field + "' must be an array of strings");
    }
    TypeSet out;
    for (const auto& item : j[field]) {
        if (!item.is_string()) {
            throw Error(ErrorCode::InvalidRequest, std::string("field '") + field + "' must be an array of strings");
        }
        out.insert(item.get<std::string>());
    }
    return out;
}

bool optional_bool(const json& j, const char* field, bool fallback) {
    if (!j.contains(field)) return fallback;
    if (!j[field].is_boolean()) {
        throw Error(ErrorCode::InvalidRequest, std::string("field '") + field + "' must be a boolean");
    }
    return j[field].get<bool>();
}

const std::string& required_param(const HttpRequest& req, const char* name) {
    auto it = req.params.find(name);
    if (it == req.params.end() || it->second.empty()) {
        throw Error(ErrorCode::InvalidRequest, std::string("query parameter '") + name + "' is required");
    }
    return it->second;
}

bool bool_param(const HttpRequest& req, const char* name, bool fallback) {
    auto it = req.params.find(name);
    if (it == req.params.end()) return fallback;
    if (it->second == "true" || it->second == "1") return true;
    if (it->second == "false" || it->second == "0") return false;
    throw Error(ErrorCode::InvalidRequest, std::string("query parameter '") + name + "' must be true or false");
}

std::optional<std::size_t> count_param(const HttpRequest& req, const char* name) {
    auto it = req.params.find(name);
    if (it == req.params.end()) return std::nullopt;
    std::size_t value = 0;
    const auto& s = it->second;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
    if (ec != std::errc() || ptr != s.data() + s.size() || value == 0) {
        throw Error(ErrorCode::InvalidRequest, std::string("query parameter '") + name + "' must be a positive integer");
    }
    return value;
}

HttpResponse ok(const json& j) {
    return HttpResponse{200, to_body(j)};
}

} // namespace

SearchResult FacetService::session_result(const std::string& id) {
    auto session = sessions_.get(id);
    if (!session) {
        throw Error(ErrorCode::UnknownSearch, "no search with id '" + id + "'");
    }
    return session->result;
}

HttpResponse FacetService::route(const HttpRequest& req) {
    const DatasetStore& store = *store_;
    const bool get = req.method == "GET";
    const bool post = req.method == "POST";

    if (get && req.path == "/api/schema") {
        return ok(views::schema(store));
    }
    if (post && req.path == "/api/extract") {
        json body = parse_body(req.body);
        return ok(views::extract(store, required_set(body, "types")));
    }
    if (post && req.path == "/api/navigation") {
        json body = parse_body(req.body);
        return ok(views::navigation(store, required_set(body, "component_edge"), required_set(body, "ref_types")));
    }
    if (post && req.path == "/api/search") {
        json body = parse_body(req.body);
        SearchQuery q = query_from_json(body.contains("query") ? body["query"] : body);
        SearchResult result = search(store, q);
        std::string id = search_id_for(q);
        const std::size_t count = result.refs.size();
        sessions_.put(SessionSearch{id, std::move(q), std::move(result), std::chrono::system_clock::now()});
        return ok(json{{"search_id", id}, {"count", count}});
    }
    if (get && req.path == "/api/facet") {
        SearchResult s = session_result(required_param(req, "search_id"));
        views::FacetRequest fr;
        fr.type = required_param(req, "type");
        fr.ref = required_param(req, "ref");
        fr.reduced = bool_param(req, "reduced", false);
        fr.drop_empty = bool_param(req, "drop_empty", false);
        fr.top_k_edges = count_param(req, "top_k_edges");
        return ok(views::facet(store, s, fr));
    }
    if (post && req.path == "/api/switch") {
        json body = parse_body(req.body);
        SearchResult s = session_result(required_string(body, "search_id"));
        views::SwitchRequest sr;
        sr.ref = required_string(body, "ref");
        sr.from_type = required_string(body, "from_type");
        sr.to_type = required_string(body, "to_type");
        sr.selection = required_set(body, "selection");
        sr.reduced = optional_bool(body, "reduced", false);
        sr.drop_empty = optional_bool(body, "drop_empty", false);
        return ok(views::switch_facet(store, s, sr));
    }
    return HttpResponse{404, to_body(error_json("NotFound", "no route for " + req.method + " " + req.path))};
}

HttpResponse FacetService::handle(const HttpRequest& req) {
    try {
        return route(req);
    } catch (const Error& e) {
        return HttpResponse{http_status(e.code()), to_body(error_json(to_string(e.code()), e.what()))};
    } catch (const json::exception& e) {
        return HttpResponse{400, to_body(error_json(to_string(ErrorCode::InvalidRequest), e.what()))};
    } catch (const std::exception& e) {
        return HttpResponse{500, to_body(error_json("Internal", e.what()))};
    }
}

int FacetService::bind(const std::string& host, int port) {
    if (!server_) {
        server_ = std::make_unique<Server>();
        auto handler = [this](const httplib::Request& hreq, httplib::Response& hres) {
            HttpRequest req{hreq.method, hreq.path, {}, hreq.body};
            for (const auto& [k, v] : hreq.params) req.params.emplace(k, v);
            HttpResponse res = handle(req);
            hres.status = res.status;
            hres.set_content(res.body, "application/json");
        };
        server_->http.Get(".*", handler);
        server_->http.Post(".*", handler);
        server_->http.Options(".*", [](const httplib::Request&, httplib::Response& hres) { hres.status = 204; });
        if (!options_.cors_origin.empty()) {
            server_->http.set_default_headers({
                {"Access-Control-Allow-Origin", options_.cors_origin},
                {"Access-Control-Allow-Methods", "GET, POST, OPTIONS"},
                {"Access-Control-Allow-Headers", "Content-Type"},
            });
        }
    }
    if (port == 0) return server_->http.bind_to_any_port(host);
    return server_->http.bind_to_port(host, port) ? port : -1;
}

bool FacetService::listen_after_bind() {
    return server_ && server_->http.listen_after_bind();
}

void FacetService::stop() {
    if (server_) server_->http.stop();
}

} // namespace hyperfacet

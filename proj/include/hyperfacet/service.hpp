#pragma once

#include <chrono>
#include <cstddef>
#include <list>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <unordered_map>

#include <json.hpp>

#include "hyperfacet/error.hpp"
#include "hyperfacet/facets.hpp"
#include "hyperfacet/store.hpp"

namespace hyperfacet {

// Pure request -> JSON views over a sealed store. The HTTP service and the
// CLI both render through these, so equal requests give equal bytes.
namespace views {

struct FacetRequest {
    TypeName type;
    TypeName ref;
    bool reduced = false;
    bool drop_empty = false;
    std::optional<std::size_t> top_k_edges;
};

struct SwitchRequest {
    TypeName ref;
    TypeName from_type;
    VertexSet selection;
    TypeName to_type;
    bool reduced = false;
    bool drop_empty = false;
};

// Throws Error(UnknownType), or Error(CrossComponent) when the types do not
// share one reachability component of the full schema.
void require_navigable(const DatasetStore& store, const TypeSet& types);

nlohmann::json schema(const DatasetStore& store);
nlohmann::json extract(const DatasetStore& store, const TypeSet& types);
nlohmann::json navigation(const DatasetStore& store, const TypeSet& component, const TypeSet& ref_types);
nlohmann::json facet(const DatasetStore& store, const SearchResult& s, const FacetRequest& req);
// Throws Error(EmptySelection) for an empty selection.
nlohmann::json switch_facet(const DatasetStore& store, const SearchResult& s, const SwitchRequest& req);

} // namespace views

struct SessionSearch {
    std::string id;
    SearchQuery query;
    SearchResult result;
    std::chrono::system_clock::time_point created;
};

// Search id derived from the canonical query, so replays share one id.
std::string search_id_for(const SearchQuery& q);

/// Bounded LRU of searches. Safe for concurrent put/get.
class SessionCache {
public:
    explicit SessionCache(std::size_t capacity);

    void put(SessionSearch session);
    std::optional<SessionSearch> get(const std::string& id);
    std::size_t size() const;
    std::size_t capacity() const { return capacity_; }

private:
    using Order = std::list<SessionSearch>;

    std::size_t capacity_;
    mutable std::mutex mutex_;
    Order order_;  // most recent first
    std::unordered_map<std::string, Order::iterator> by_id_;
};

struct ServiceOptions {
    std::size_t cache_size = 1024;
    std::string cors_origin;  // empty: no CORS headers
};

struct HttpRequest {
    std::string method;
    std::string path;
    std::map<std::string, std::string> params;
    std::string body;
};

struct HttpResponse {
    int status = 200;
    std::string body;
};

class FacetService {
public:
    FacetService(std::shared_ptr<const DatasetStore> store, ServiceOptions options = {});
    ~FacetService();

    FacetService(const FacetService&) = delete;
    FacetService& operator=(const FacetService&) = delete;

    // Routes one request. Never throws; errors become
    // {"error":{"code","message"}} with a 400/404 status.
    HttpResponse handle(const HttpRequest& req);

    // Binds the HTTP listener; returns the bound port (0 picks one).
    int bind(const std::string& host, int port);
    // Blocks until stop().
    bool listen_after_bind();
    void stop();

    const SessionCache& sessions() const { return sessions_; }

private:
    HttpResponse route(const HttpRequest& req);
    SearchResult session_result(const std::string& id);

    std::shared_ptr<const DatasetStore> store_;
    ServiceOptions options_;
    SessionCache sessions_;

    struct Server;
    std::unique_ptr<Server> server_;
};

nlohmann::json error_json(std::string_view code, std::string_view message);
int http_status(ErrorCode code);

} // namespace hyperfacet

#include "hyperfacet/cli.hpp"

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>

#include <CLI11.hpp>

#include "hyperfacet/error.hpp"
#include "hyperfacet/facet_export.hpp"
#include "hyperfacet/service.hpp"

namespace hyperfacet {

using nlohmann::json;

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorCode::IoError, "cannot open '" + path + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

json read_json_file(const std::string& path, ErrorCode on_parse_error) {
    json j = json::parse(read_file(path), nullptr, false);
    if (j.is_discarded()) throw Error(on_parse_error, "'" + path + "' is not valid JSON");
    return j;
}

void write_file(const std::string& path, const std::string& body) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorCode::IoError, "cannot open '" + path + "' for writing");
    out << body;
    if (!out) throw Error(ErrorCode::IoError, "write to '" + path + "' failed");
}

bool ends_with(const std::string& s, const std::string& suffix) {
    return s.size() >= suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

TypeSet to_set(const std::vector<std::string>& items) {
    return TypeSet(items.begin(), items.end());
}

SearchResult run_query_file(const DatasetStore& store, const std::string& path) {
    return search(store, query_from_json(read_json_file(path, ErrorCode::InvalidQuery)));
}

int fail(std::ostream& err, std::string_view code, std::string_view message, int exit_code) {
    err << error_json(code, message).dump() << "\n";
    return exit_code;
}

struct IngestArgs {
    std::string schema;
    std::string input;
    std::string out;
    bool csv = false;
    std::string ref_column;
    char csv_delimiter = ',';
    char value_separator = ';';
    IngestOptions options;
};

struct FacetArgs {
    std::string store;
    std::string query;
    std::string type;
    std::string ref;
    bool reduced = false;
    bool drop_empty = false;
    std::size_t top_k = 0;
    std::string out;
};

struct SwitchArgs {
    std::string store;
    std::string query;
    std::string ref;
    std::string from;
    std::vector<std::string> select;
    std::string to;
    bool reduced = false;
    bool drop_empty = false;
    std::string out;
};

struct ServeArgs {
    std::string store;
    std::string host = "127.0.0.1";
    int port = 8080;
    std::size_t cache_size = 1024;
    std::string cors_origin;
};

int do_ingest(const IngestArgs& a, std::ostream& out) {
    std::vector<RecordDocument> records;
    {
        std::ifstream in(a.input, std::ios::binary);
        if (!in) throw Error(ErrorCode::IoError, "cannot open '" + a.input + "'");
        if (a.csv) {
            records = read_csv(in, CsvOptions{a.ref_column, a.csv_delimiter, a.value_separator});
        } else {
            records = read_jsonl(in);
        }
    }
    SchemaHypergraph schema = a.schema.empty()
                                  ? infer_schema(records)
                                  : schema_from_json(read_json_file(a.schema, ErrorCode::MalformedSchema));
    auto [store, report] = ingest(records, std::move(schema), a.options);
    save_snapshot(store, a.out);
    out << to_body(to_json(report));
    return kExitOk;
}

void emit(std::ostream& out, const std::string& path, const json& body) {
    if (path.empty()) {
        out << to_body(body);
    } else {
        write_file(path, to_body(body));
    }
}

int do_facet(const FacetArgs& a, std::ostream& out) {
    DatasetStore store = load_snapshot(a.store);
    SearchResult s = run_query_file(store, a.query);

    if (!a.out.empty() && ends_with(a.out, ".graphml")) {
        views::require_navigable(store, {a.type, a.ref});
        ReferenceIndex index = build_reference_index(store, s, FacetPair{a.type, a.ref});
        RawFacet raw = build_raw_facet(index, store);
        if (a.drop_empty) raw = drop_empty_edges(std::move(raw));
        write_file(a.out, a.reduced ? facet_to_graphml(reduce_facet(raw)) : facet_to_graphml(raw));
        return kExitOk;
    }

    views::FacetRequest req{a.type, a.ref, a.reduced, a.drop_empty, std::nullopt};
    if (a.top_k > 0) req.top_k_edges = a.top_k;
    emit(out, a.out, views::facet(store, s, req));
    return kExitOk;
}

int do_switch(const SwitchArgs& a, std::ostream& out) {
    DatasetStore store = load_snapshot(a.store);
    SearchResult s = run_query_file(store, a.query);
    views::SwitchRequest req{a.ref, a.from, to_set(a.select), a.to, a.reduced, a.drop_empty};
    emit(out, a.out, views::switch_facet(store, s, req));
    return kExitOk;
}

int do_serve(const ServeArgs& a, std::ostream& err) {
    auto store = std::make_shared<const DatasetStore>(load_snapshot(a.store));
    FacetService service(store, ServiceOptions{a.cache_size, a.cors_origin});
    const int port = service.bind(a.host, a.port);
    if (port < 0) throw Error(ErrorCode::IoError, "cannot bind " + a.host + ":" + std::to_string(a.port));
    err << "serving " << store->size() << " records on http://" << a.host << ":" << port << "\n";
    err.flush();
    return service.listen_after_bind() ? kExitOk : kExitIo;
}

} // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Hypergraph facet engine for co-occurrence networks", "hyperfacet"};
    app.require_subcommand(1);

    IngestArgs ingest_args;
    auto* ingest_cmd = app.add_subcommand("ingest", "Ingest a JSONL or CSV corpus into a snapshot");
    ingest_cmd->add_option("--schema", ingest_args.schema, "Schema JSON (inferred from the corpus if omitted)");
    ingest_cmd->add_option("--input", ingest_args.input, "Corpus file")->required();
    ingest_cmd->add_flag("--csv", ingest_args.csv, "Input is CSV: header row names types, cells hold ';'-joined values");
    ingest_cmd->add_option("--ref-column", ingest_args.ref_column, "CSV column holding the reference (default: first)");
    ingest_cmd->add_option("--csv-delimiter", ingest_args.csv_delimiter, "CSV field delimiter");
    ingest_cmd->add_option("--value-separator", ingest_args.value_separator, "Separator between values in a CSV cell");
    ingest_cmd->add_flag("--strict", ingest_args.options.strict, "Reject types absent from the schema");
    ingest_cmd->add_flag("--lowercase", ingest_args.options.lowercase, "Lowercase every value");
    ingest_cmd->add_flag("--trim", ingest_args.options.trim, "Trim whitespace around every value");
    ingest_cmd->add_option("--out", ingest_args.out, "Snapshot to write")->required();

    std::string schema_store;
    std::vector<std::string> extract_types;
    auto* schema_cmd = app.add_subcommand("schema", "Print the schema, or an extracted schema and its reachability");
    schema_cmd->add_option("--store", schema_store, "Snapshot")->required();
    schema_cmd->add_option("--extract", extract_types, "Types to extract (comma separated)")->delimiter(',');

    std::string nav_store;
    std::vector<std::string> nav_component;
    std::vector<std::string> nav_refs;
    auto* nav_cmd = app.add_subcommand("navigate", "Print the navigation hypergraph of a component");
    nav_cmd->add_option("--store", nav_store, "Snapshot")->required();
    nav_cmd->add_option("--component", nav_component, "Reachability edge types (comma separated)")
        ->required()
        ->delimiter(',');
    nav_cmd->add_option("--refs", nav_refs, "Reference types (comma separated)")->required()->delimiter(',');

    FacetArgs facet_args;
    auto* facet_cmd = app.add_subcommand("facet", "Build the facet hypergraph type/ref for a search");
    facet_cmd->add_option("--store", facet_args.store, "Snapshot")->required();
    facet_cmd->add_option("--query", facet_args.query, "Search query JSON")->required();
    facet_cmd->add_option("--type", facet_args.type, "Co-occurrence type")->required();
    facet_cmd->add_option("--ref", facet_args.ref, "Reference type")->required();
    facet_cmd->add_flag("--reduced", facet_args.reduced, "Merge repeated hyperedges into weighted ones");
    facet_cmd->add_flag("--drop-empty", facet_args.drop_empty, "Omit empty hyperedges");
    facet_cmd->add_option("--top-k", facet_args.top_k, "Keep only the k heaviest hyperedges");
    facet_cmd->add_option("--out", facet_args.out, "Write to file (.json or .graphml) instead of stdout");

    SwitchArgs switch_args;
    auto* switch_cmd = app.add_subcommand("switch", "Pivot from one facet to another through a selection");
    switch_cmd->add_option("--store", switch_args.store, "Snapshot")->required();
    switch_cmd->add_option("--query", switch_args.query, "Search query JSON")->required();
    switch_cmd->add_option("--ref", switch_args.ref, "Reference type")->required();
    switch_cmd->add_option("--from", switch_args.from, "Current co-occurrence type")->required();
    switch_cmd->add_option("--select", switch_args.select, "Selected vertices (comma separated)")
        ->required()
        ->delimiter(',');
    switch_cmd->add_option("--to", switch_args.to, "Target co-occurrence type")->required();
    switch_cmd->add_flag("--reduced", switch_args.reduced, "Reduce the switched facet");
    switch_cmd->add_flag("--drop-empty", switch_args.drop_empty, "Omit empty hyperedges");
    switch_cmd->add_option("--out", switch_args.out, "Write to file instead of stdout");

    ServeArgs serve_args;
    auto* serve_cmd = app.add_subcommand("serve", "Serve the HTTP API over a snapshot");
    serve_cmd->add_option("--store", serve_args.store, "Snapshot")->required()->envname("HYPERFACET_STORE");
    serve_cmd->add_option("--host", serve_args.host, "Listen address")->envname("HYPERFACET_HOST");
    serve_cmd->add_option("--port", serve_args.port, "Listen port")->envname("HYPERFACET_PORT");
    serve_cmd->add_option("--cache-size", serve_args.cache_size, "Cached searches")->envname("HYPERFACET_CACHE_SIZE");
    serve_cmd->add_option("--cors-origin", serve_args.cors_origin, "Allowed CORS origin")
        ->envname("HYPERFACET_CORS_ORIGIN");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        return fail(err, "UsageError", e.what(), kExitValidation);
    }

    try {
        if (*ingest_cmd) return do_ingest(ingest_args, out);
        if (*schema_cmd) {
            DatasetStore store = load_snapshot(schema_store);
            out << to_body(extract_types.empty() ? views::schema(store)
                                                 : views::extract(store, to_set(extract_types)));
            return kExitOk;
        }
        if (*nav_cmd) {
            DatasetStore store = load_snapshot(nav_store);
            out << to_body(views::navigation(store, to_set(nav_component), to_set(nav_refs)));
            return kExitOk;
        }
        if (*facet_cmd) return do_facet(facet_args, out);
        if (*switch_cmd) return do_switch(switch_args, out);
        if (*serve_cmd) return do_serve(serve_args, err);
    } catch (const Error& e) {
        return fail(err, to_string(e.code()), e.what(),
                    category(e.code()) == ErrorCategory::Io ? kExitIo : kExitValidation);
    } catch (const json::exception& e) {
        return fail(err, to_string(ErrorCode::InvalidRequest), e.what(), kExitValidation);
    }
    return kExitValidation;
}

} // namespace hyperfacet

#pragma once

#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "hyperfacet/schema.hpp"

namespace hyperfacet {

using Ref = std::string;
using RefSet = std::set<Ref, std::less<>>;
using ValueSet = std::set<std::string, std::less<>>;
using AttributeMap = std::map<TypeName, ValueSet, std::less<>>;

// One input record. Duplicate values collapse into the set.
struct RecordDocument {
    Ref ref;
    AttributeMap attrs;

    friend bool operator==(const RecordDocument&, const RecordDocument&) = default;
};

/// A physical entity: its unique reference plus the value set A_{t,r} for
/// every type t. Types with no value are simply absent from `attrs`.
struct PhysicalEntity {
    Ref ref;
    AttributeMap attrs;

    const ValueSet& values(std::string_view type) const;

    friend bool operator==(const PhysicalEntity&, const PhysicalEntity&) = default;
};

// (type, value) -> references carrying that value
using InvertedIndex = std::map<TypeName, std::map<std::string, RefSet, std::less<>>, std::less<>>;

/// Sealed dataset: entities keyed by reference, the inverted index that is
/// their transpose, and the schema. Read-only after construction.
class DatasetStore {
public:
    DatasetStore() = default;
    DatasetStore(SchemaHypergraph schema, std::map<Ref, PhysicalEntity, std::less<>> entities);

    const SchemaHypergraph& schema() const { return schema_; }
    const std::map<Ref, PhysicalEntity, std::less<>>& entities() const { return entities_; }
    const InvertedIndex& inverted() const { return inverted_; }

    bool contains(std::string_view ref) const { return entities_.contains(ref); }
    bool has_type(std::string_view type) const { return schema_.has_type(type); }
    std::size_t size() const { return entities_.size(); }

    // A_{type,ref}; empty if the entity has no value of that type.
    // Throws Error(UnknownReference).
    const ValueSet& values(std::string_view ref, std::string_view type) const;
    // References whose value set of `type` holds `value`.
    const RefSet& lookup(std::string_view type, std::string_view value) const;
    RefSet all_refs() const;

    // Schema types with no value anywhere in the dataset.
    TypeSet uninstantiated_types() const;

    static InvertedIndex transpose(const std::map<Ref, PhysicalEntity, std::less<>>& entities);

    friend bool operator==(const DatasetStore&, const DatasetStore&) = default;

private:
    SchemaHypergraph schema_;
    std::map<Ref, PhysicalEntity, std::less<>> entities_;
    InvertedIndex inverted_;
};

struct IngestOptions {
    bool strict = false;     // reject unknown types instead of adding them
    bool lowercase = false;  // value normalization
    bool trim = false;
};

struct IngestReport {
    std::size_t records = 0;
    std::size_t duplicates = 0;  // identical repeats, ignored
    std::map<TypeName, std::size_t, std::less<>> values_per_type;
    std::map<TypeName, std::size_t, std::less<>> unknown_type_occurrences;
    TypeSet added_types;
    TypeSet uninstantiated_types;
};

nlohmann::json to_json(const IngestReport& r);

/// Single-writer store construction. Records are added one at a time so
/// corpora can be streamed; `finish` seals the store.
class StoreBuilder {
public:
    StoreBuilder(SchemaHypergraph schema, IngestOptions options = {});

    // Throws Error(DuplicateRef | MalformedRecord | UnknownType).
    void add(RecordDocument record);

    std::pair<DatasetStore, IngestReport> finish() &&;

private:
    SchemaHypergraph schema_;
    IngestOptions options_;
    std::map<Ref, PhysicalEntity, std::less<>> entities_;
    IngestReport report_;
};

std::pair<DatasetStore, IngestReport> ingest(std::span<const RecordDocument> records,
                                             SchemaHypergraph schema, IngestOptions options = {});

/// Schema for a corpus without one: every observed type is a vertex, every
/// distinct set of types co-present (with values) in one record is an edge.
SchemaHypergraph infer_schema(std::span<const RecordDocument> records);

struct Term {
    TypeName type;
    std::string value;

    friend bool operator==(const Term&, const Term&) = default;
};

/// Conjunction of `all` terms intersected with the disjunction of `any`
/// terms. A missing `all` group is the universe; a missing `any` group is
/// a no-op.
struct SearchQuery {
    std::vector<Term> all;
    std::vector<Term> any;
};

struct SearchResult {
    RefSet refs;
};

// Throws Error(InvalidQuery) for a query without terms, Error(UnknownType).
SearchResult search(const DatasetStore& store, const SearchQuery& q);

// {"all":[{"type","value"} | [type, value]], "any":[...]}
SearchQuery query_from_json(const nlohmann::json& j);
nlohmann::json query_to_json(const SearchQuery& q);

// --- corpus formats ---------------------------------------------------------

// {"ref":"...","attrs":{"type":["v1","v2"],...}}; numbers are stringified.
RecordDocument record_from_json(const nlohmann::json& j);
nlohmann::json record_to_json(const RecordDocument& r);

// JSON Lines, blank lines skipped. Errors carry the line number.
std::vector<RecordDocument> read_jsonl(std::istream& in);

struct CsvOptions {
    std::string ref_column;  // empty: first column
    char delimiter = ',';
    char value_separator = ';';
};

// Header row names the types; each cell holds separator-joined values.
std::vector<RecordDocument> read_csv(std::istream& in, const CsvOptions& options = {});

// --- persistence -------------------------------------------------------------

inline constexpr int kSnapshotVersion = 1;

nlohmann::json snapshot_to_json(const DatasetStore& store);
DatasetStore snapshot_from_json(const nlohmann::json& j);

// Writes atomically through a temporary file. Throws Error(IoError).
void save_snapshot(const DatasetStore& store, const std::filesystem::path& path);
// Throws Error(IoError | VersionMismatch); never returns a partial store.
DatasetStore load_snapshot(const std::filesystem::path& path);

} // namespace hyperfacet

#pragma once

#include <unistd.h>

#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "hyperfacet/store.hpp"

namespace hyperfacet::testing {

inline std::filesystem::path data_dir() {
    return HYPERFACET_DATA_DIR;
}

inline std::string read_text(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

inline SchemaHypergraph load_schema(const std::string& name) {
    return schema_from_json(nlohmann::json::parse(read_text(data_dir() / name)));
}

inline std::vector<RecordDocument> load_jsonl(const std::string& name) {
    std::ifstream in(data_dir() / name);
    return read_jsonl(in);
}

// D1: r1:{rho:{v1}, alpha:{x,y}, alpha':{k}}; r2:{rho:{v1,v2}, alpha:{y,z},
// alpha':{m}}; r3:{rho:{v2}, alpha:{y,z}, alpha':{m}}; r4:{rho:{v3},
// alpha:{y,z}}.
inline DatasetStore d1_store() {
    return ingest(load_jsonl("d1.jsonl"), load_schema("d1_schema.json")).first;
}

inline SearchResult d1_search() {
    return SearchResult{{"r1", "r2", "r3", "r4"}};
}

inline DatasetStore publication_store() {
    return ingest(load_jsonl("publications.jsonl"), load_schema("publication_schema.json"), {true}).first;
}

// Scratch directory removed on scope exit.
class TempDir {
public:
    TempDir() {
        static int counter = 0;
        path_ = std::filesystem::temp_directory_path() /
                ("hyperfacet-test-" + std::to_string(::getpid()) + "-" + std::to_string(counter++));
        std::filesystem::create_directories(path_);
    }
    ~TempDir() {
        std::error_code ec;
        std::filesystem::remove_all(path_, ec);
    }
    TempDir(const TempDir&) = delete;
    TempDir& operator=(const TempDir&) = delete;

    std::filesystem::path operator/(const std::string& name) const { return path_ / name; }
    const std::filesystem::path& path() const { return path_; }

private:
    std::filesystem::path path_;
};

struct GeneratedDataset {
    std::vector<std::string> types;
    std::vector<RecordDocument> records;
};

// Random small dataset: 2..max_types types named t0.., 1..max_refs records,
// each type drawing from its own domain of 1..max_values values. Every
// record takes a uniformly random subset (possibly empty) of each domain.
inline GeneratedDataset random_dataset(std::mt19937_64& rng, int max_types = 5, int max_refs = 8,
                                       int max_values = 4) {
    auto pick = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
    GeneratedDataset ds;
    const int n_types = pick(2, max_types);
    std::vector<int> domain(n_types);
    for (int t = 0; t < n_types; ++t) {
        ds.types.push_back("t" + std::to_string(t));
        domain[t] = pick(1, max_values);
    }
    const int n_refs = pick(1, max_refs);
    for (int r = 0; r < n_refs; ++r) {
        RecordDocument rec{"r" + std::to_string(r), {}};
        for (int t = 0; t < n_types; ++t) {
            auto& values = rec.attrs[ds.types[t]];
            for (int v = 0; v < domain[t]; ++v) {
                if (pick(0, 1) == 1) values.insert(ds.types[t] + "v" + std::to_string(v));
            }
        }
        ds.records.push_back(std::move(rec));
    }
    return ds;
}

inline SchemaHypergraph schema_for(const GeneratedDataset& ds) {
    nlohmann::json j = {{"types", ds.types}, {"edges", {{{"id", "all"}, {"members", ds.types}}}}};
    return schema_from_json(j);
}

inline DatasetStore store_for(const GeneratedDataset& ds) {
    return ingest(ds.records, schema_for(ds)).first;
}

} // namespace hyperfacet::testing

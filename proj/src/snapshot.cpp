#include <fstream>
#include <sstream>
#include <system_error>

#include "hyperfacet/error.hpp"
#include "hyperfacet/store.hpp"

namespace hyperfacet {

using nlohmann::json;

json snapshot_to_json(const DatasetStore& store) {
    json entities = json::array();
    for (const auto& [ref, entity] : store.entities()) {
        entities.push_back(record_to_json(RecordDocument{ref, entity.attrs}));
    }
    return json{{"version", kSnapshotVersion},
                {"schema", schema_to_json(store.schema())},
                {"entities", std::move(entities)}};
}

DatasetStore snapshot_from_json(const json& j) {
    if (!j.is_object() || !j.contains("version") || !j["version"].is_number_integer()) {
        throw Error(ErrorCode::VersionMismatch, "snapshot carries no format version");
    }
    if (j["version"].get<int>() != kSnapshotVersion) {
        throw Error(ErrorCode::VersionMismatch, "snapshot version " + j["version"].dump() +
                                                    " is not supported (expected " +
                                                    std::to_string(kSnapshotVersion) + ")");
    }
    try {
        if (!j.contains("schema") || !j.contains("entities") || !j["entities"].is_array()) {
            throw Error(ErrorCode::IoError, "snapshot needs 'schema' and 'entities'");
        }
        SchemaHypergraph schema = schema_from_json(j["schema"]);
        std::map<Ref, PhysicalEntity, std::less<>> entities;
        for (const auto& e : j["entities"]) {
            RecordDocument r = record_from_json(e);
            PhysicalEntity entity{r.ref, {}};
            for (auto& [type, values] : r.attrs) {
                if (!schema.has_type(type)) {
                    throw Error(ErrorCode::IoError, "entity '" + r.ref + "' uses type '" + type + "' outside the schema");
                }
                if (!values.empty()) entity.attrs.emplace(type, std::move(values));
            }
            if (!entities.emplace(r.ref, std::move(entity)).second) {
                throw Error(ErrorCode::IoError, "entity '" + r.ref + "' appears twice");
            }
        }
        return DatasetStore(std::move(schema), std::move(entities));
    } catch (const Error& e) {
        throw Error(ErrorCode::IoError, std::string("corrupt snapshot: ") + e.what());
    } catch (const json::exception& e) {
        throw Error(ErrorCode::IoError, std::string("corrupt snapshot: ") + e.what());
    }
}

void save_snapshot(const DatasetStore& store, const std::filesystem::path& path) {
    const std::string body = snapshot_to_json(store).dump() + "\n";
    std::filesystem::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) {
            throw Error(ErrorCode::IoError, "cannot open '" + tmp.string() + "' for writing");
        }
        out.write(body.data(), static_cast<std::streamsize>(body.size()));
        out.flush();
        if (!out) {
            throw Error(ErrorCode::IoError, "write to '" + tmp.string() + "' failed");
        }
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) {
        std::filesystem::remove(tmp, ec);
        throw Error(ErrorCode::IoError, "cannot move snapshot into '" + path.string() + "'");
    }
}

DatasetStore load_snapshot(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw Error(ErrorCode::IoError, "cannot open snapshot '" + path.string() + "'");
    }
    std::stringstream buf;
    buf << in.rdbuf();
    json j = json::parse(buf.str(), nullptr, false);
    if (j.is_discarded()) {
        throw Error(ErrorCode::IoError, "snapshot '" + path.string() + "' is not valid JSON");
    }
    return snapshot_from_json(j);
}

} // namespace hyperfacet

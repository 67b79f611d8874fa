#include <algorithm>
#include <istream>
#include <sstream>

#include "hyperfacet/error.hpp"
#include "hyperfacet/store.hpp"

namespace hyperfacet {

using nlohmann::json;

namespace {

std::string scalar_to_string(const json& v) {
    if (v.is_string()) return v.get<std::string>();
    if (v.is_number_integer()) return std::to_string(v.get<std::int64_t>());
    if (v.is_number_unsigned()) return std::to_string(v.get<std::uint64_t>());
    if (v.is_number_float()) return v.dump();
    throw Error(ErrorCode::MalformedRecord, "attribute values must be strings or numbers");
}

} // namespace

RecordDocument record_from_json(const json& j) {
    if (!j.is_object() || !j.contains("ref")) {
        throw Error(ErrorCode::MalformedRecord, "record needs a 'ref'");
    }
    RecordDocument r;
    r.ref = scalar_to_string(j["ref"]);
    if (r.ref.empty()) {
        throw Error(ErrorCode::MalformedRecord, "record has an empty ref");
    }
    if (!j.contains("attrs")) return r;
    if (!j["attrs"].is_object()) {
        throw Error(ErrorCode::MalformedRecord, "record '" + r.ref + "': 'attrs' must be an object");
    }
    for (const auto& [type, values] : j["attrs"].items()) {
        auto& out = r.attrs[type];
        if (values.is_array()) {
            for (const auto& v : values) {
                std::string s = scalar_to_string(v);
                if (s.empty()) {
                    throw Error(ErrorCode::MalformedRecord,
                                "record '" + r.ref + "' has an empty value for type '" + type + "'");
                }
                out.insert(std::move(s));
            }
        } else if (!values.is_null()) {
            // a lone scalar is shorthand for a one-value list
            std::string s = scalar_to_string(values);
            if (s.empty()) {
                throw Error(ErrorCode::MalformedRecord,
                            "record '" + r.ref + "' has an empty value for type '" + type + "'");
            }
            out.insert(std::move(s));
        }
    }
    return r;
}

json record_to_json(const RecordDocument& r) {
    json attrs = json::object();
    for (const auto& [type, values] : r.attrs) attrs[type] = values;
    return json{{"ref", r.ref}, {"attrs", std::move(attrs)}};
}

std::vector<RecordDocument> read_jsonl(std::istream& in) {
    std::vector<RecordDocument> out;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        try {
            out.push_back(record_from_json(json::parse(line)));
        } catch (const json::exception& e) {
            throw Error(ErrorCode::MalformedRecord, "line " + std::to_string(lineno) + ": " + e.what());
        } catch (const Error& e) {
            throw Error(e.code(), "line " + std::to_string(lineno) + ": " + e.what());
        }
    }
    return out;
}

namespace {

// RFC 4180 row splitting: quoted fields may contain delimiters, doubled
// quotes and newlines. Returns false at end of input.
bool read_csv_row(std::istream& in, char delimiter, std::vector<std::string>& row) {
    row.clear();
    if (in.peek() == std::char_traits<char>::eof()) return false;
    std::string field;
    bool quoted = false;
    bool any = false;
    char c = 0;
    while (in.get(c)) {
        any = true;
        if (quoted) {
            if (c == '"') {
                if (in.peek() == '"') {
                    field += '"';
                    in.get();
                } else {
                    quoted = false;
                }
            } else {
                field += c;
            }
        } else if (c == '"') {
            quoted = true;
        } else if (c == delimiter) {
            row.push_back(std::move(field));
            field.clear();
        } else if (c == '\n') {
            break;
        } else if (c != '\r') {
            field += c;
        }
    }
    if (quoted) {
        throw Error(ErrorCode::MalformedRecord, "unterminated quoted CSV field");
    }
    if (any) row.push_back(std::move(field));
    return any;
}

std::vector<std::string> split_values(const std::string& cell, char sep) {
    std::vector<std::string> out;
    std::stringstream ss(cell);
    std::string item;
    while (std::getline(ss, item, sep)) {
        if (!item.empty()) out.push_back(item);
    }
    return out;
}

} // namespace

std::vector<RecordDocument> read_csv(std::istream& in, const CsvOptions& options) {
    std::vector<std::string> header;
    if (!read_csv_row(in, options.delimiter, header) || header.empty()) {
        return {};
    }
    std::size_t ref_col = 0;
    if (!options.ref_column.empty()) {
        auto it = std::find(header.begin(), header.end(), options.ref_column);
        if (it == header.end()) {
            throw Error(ErrorCode::MalformedRecord, "CSV header has no column '" + options.ref_column + "'");
        }
        ref_col = static_cast<std::size_t>(it - header.begin());
    }

    std::vector<RecordDocument> out;
    std::vector<std::string> row;
    std::size_t rowno = 1;
    while (read_csv_row(in, options.delimiter, row)) {
        ++rowno;
        if (row.size() == 1 && row[0].empty()) continue;
        if (row.size() != header.size()) {
            throw Error(ErrorCode::MalformedRecord, "CSV row " + std::to_string(rowno) + " has " +
                                                        std::to_string(row.size()) + " fields, expected " +
                                                        std::to_string(header.size()));
        }
        RecordDocument r;
        r.ref = row[ref_col];
        if (r.ref.empty()) {
            throw Error(ErrorCode::MalformedRecord, "CSV row " + std::to_string(rowno) + " has an empty ref");
        }
        for (std::size_t c = 0; c < header.size(); ++c) {
            if (c == ref_col) continue;
            auto& values = r.attrs[header[c]];
            for (auto& v : split_values(row[c], options.value_separator)) values.insert(std::move(v));
        }
        out.push_back(std::move(r));
    }
    return out;
}

} // namespace hyperfacet

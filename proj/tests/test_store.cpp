#include <doctest.h>

#include <random>
#include <sstream>

#include "fixtures.hpp"
#include "hyperfacet/error.hpp"
#include "hyperfacet/store.hpp"

using namespace hyperfacet;
using nlohmann::json;

namespace {

template <class F>
ErrorCode code_of(F&& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.code();
    }
    FAIL("no error thrown");
    return ErrorCode::IoError;
}

SchemaHypergraph abc_schema() {
    return schema_from_json({{"types", {"a", "b", "c"}}, {"edges", {{{"members", {"a", "b", "c"}}}}}});
}

// Brute-force search over entities; independent of the inverted index.
RefSet scan(const DatasetStore& store, const SearchQuery& q) {
    RefSet out;
    for (const auto& [ref, entity] : store.entities()) {
        bool keep = true;
        for (const auto& t : q.all) keep = keep && entity.values(t.type).contains(t.value);
        if (!q.any.empty()) {
            bool hit = false;
            for (const auto& t : q.any) hit = hit || entity.values(t.type).contains(t.value);
            keep = keep && hit;
        }
        if (keep) out.insert(ref);
    }
    return out;
}

} // namespace

TEST_SUITE("store") {

TEST_CASE("D1 ingests into four entities with the expected inverted index") {
    auto [store, report] = ingest(testing::load_jsonl("d1.jsonl"), testing::load_schema("d1_schema.json"));
    CHECK(store.size() == 4);
    CHECK(report.records == 4);
    CHECK(store.lookup("rho", "v1") == RefSet{"r1", "r2"});
    CHECK(store.lookup("rho", "v2") == RefSet{"r2", "r3"});
    CHECK(store.lookup("alpha_prime", "m") == RefSet{"r2", "r3"});
    CHECK(store.lookup("rho", "nope").empty());
    CHECK(store.values("r4", "alpha_prime").empty());
    CHECK(report.values_per_type.at("alpha") == 3);
    CHECK(code_of([&] { store.values("r9", "rho"); }) == ErrorCode::UnknownReference);
}

TEST_CASE("empty stream gives an empty store and zero report") {
    auto [store, report] = ingest({}, abc_schema());
    CHECK(store.size() == 0);
    CHECK(report.records == 0);
    CHECK(report.values_per_type.empty());
    CHECK(report.uninstantiated_types == TypeSet{"a", "b", "c"});
}

TEST_CASE("identical repeats are idempotent, differing repeats are rejected") {
    RecordDocument r{"x", {{"a", {"1"}}}};
    auto [once, _] = ingest(std::vector{r}, abc_schema());
    auto [twice, report] = ingest(std::vector{r, r}, abc_schema());
    CHECK(once == twice);
    CHECK(report.records == 2);
    CHECK(report.duplicates == 1);

    RecordDocument other{"x", {{"a", {"2"}}}};
    CHECK(code_of([&] { ingest(std::vector{r, other}, abc_schema()); }) == ErrorCode::DuplicateRef);
}

TEST_CASE("strict and lenient handling of unknown types") {
    std::vector<RecordDocument> records{{"x", {{"z", {"1"}}}}, {"y", {{"z", {"2"}}}}};
    CHECK(code_of([&] { ingest(records, abc_schema(), {true}); }) == ErrorCode::UnknownType);

    auto [store, report] = ingest(records, abc_schema());
    CHECK(store.has_type("z"));
    CHECK(report.added_types == TypeSet{"z"});
    CHECK(report.unknown_type_occurrences.at("z") == 2);
    // added as an isolated type
    for (const auto& e : store.schema().carrier.edges) CHECK_FALSE(e.members.contains("z"));
}

TEST_CASE("malformed records and value normalization") {
    CHECK(code_of([] { ingest(std::vector<RecordDocument>{{"", {}}}, abc_schema()); }) == ErrorCode::MalformedRecord);
    CHECK(code_of([] { ingest(std::vector<RecordDocument>{{"x", {{"a", {"  "}}}}}, abc_schema(), {false, false, true}); }) ==
          ErrorCode::MalformedRecord);

    auto [store, _] = ingest(std::vector<RecordDocument>{{"x", {{"a", {" Foo ", "foo"}}}}}, abc_schema(),
                             {false, true, true});
    CHECK(store.values("x", "a") == ValueSet{"foo"});

    auto [exact, __] = ingest(std::vector<RecordDocument>{{"x", {{"a", {"Foo", "foo"}}}}}, abc_schema());
    CHECK(exact.values("x", "a").size() == 2);
}

TEST_CASE("reference type is stored both as key and as attribute") {
    SchemaHypergraph s = schema_from_json({{"types", json::array({"id", "a"})}, {"edges", {{{"members", json::array({"id", "a"})}}}}, {"ref_type", "id"}});
    auto [store, _] = ingest(std::vector<RecordDocument>{{"p1", {{"a", {"x"}}}}}, s);
    CHECK(store.values("p1", "id") == ValueSet{"p1"});
    CHECK(store.lookup("id", "p1") == RefSet{"p1"});

    CHECK(code_of([&] { ingest(std::vector<RecordDocument>{{"p1", {{"id", {"p2"}}}}}, s); }) ==
          ErrorCode::MalformedRecord);
}

TEST_CASE("search examples on D1") {
    DatasetStore d1 = testing::d1_store();
    CHECK(search(d1, SearchQuery{{{"rho", "v1"}}, {}}).refs == RefSet{"r1", "r2"});
    CHECK(search(d1, SearchQuery{{}, {{"rho", "v1"}, {"rho", "v3"}}}).refs == RefSet{"r1", "r2", "r4"});
    CHECK(search(d1, SearchQuery{{{"rho", "v1"}, {"rho", "v2"}}, {}}).refs == RefSet{"r2"});
    CHECK(search(d1, SearchQuery{{{"alpha", "y"}}, {{"alpha_prime", "k"}}}).refs == RefSet{"r1"});
    CHECK(search(d1, SearchQuery{{{"rho", "v9"}}, {}}).refs.empty());

    CHECK(code_of([&] { search(d1, SearchQuery{}); }) == ErrorCode::InvalidQuery);
    CHECK(code_of([&] { search(d1, SearchQuery{{{"nope", "v1"}}, {}}); }) == ErrorCode::UnknownType);
}

TEST_CASE("search agrees with a scan over entities on random stores") {
    std::mt19937_64 rng(17);
    std::uniform_int_distribution<int> n_refs(0, 100), n_terms(0, 3), type(0, 2), value(0, 5), bit(0, 2);
    const char* types[] = {"a", "b", "c"};
    for (int trial = 0; trial < 100; ++trial) {
        std::vector<RecordDocument> records;
        const int n = n_refs(rng);
        for (int r = 0; r < n; ++r) {
            RecordDocument rec{"r" + std::to_string(r), {}};
            for (const char* t : types) {
                for (int v = 0; v < 6; ++v) {
                    if (bit(rng) == 0) rec.attrs[t].insert(std::to_string(v));
                }
            }
            records.push_back(rec);
        }
        auto [store, _] = ingest(records, abc_schema());
        CHECK(DatasetStore::transpose(store.entities()) == store.inverted());

        for (int q = 0; q < 10; ++q) {
            SearchQuery query;
            for (int k = n_terms(rng); k > 0; --k) query.all.push_back({types[type(rng)], std::to_string(value(rng))});
            for (int k = n_terms(rng); k > 0; --k) query.any.push_back({types[type(rng)], std::to_string(value(rng))});
            if (query.all.empty() && query.any.empty()) query.any.push_back({"a", "0"});
            CHECK(search(store, query).refs == scan(store, query));
        }
    }
}

TEST_CASE("transpose is consistent after any ingest sequence") {
    std::mt19937_64 rng(23);
    for (int trial = 0; trial < 50; ++trial) {
        auto ds = testing::random_dataset(rng);
        StoreBuilder builder(testing::schema_for(ds));
        for (const auto& r : ds.records) builder.add(r);
        for (const auto& r : ds.records) builder.add(r);
        auto [store, report] = std::move(builder).finish();
        CHECK(report.duplicates == ds.records.size());
        CHECK(DatasetStore::transpose(store.entities()) == store.inverted());
    }
}

TEST_CASE("infer_schema groups co-present types") {
    std::vector<RecordDocument> same{{"1", {{"a", {"x"}}, {"b", {"y"}}}}, {"2", {{"a", {"z"}}, {"b", {"w"}}}}};
    SchemaHypergraph s = infer_schema(same);
    REQUIRE(s.carrier.edges.size() == 1);
    CHECK(s.carrier.edges[0].members == TypeSet{"a", "b"});

    std::vector<RecordDocument> two{{"1", {{"a", {"x"}}, {"b", {"y"}}}}, {"2", {{"b", {"z"}}, {"c", {"w"}}}}};
    s = infer_schema(two);
    REQUIRE(s.carrier.edges.size() == 2);
    CHECK(s.carrier.edges[0].members == TypeSet{"a", "b"});
    CHECK(s.carrier.edges[1].members == TypeSet{"b", "c"});

    s = infer_schema(std::vector<RecordDocument>{{"1", {{"a", {"x"}}}}});
    REQUIRE(s.carrier.edges.size() == 1);
    CHECK(s.carrier.edges[0].members == TypeSet{"a"});

    CHECK(code_of([] { infer_schema({}); }) == ErrorCode::MalformedRecord);
}

TEST_CASE("query JSON accepts objects and pairs") {
    SearchQuery q = query_from_json(json::parse(R"({"all":[{"type":"a","value":"1"}],"any":[["b","2"]]})"));
    REQUIRE(q.all.size() == 1);
    CHECK(q.all[0] == Term{"a", "1"});
    CHECK(q.any[0] == Term{"b", "2"});
    CHECK(query_to_json(q).dump() == R"({"all":[{"type":"a","value":"1"}],"any":[{"type":"b","value":"2"}]})");

    CHECK(code_of([] { query_from_json(json::object()); }) == ErrorCode::InvalidQuery);
    CHECK(code_of([] { query_from_json(json::parse(R"({"all":[3]})")); }) == ErrorCode::InvalidQuery);
    CHECK(code_of([] { query_from_json(json::array()); }) == ErrorCode::InvalidQuery);
}

TEST_CASE("JSONL records stringify numbers and report line numbers") {
    std::istringstream in("{\"ref\":7,\"attrs\":{\"a\":[1,\"x\"],\"b\":\"solo\"}}\n\n{\"ref\":\"q\"}\n");
    auto records = read_jsonl(in);
    REQUIRE(records.size() == 2);
    CHECK(records[0].ref == "7");
    CHECK(records[0].attrs.at("a") == ValueSet{"1", "x"});
    CHECK(records[0].attrs.at("b") == ValueSet{"solo"});
    CHECK(records[1].attrs.empty());
    CHECK(record_from_json(record_to_json(records[0])) == records[0]);

    std::istringstream bad("{\"ref\":\"a\"}\nnot json\n");
    try {
        read_jsonl(bad);
        FAIL("expected MalformedRecord");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::MalformedRecord);
        CHECK(std::string(e.what()).starts_with("line 2"));
    }
    std::istringstream empty_value("{\"ref\":\"a\",\"attrs\":{\"t\":[\"\"]}}\n");
    CHECK(code_of([&] { read_jsonl(empty_value); }) == ErrorCode::MalformedRecord);
}

TEST_CASE("CSV adapter splits multi-valued cells") {
    std::istringstream in("id,kw,org\r\np1,\"graph;hyper\",\"A, Inc.\"\np2,,B\n");
    auto records = read_csv(in);
    REQUIRE(records.size() == 2);
    CHECK(records[0].ref == "p1");
    CHECK(records[0].attrs.at("kw") == ValueSet{"graph", "hyper"});
    CHECK(records[0].attrs.at("org") == ValueSet{"A, Inc."});
    CHECK(records[1].attrs.at("kw").empty());

    std::istringstream tabbed("kw\tid\nx|y\tp1\n");
    records = read_csv(tabbed, CsvOptions{"id", '\t', '|'});
    REQUIRE(records.size() == 1);
    CHECK(records[0].ref == "p1");
    CHECK(records[0].attrs.at("kw") == ValueSet{"x", "y"});

    std::istringstream ragged("a,b\n1\n");
    CHECK(code_of([&] { read_csv(ragged); }) == ErrorCode::MalformedRecord);
    std::istringstream unterminated("a,b\n1,\"x\n");
    CHECK(code_of([&] { read_csv(unterminated); }) == ErrorCode::MalformedRecord);
    std::istringstream missing("a,b\n1,2\n");
    CHECK(code_of([&] { read_csv(missing, CsvOptions{"zz"}); }) == ErrorCode::MalformedRecord);
}

TEST_CASE("snapshot round-trip and byte stability") {
    testing::TempDir dir;
    DatasetStore d1 = testing::d1_store();
    save_snapshot(d1, dir / "a.snap");
    save_snapshot(d1, dir / "b.snap");
    CHECK(testing::read_text(dir / "a.snap") == testing::read_text(dir / "b.snap"));
    CHECK_FALSE(std::filesystem::exists(dir / "a.snap.tmp"));

    DatasetStore back = load_snapshot(dir / "a.snap");
    CHECK(back == d1);
    save_snapshot(back, dir / "c.snap");
    CHECK(testing::read_text(dir / "c.snap") == testing::read_text(dir / "a.snap"));

    DatasetStore pub = testing::publication_store();
    save_snapshot(pub, dir / "p.snap");
    CHECK(load_snapshot(dir / "p.snap") == pub);
}

TEST_CASE("snapshot load failures") {
    testing::TempDir dir;
    CHECK(code_of([&] { load_snapshot(dir / "missing.snap"); }) == ErrorCode::IoError);

    auto write = [&](const std::string& name, const std::string& body) {
        std::ofstream(dir / name) << body;
        return dir / name;
    };
    CHECK(code_of([&] { load_snapshot(write("garbage", "{{{")); }) == ErrorCode::IoError);
    CHECK(code_of([&] { load_snapshot(write("old", R"({"version":0,"schema":{},"entities":[]})")); }) ==
          ErrorCode::VersionMismatch);
    CHECK(code_of([&] { load_snapshot(write("nover", R"({"schema":{},"entities":[]})")); }) ==
          ErrorCode::VersionMismatch);
    CHECK(code_of([&] { load_snapshot(write("broken", R"({"version":1,"schema":{"types":["a"]},"entities":[{"ref":"x","attrs":{"q":["1"]}}]})")); }) ==
          ErrorCode::IoError);
}

} // TEST_SUITE

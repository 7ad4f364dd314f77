#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <ellischub/ellclasses.hpp>

#include <fstream>

using namespace ellsc;

namespace {

std::string data_path(const std::string& name) {
    return std::string(ELLISCHUB_DATA_DIR) + "/" + name;
}

EqualityConfig quick() {
    EqualityConfig cfg;
    cfg.order = 3;
    cfg.points = 2;
    return cfg;
}

}  // namespace

TEST_CASE("three-letter golden table matches the computed classes") {
    LocalClassTable golden = load_table(data_path("gl3.json"));
    CHECK(golden.group == "a2");
    CHECK(golden.entries.size() == 36);

    const RootDatum& D = RootDatum::builtin("a2");
    TableDiff diff = diff_tables(D, emit_table(D, "a2"), golden, quick());
    CHECK(diff.missing.empty());
    CHECK(diff.extra.empty());
    CHECK(diff.unequal.empty());
}

TEST_CASE("rank-two symplectic golden table matches the computed classes") {
    LocalClassTable golden = load_table(data_path("sp2.json"));
    CHECK(golden.group == "c2");
    CHECK(golden.entries.size() == 64);

    const RootDatum& D = RootDatum::builtin("c2");
    TableDiff diff = diff_tables(D, emit_table(D, "c2"), golden, quick());
    CHECK(diff.missing.empty());
    CHECK(diff.extra.empty());
    CHECK(diff.unequal.empty());
}

TEST_CASE("checksum seals the shipped files against edits") {
    std::ifstream in(data_path("gl3.json"));
    REQUIRE(in.good());
    nlohmann::json j;
    in >> j;
    REQUIRE(j.contains("checksum"));

    // any value edit invalidates the seal
    nlohmann::json tampered = j;
    tampered["entries"][6]["expr"]["terms"][0]["scalar"] = "2";
    CHECK_THROWS_AS(table_from_json(tampered), UsageError);

    // reordering entries invalidates it too (the dump is order-sensitive)
    nlohmann::json swapped = j;
    std::swap(swapped["entries"][0], swapped["entries"][1]);
    CHECK_THROWS_AS(table_from_json(swapped), UsageError);
}

#include <doctest.h>

#include <cstdio>
#include <fstream>

#include "helpers.hpp"
#include "linent/bounds.hpp"
#include "linent/errors.hpp"
#include "linent/state_io.hpp"

using namespace linent;
using linent::testing::bell_state;
using linent::testing::werner_state;

TEST_CASE("state json round trip is exact") {
    const DensityMatrix w = werner_state(0.3);
    const nlohmann::ordered_json j = state_to_json(w);
    const DensityMatrix back = state_from_json(j);
    CHECK(back.dims() == w.dims());
    CHECK(max_abs_diff(back.matrix(), w.matrix()) == 0.0);
}

TEST_CASE("file round trip") {
    const std::string path = "io_roundtrip_state.json";
    save_state(bell_state(), path);
    const DensityMatrix back = load_state(path);
    CHECK(back.dims() == std::vector<int>{2, 2});
    CHECK(max_abs_diff(back.matrix(), bell_state().matrix()) == 0.0);
    std::remove(path.c_str());
}

TEST_CASE("missing file and malformed json") {
    CHECK_THROWS_AS(load_state("no_such_file.json"), StructuralError);
    const std::string path = "io_malformed.json";
    std::ofstream(path) << "{ not json";
    CHECK_THROWS_AS(load_state(path), StructuralError);
    std::remove(path.c_str());
}

TEST_CASE("shape problems are structural, not physical") {
    nlohmann::json j;
    j["dims"] = {2, 2};

    SUBCASE("missing matrix") {
        CHECK_THROWS_AS(state_from_json(j), StructuralError);
    }
    SUBCASE("row count mismatch") {
        j["matrix"] = nlohmann::json::array();
        for (int i = 0; i < 3; ++i) {
            nlohmann::json row = nlohmann::json::array();
            for (int k = 0; k < 3; ++k) row.push_back({0.0, 0.0});
            j["matrix"].push_back(row);
        }
        CHECK_THROWS_AS(state_from_json(j), StructuralError);
    }
    SUBCASE("ragged row") {
        j["dims"] = {2};
        j["matrix"] = {{{1.0, 0.0}, {0.0, 0.0}}, {{0.0, 0.0}}};
        CHECK_THROWS_AS(state_from_json(j), StructuralError);
    }
    SUBCASE("entry not a pair") {
        j["dims"] = {2};
        j["matrix"] = {{{1.0, 0.0}, {0.0, 0.0}}, {{0.0, 0.0}, 0.0}};
        CHECK_THROWS_AS(state_from_json(j), StructuralError);
    }
    SUBCASE("dims entries must be positive integers") {
        j["dims"] = {2, 0};
        j["matrix"] = nlohmann::json::array();
        CHECK_THROWS_AS(state_from_json(j), StructuralError);
    }
}

TEST_CASE("physical rejection still reaches validation for good shapes") {
    nlohmann::json j;
    j["dims"] = {2};
    j["matrix"] = {{{1.2, 0.0}, {0.0, 0.0}}, {{0.0, 0.0}, {-0.2, 0.0}}};
    CHECK_THROWS_AS(state_from_json(j), ParameterError);
}

TEST_CASE("bound report serialization") {
    const BoundReport rep = evaluate_all(bell_state());
    const nlohmann::ordered_json j = report_to_json(rep);
    CHECK(j["dims"] == nlohmann::json({2, 2}));
    CHECK(j["witness"] == true);
    CHECK(j["all_satisfied"] == true);
    CHECK(j["bounds"]["sharp"]["branch"] == "isa");
    CHECK(j["bounds"]["audenaert"]["applicable"] == true);
    CHECK(j["bounds"]["dssa"]["applicable"] == false);
    CHECK(!j["bounds"]["dssa"].contains("value"));
    CHECK(std::abs(j["bounds"]["sharp"]["value"].get<double>() - 0.75) <=
          1e-12);
}

TEST_CASE("sisa report serialization") {
    const SisaReport rep = evaluate_sisa(linent::testing::ghz_state());
    const nlohmann::ordered_json j = report_to_json(rep);
    CHECK(j["dims"] == nlohmann::json({2, 2, 2}));
    CHECK(std::abs(j["bound"].get<double>() - 0.625) <= 1e-12);
    CHECK(j["satisfied"] == true);
    CHECK(j["witness"] == true);
}

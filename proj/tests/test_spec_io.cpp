#include <catch2/catch_amalgamated.hpp>
#include <nlohmann/json.hpp>

#include "equivect/context.hpp"
#include "equivect/spec_io.hpp"
#include "oracles.hpp"

using namespace equivect;
using nlohmann::json;

TEST_CASE("every shipped spec loads and validates") {
    for (const char* name : {"z1", "z2", "z3", "z4", "z5", "z6", "z7", "d2", "d3", "d4", "tetra",
                             "octa", "icosa", "q8xz3", "d3kernel"}) {
        INFO("spec " << name);
        const GroupSpec s = oracles::spec(name);
        REQUIRE(s.name == name);
        REQUIRE_NOTHROW(detail::validate_spec(s));
        REQUIRE(s.generators.size() == s.rho.size());
    }
}

TEST_CASE("serialization round trip preserves all fields") {
    for (const char* name : {"z3", "d4", "icosa", "q8xz3", "d3kernel"}) {
        const GroupSpec a = oracles::spec(name);
        const GroupSpec b = parse_spec_json(spec_to_json(a));
        REQUIRE(a.name == b.name);
        REQUIRE(a.points == b.points);
        REQUIRE(a.generators == b.generators);
        REQUIRE(a.expected_image == b.expected_image);
        REQUIRE(a.rho.size() == b.rho.size());
        for (std::size_t i = 0; i < a.rho.size(); ++i) {
            REQUIRE(a.rho[i].kind == b.rho[i].kind);
            REQUIRE(a.rho[i].n == b.rho[i].n);
            REQUIRE(a.rho[i].index == b.rho[i].index);
        }
    }
}

TEST_CASE("parser rejects malformed documents") {
    const auto reject = [](const char* text) {
        REQUIRE_THROWS_AS(parse_spec_json(json::parse(text)), InputError);
    };
    reject(R"([])");                           // not an object
    reject(R"({"points": 3})");                // missing schema
    reject(R"({"schema": "other/1", "points": 3, "generators": [], "rho_bar": []})");
    reject(R"({"schema": "equivect-spec/1", "generators": [], "rho_bar": []})");  // no points
    reject(R"({"schema": "equivect-spec/1", "points": "3", "generators": [], "rho_bar": []})");
    reject(R"({"schema": "equivect-spec/1", "points": 3, "generators": 5, "rho_bar": []})");
    reject(R"({"schema": "equivect-spec/1", "points": 3, "generators": [[0, "x", 2]], "rho_bar": [{"a_n": 1}]})");
    reject(R"({"schema": "equivect-spec/1", "points": 3, "generators": [], "rho_bar": [5]})");
    reject(R"({"schema": "equivect-spec/1", "points": 3, "generators": [], "rho_bar": [{"c_n": 3}]})");
    reject(R"({"schema": "equivect-spec/1", "points": 3, "generators": [], "rho_bar": [{"a_n": 0}]})");
    reject(R"({"schema": "equivect-spec/1", "points": 3, "generators": [], "rho_bar": [{"b": 1}]})");
    reject(R"({"schema": "equivect-spec/1", "points": 3, "generators": [], "rho_bar": [], "expected_image": 4})");
}

TEST_CASE("validation rejects inconsistent specs") {
    const auto reject = [](const char* text) {
        const GroupSpec s = parse_spec_json(json::parse(text));
        REQUIRE_THROWS_AS(detail::validate_spec(s), InputError);
    };
    // token count mismatch
    reject(R"({"schema": "equivect-spec/1", "points": 3, "generators": [[1, 2, 0]], "rho_bar": []})");
    // degree mismatch
    reject(R"({"schema": "equivect-spec/1", "points": 4, "generators": [[1, 2, 0]], "rho_bar": [{"a_n": 3}]})");
    // not a permutation
    reject(R"({"schema": "equivect-spec/1", "points": 3, "generators": [[0, 0, 1]], "rho_bar": [{"a_n": 3}]})");
    // duplicate generator permutations
    reject(R"({"schema": "equivect-spec/1", "points": 3,
               "generators": [[1, 2, 0], [1, 2, 0]], "rho_bar": [{"a_n": 3}, {"a_n": 3}]})");
    // out-of-range polyhedral generator index
    reject(R"({"schema": "equivect-spec/1", "points": 4, "generators": [[1, 0, 3, 2]], "rho_bar": [{"T_gen": 2}]})");
}

TEST_CASE("build context surfaces semantic errors with the right types") {
    // declared image that does not match the assignment
    GroupSpec wrong = oracles::spec("z3");
    wrong.expected_image = "Z5";
    REQUIRE_THROWS_AS(build_context(wrong, 0), InputError);

    // character index out of range
    REQUIRE_THROWS_AS(build_context(oracles::spec("z3"), 7), InputError);

    // rotation assignment that is not a homomorphism of the permutation group
    GroupSpec bad = oracles::spec("z3");
    bad.rho[0].n = 4;  // a 3-cycle cannot map to a quarter turn
    REQUIRE_THROWS(build_context(bad, 0));
}

TEST_CASE("non-standard poses are reported as out of scope") {
    // the same dihedral kernel spec, but with the half-turn about the x-axis
    GroupSpec s = oracles::spec("d3kernel");
    REQUIRE(s.rho[1].kind == RhoToken::Kind::kAxisRotation);
    s.rho[0] = {RhoToken::Kind::kAxisRotation, 1, 0};
    s.rho[1] = {RhoToken::Kind::kFlip, 1, 0};
    s.expected_image.reset();
    REQUIRE_THROWS_AS(build_context(s, 0), ScopeError);
}

TEST_CASE("missing and unreadable files") {
    REQUIRE_THROWS_AS(load_spec_file("/nonexistent/spec.json"), InputError);
}

TEST_CASE("file stem names an anonymous spec") {
    const std::string path = "/tmp/equivect_anon_spec.json";
    {
        nlohmann::ordered_json j;
        j["schema"] = kSpecSchema;
        j["points"] = 3;
        j["generators"] = json::array({json::array({1, 2, 0})});
        j["rho_bar"] = json::array({json{{"a_n", 3}}});
        std::ofstream(path) << j.dump();
    }
    const GroupSpec s = load_spec_file(path);
    REQUIRE(s.name == "equivect_anon_spec");
}

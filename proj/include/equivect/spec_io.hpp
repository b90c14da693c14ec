#pragma once

// JSON encoding of group specs ("equivect-spec/1").  A spec names a finite
// permutation group by generators and assigns each generator a symbolic
// rotation: {"a_n": n} for the 2*pi/n turn about the z-axis, {"b": null} for
// the half-turn about the x-axis, and {"T_gen"/"O_gen"/"I_gen": 0|1} for the
// standard polyhedral generator pairs.

#include <fstream>
#include <nlohmann/json.hpp>
#include <string>

#include "equivect/context.hpp"
#include "equivect/errors.hpp"

namespace equivect {

inline constexpr const char* kSpecSchema = "equivect-spec/1";
inline constexpr const char* kReportSchema = "equivect-report/1";

inline GroupSpec parse_spec_json(const nlohmann::json& j) {
    if (!j.is_object()) throw InputError("spec: top level must be an object");
    if (!j.contains("schema") || !j["schema"].is_string() || j["schema"] != kSpecSchema)
        throw InputError(std::string("spec: schema must be \"") + kSpecSchema + "\"");
    GroupSpec spec;
    if (j.contains("name")) {
        if (!j["name"].is_string()) throw InputError("spec: name must be a string");
        spec.name = j["name"].get<std::string>();
    }
    if (!j.contains("points") || !j["points"].is_number_integer())
        throw InputError("spec: points must be an integer");
    spec.points = j["points"].get<int>();

    if (!j.contains("generators") || !j["generators"].is_array())
        throw InputError("spec: generators must be an array");
    for (const auto& g : j["generators"]) {
        if (!g.is_array()) throw InputError("spec: each generator must be an array");
        Permutation p;
        for (const auto& v : g) {
            if (!v.is_number_integer()) throw InputError("spec: permutation entries are integers");
            p.push_back(v.get<int>());
        }
        spec.generators.push_back(std::move(p));
    }

    if (!j.contains("rho_bar") || !j["rho_bar"].is_array())
        throw InputError("spec: rho_bar must be an array");
    for (const auto& t : j["rho_bar"]) {
        if (!t.is_object() || t.size() != 1)
            throw InputError("spec: each rho_bar token is an object with one key");
        RhoToken tok;
        if (t.contains("a_n")) {
            if (!t["a_n"].is_number_integer() || t["a_n"].get<long>() < 1)
                throw InputError("spec: a_n takes a positive integer");
            tok.kind = RhoToken::Kind::kAxisRotation;
            tok.n = t["a_n"].get<long>();
        } else if (t.contains("b")) {
            if (!t["b"].is_null()) throw InputError("spec: b takes null");
            tok.kind = RhoToken::Kind::kFlip;
        } else if (t.contains("T_gen") || t.contains("O_gen") || t.contains("I_gen")) {
            const char* key = t.contains("T_gen") ? "T_gen" : t.contains("O_gen") ? "O_gen" : "I_gen";
            if (!t[key].is_number_integer()) throw InputError("spec: generator token index is an integer");
            tok.kind = t.contains("T_gen")   ? RhoToken::Kind::kTetra
                       : t.contains("O_gen") ? RhoToken::Kind::kOcta
                                             : RhoToken::Kind::kIcosa;
            tok.index = t[key].get<int>();
        } else {
            throw InputError("spec: unknown rho_bar token");
        }
        spec.rho.push_back(tok);
    }

    if (j.contains("expected_image")) {
        if (!j["expected_image"].is_string())
            throw InputError("spec: expected_image must be a string");
        spec.expected_image = j["expected_image"].get<std::string>();
    }
    return spec;
}

inline nlohmann::ordered_json spec_to_json(const GroupSpec& spec) {
    nlohmann::ordered_json j;
    j["schema"] = kSpecSchema;
    j["name"] = spec.name;
    j["points"] = spec.points;
    j["generators"] = nlohmann::ordered_json::array();
    for (const auto& g : spec.generators) j["generators"].push_back(g);
    j["rho_bar"] = nlohmann::ordered_json::array();
    for (const auto& t : spec.rho) {
        nlohmann::ordered_json tok;
        switch (t.kind) {
            case RhoToken::Kind::kAxisRotation: tok["a_n"] = t.n; break;
            case RhoToken::Kind::kFlip: tok["b"] = nullptr; break;
            case RhoToken::Kind::kTetra: tok["T_gen"] = t.index; break;
            case RhoToken::Kind::kOcta: tok["O_gen"] = t.index; break;
            case RhoToken::Kind::kIcosa: tok["I_gen"] = t.index; break;
        }
        j["rho_bar"].push_back(tok);
    }
    if (spec.expected_image) j["expected_image"] = *spec.expected_image;
    return j;
}

inline GroupSpec load_spec_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot read spec file: " + path);
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(in);
    } catch (const nlohmann::json::exception& e) {
        throw InputError("spec is not valid JSON: " + std::string(e.what()));
    }
    try {
        GroupSpec spec = parse_spec_json(j);
        if (spec.name.empty()) {
            // Default the name to the file stem.
            std::string stem = path;
            const auto slash = stem.find_last_of('/');
            if (slash != std::string::npos) stem = stem.substr(slash + 1);
            const auto dot = stem.find_last_of('.');
            if (dot != std::string::npos) stem = stem.substr(0, dot);
            spec.name = stem;
        }
        return spec;
    } catch (const nlohmann::json::exception& e) {
        throw InputError("spec: malformed field: " + std::string(e.what()));
    }
}

}  // namespace equivect

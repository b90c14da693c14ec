#include <array>
#include <catch2/catch_amalgamated.hpp>
#include <cstdio>
#include <nlohmann/json.hpp>
#include <string>
#include <sys/wait.h>

namespace {

struct RunResult {
    int exit_code = -1;
    std::string output;
};

std::string spec_path(const std::string& name) {
    return std::string(EQUIVECT_SPEC_DIR) + "/" + name + ".json";
}

RunResult run(const std::string& args) {
    const std::string cmd = std::string(EQUIVECT_CLI_PATH) + " " + args + " 2>&1";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    RunResult r;
    std::array<char, 4096> buf;
    while (std::size_t n = fread(buf.data(), 1, buf.size(), pipe)) r.output.append(buf.data(), n);
    const int status = pclose(pipe);
    r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

}  // namespace

TEST_CASE("classify reports six rank-one classes for the three-fold rotation") {
    const auto r = run("classify --spec " + spec_path("z3") + " --chi 0 --rank 1");
    REQUIRE(r.exit_code == 0);
    REQUIRE(r.output.find("6 classes of rank 1") != std::string::npos);

    const auto j = run("classify --spec " + spec_path("z3") + " --chi 0 --rank 1 --format json");
    REQUIRE(j.exit_code == 0);
    const auto doc = nlohmann::json::parse(j.output);
    REQUIRE(doc["schema"] == "equivect-report/1");
    REQUIRE(doc["class_count"] == 6);
    REQUIRE(doc["classes"].size() == 6);
    REQUIRE(doc["twin_regime"] == true);
}

TEST_CASE("semigroup reports five rank-one triples for the five-fold rotation") {
    const auto r = run("semigroup --spec " + spec_path("z5") + " --chi 0 --rank 1");
    REQUIRE(r.exit_code == 0);
    REQUIRE(r.output.find("5 rank-1 triples") != std::string::npos);

    const auto j = run("semigroup --spec " + spec_path("z5") + " --chi 0 --rank 1 --format json");
    REQUIRE(j.exit_code == 0);
    const auto doc = nlohmann::json::parse(j.output);
    REQUIRE(doc["rank_counts"][0]["rank"] == 1);
    REQUIRE(doc["rank_counts"][0]["triples"] == 5);
    REQUIRE(doc["generators"].size() == 5);
}

TEST_CASE("check passes on the quaternion-by-three example") {
    const auto r = run("check --spec " + spec_path("q8xz3") + " --samples 512");
    REQUIRE(r.exit_code == 0);
    REQUIRE(r.output.find("[FAIL]") == std::string::npos);
    REQUIRE(r.output.find("all checks passed") != std::string::npos);
}

TEST_CASE("table prints the character table") {
    const auto r = run("table --spec " + spec_path("z4"));
    REQUIRE(r.exit_code == 0);
    REQUIRE(r.output.find("order 4") != std::string::npos);
    REQUIRE(r.output.find("chi_3") != std::string::npos);

    const auto j = run("table --spec " + spec_path("q8xz3") + " --format json");
    REQUIRE(j.exit_code == 0);
    const auto doc = nlohmann::json::parse(j.output);
    REQUIRE(doc["group_order"] == 24);
    REQUIRE(doc["irreducibles"].size() == 15);  // five characters of Q8 times three
}

TEST_CASE("stabilizers reports transfer health per site") {
    const auto j = run("stabilizers --spec " + spec_path("icosa") + " --format json");
    REQUIRE(j.exit_code == 0);
    const auto doc = nlohmann::json::parse(j.output);
    REQUIRE(doc["sites"].size() == 6);
    for (const auto& s : doc["sites"]) REQUIRE(s["transfer_ok"] == true);
}

TEST_CASE("chern demo measures both twists") {
    const auto j = run("chern-demo --spec " + spec_path("z3") + " --rank 1 --samples 512 --format json");
    REQUIRE(j.exit_code == 0);
    const auto doc = nlohmann::json::parse(j.output);
    REQUIRE(doc["maps"].size() == 2);
    REQUIRE(doc["maps"][0]["omega"] == 0);
    REQUIRE(doc["maps"][1]["omega"] == 1);
    REQUIRE(doc["maps"][1]["chern_parity"] == 1);
    REQUIRE(doc["pass"] == true);
}

TEST_CASE("exit codes follow the contract") {
    // 0: success
    REQUIRE(run("check --spec " + spec_path("z2") + " --samples 256").exit_code == 0);
    // 1: invariant failure (tolerance impossible to meet)
    REQUIRE(run("chern-demo --spec " + spec_path("z3") + " --rank 1 --samples 512 --tolerance 1e-30")
                .exit_code == 1);
    // 2: bad input
    REQUIRE(run("classify --spec /nonexistent.json").exit_code == 2);
    REQUIRE(run("classify --spec " + spec_path("z3") + " --rank 0").exit_code == 2);
    REQUIRE(run("classify --spec " + spec_path("z3") + " --chi 9").exit_code == 2);
    REQUIRE(run("nonsense").exit_code == 2);
    REQUIRE(run("classify").exit_code == 2);  // --spec is required
    // 3: out of scope
    REQUIRE(run("chern-demo --spec " + spec_path("d4")).exit_code == 3);
    // help is not an error
    REQUIRE(run("--help").exit_code == 0);
}

TEST_CASE("reports are byte-identical across runs") {
    const std::string cmd = "check --spec " + spec_path("q8xz3") + " --samples 256 --format json";
    const auto a = run(cmd);
    const auto b = run(cmd);
    REQUIRE(a.exit_code == 0);
    REQUIRE(a.output == b.output);

    const std::string cls = "classify --spec " + spec_path("icosa") + " --rank 2 --format json";
    REQUIRE(run(cls).output == run(cls).output);
}

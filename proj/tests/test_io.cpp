#include <doctest.h>

#include "efsmdes/machine_io.hpp"
#include "test_support.hpp"

using namespace efsmdes;

namespace {

const std::string kFixture = std::string(EFSMDES_DATA_DIR) + "/updown_counter.json";

bool has_diagnostic_at(const ParseResult& result, const std::string& path) {
    for (const auto& d : result.diagnostics)
        if (d.path == path) return true;
    return false;
}

// Malformed documents; each must produce a located diagnostic, never a crash.
const std::vector<std::pair<std::string, std::string>> kMalformed = {
    {"not json at all", ""},
    {R"({"states": "I"})", "/states"},
    {R"({"states": ["I", "I"], "inputs": [], "outputs": [], "vars": [],
         "init": {"state": "I", "vals": {}}, "pairs": []})",
     "/states/1"},
    {R"({"states": ["I"], "inputs": ["a"], "outputs": ["m"],
         "vars": [{"name": "v", "lo": 3, "hi": 1}],
         "init": {"state": "I", "vals": {"v": 0}}, "pairs": []})",
     "/vars/0"},
    {R"({"states": ["I"], "inputs": ["a"], "outputs": ["m"],
         "vars": [{"name": "v", "lo": 0, "hi": 9}],
         "init": {"state": "I", "vals": {"v": 12}}, "pairs": []})",
     "/init/vals/v"},
    {R"({"states": ["I"], "inputs": ["a"], "outputs": ["m"],
         "vars": [{"name": "v", "lo": 0, "hi": 9}],
         "init": {"state": "II", "vals": {"v": 0}}, "pairs": []})",
     "/init/state"},
    {R"({"states": ["I"], "inputs": ["a"], "outputs": ["m"], "vars": [],
         "init": {"state": "I", "vals": {}},
         "pairs": [{"src": "I", "input": "a", "pred": "v >",
                    "then": {"dest": "I", "output": "m"},
                    "else": {"dest": "I", "output": "m"}}]})",
     "/pairs/0/pred"},
    {R"({"states": ["I"], "inputs": ["a"], "outputs": ["m"], "vars": [],
         "init": {"state": "I", "vals": {}},
         "pairs": [{"src": "I", "input": "a", "pred": "true",
                    "then": {"dest": "III", "output": "m"},
                    "else": {"dest": "I", "output": "m"}}]})",
     "/pairs/0/then/dest"},
    {R"({"states": ["bad name"], "inputs": [], "outputs": [], "vars": [],
         "init": {"state": "bad name", "vals": {}}, "pairs": []})",
     "/states/0"},
};

}  // namespace

TEST_SUITE("io") {

TEST_CASE("the bundled counter machine parses") {
    const ParseResult result = parse_machine_file(kFixture);
    REQUIRE(result.ok());
    const EfsmSdl& m = *result.machine;

    CHECK(m.states.size() == 2);
    CHECK(m.inputs.size() == 1);
    CHECK(m.outputs.size() == 2);
    REQUIRE(m.vars.size() == 1);
    CHECK(m.vars[0].name == "v");
    CHECK(m.vars[0].lo == 0);
    CHECK(m.vars[0].hi == 9);
    CHECK(m.init_state == "I");
    CHECK(m.init_vals.get("v") == 0);
    CHECK(m.pairs.size() == 2);

    // The file content and the in-code fixture are the same machine.
    CHECK(test::equal_sdl(m, test::updown_counter()));
}

TEST_CASE("serialization round-trips") {
    const EfsmSdl m = test::updown_counter();
    const ParseResult reparsed = parse_machine(serialize_machine(m));
    REQUIRE(reparsed.ok());
    CHECK(test::equal_sdl(m, *reparsed.machine));

    test::MachineGen gen(2024);
    for (int round = 0; round < 25; ++round) {
        const EfsmSdl random = gen.next();
        const ParseResult back = parse_machine(serialize_machine(random));
        REQUIRE(back.ok());
        CHECK(test::equal_sdl(random, *back.machine));
    }
}

TEST_CASE("malformed documents yield located diagnostics") {
    for (const auto& [text, path] : kMalformed) {
        CAPTURE(text);
        const ParseResult result = parse_machine(text);
        CHECK_FALSE(result.ok());
        REQUIRE_FALSE(result.diagnostics.empty());
        CHECK(has_diagnostic_at(result, path));
    }
}

TEST_CASE("duplicate pairs are rejected with the determinism rule") {
    const std::string text = R"({
        "states": ["I"], "inputs": ["a"], "outputs": ["m"], "vars": [],
        "init": {"state": "I", "vals": {}},
        "pairs": [
          {"src": "I", "input": "a", "pred": "true",
           "then": {"dest": "I", "output": "m"}, "else": {"dest": "I", "output": "m"}},
          {"src": "I", "input": "a", "pred": "false",
           "then": {"dest": "I", "output": "m"}, "else": {"dest": "I", "output": "m"}}
        ]})";
    const ParseResult result = parse_machine(text);
    CHECK_FALSE(result.ok());
    REQUIRE(has_diagnostic_at(result, "/pairs/1"));
    bool mentions_determinism = false;
    for (const auto& d : result.diagnostics)
        if (d.message.find("deterministic") != std::string::npos) mentions_determinism = true;
    CHECK(mentions_determinism);
}

TEST_CASE("several problems are reported together") {
    const std::string text = R"({
        "states": ["I"], "inputs": ["a"], "outputs": ["m"],
        "vars": [{"name": "v", "lo": 0, "hi": 9}],
        "init": {"state": "II", "vals": {"v": 77}},
        "pairs": []})";
    const ParseResult result = parse_machine(text);
    CHECK_FALSE(result.ok());
    CHECK(result.diagnostics.size() >= 2);
}

TEST_CASE("missing update keys default to the identity") {
    const std::string text = R"({
        "states": ["I"], "inputs": ["a"], "outputs": ["m"], "vars": [],
        "init": {"state": "I", "vals": {}},
        "pairs": [{"src": "I", "input": "a", "pred": "true",
                   "then": {"dest": "I", "output": "m"},
                   "else": {"dest": "I", "output": "m"}}]})";
    const ParseResult result = parse_machine(text);
    REQUIRE(result.ok());
    CHECK(result.machine->pairs[0].then_branch.update.assignments.empty());
}

TEST_CASE("identifier validation") {
    CHECK(valid_identifier("v"));
    CHECK(valid_identifier("_state1"));
    CHECK(valid_identifier("II"));
    CHECK_FALSE(valid_identifier(""));
    CHECK_FALSE(valid_identifier("1v"));
    CHECK_FALSE(valid_identifier("bad name"));
    CHECK_FALSE(valid_identifier("hy-phen"));
}

TEST_CASE("missing files are a diagnostic, not a crash") {
    const ParseResult result = parse_machine_file("/nonexistent/machine.json");
    CHECK_FALSE(result.ok());
    REQUIRE_FALSE(result.diagnostics.empty());
}

}  // TEST_SUITE

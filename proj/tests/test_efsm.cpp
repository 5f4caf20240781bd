#include <doctest.h>

#include "test_support.hpp"

using namespace efsmdes;
using test::updown_counter;

namespace {

Config config_of(const StateId& state, std::int64_t v) {
    Config c;
    c.state = state;
    c.vals.set("v", v);
    return c;
}

// Two transitions on the same (state, input) with overlapping guards.
Efsm overlapping_guards() {
    Efsm m;
    m.states = {"s"};
    m.inputs = {"a"};
    m.outputs = {"z"};
    m.vars = {{"v", 0, 9}};
    m.init_state = "s";
    m.init_vals.set("v", 0);
    m.transitions.push_back({"s", "s", "a", "z", parse_predicate("v > 3"), {}});
    m.transitions.push_back({"s", "s", "a", "z", parse_predicate("v > 5"), {}});
    return m;
}

}  // namespace

TEST_SUITE("efsm") {

TEST_CASE("step follows the enabled branch") {
    const Efsm m = to_efsm(updown_counter());

    auto low = step(m, config_of("I", 0), "a");
    REQUIRE(low.ok());
    CHECK(low.config == config_of("I", 1));
    CHECK(low.output == "m");

    auto high = step(m, config_of("I", 8), "a");
    REQUIRE(high.ok());
    CHECK(high.config == config_of("II", 9));
    CHECK(high.output == "n");
}

TEST_CASE("step outcomes") {
    const Efsm m = to_efsm(updown_counter());

    SUBCASE("unknown input is disabled") {
        CHECK(step(m, config_of("I", 0), "b").status == StepStatus::Disabled);
    }
    SUBCASE("update leaving the domain") {
        // From (II, 0) the down-count would reach -1.
        CHECK(step(m, config_of("II", 0), "a").status == StepStatus::DomainError);
    }
    SUBCASE("overlapping guards") {
        const Efsm bad = overlapping_guards();
        Config c;
        c.state = "s";
        c.vals.set("v", 6);
        CHECK(step(bad, c, "a").status == StepStatus::Nondeterministic);
    }
}

TEST_CASE("run folds step from the initial configuration") {
    const Efsm m = to_efsm(updown_counter());

    auto two = run(m, test::repeat_event("a", 2));
    REQUIRE(two.ok());
    CHECK(two.outputs == std::vector<EventId>{"m", "m"});

    CHECK(run(m, {}).outputs.empty());
    CHECK(run(m, {}).ok());

    // Seventeen steps: eight climbs, the switch to II, six descents, the
    // return to I, one more climb.
    auto long_run = run(m, test::repeat_event("a", 17));
    REQUIRE(long_run.ok());
    std::vector<EventId> expected;
    for (int i = 0; i < 8; ++i) expected.push_back("m");
    for (int i = 0; i < 7; ++i) expected.push_back("n");
    expected.push_back("m");
    expected.push_back("m");
    CHECK(long_run.outputs == expected);
    CHECK(long_run.final_config == config_of("I", 3));
}

TEST_CASE("run reports the failing position") {
    const Efsm m = to_efsm(updown_counter());
    Config start = config_of("II", 2);
    // (II,2) -> (II... pred v<=3 holds: branch to I with v=1, then climbs.
    auto r = run_from(m, start, {"a", "b"});
    CHECK(r.status == StepStatus::Disabled);
    CHECK(r.failed_at == 1);
    CHECK(r.outputs.size() == 1);
}

TEST_CASE("check_deterministic") {
    CHECK(check_deterministic(to_efsm(updown_counter())).deterministic());

    SUBCASE("overlap witness") {
        const auto report = check_deterministic(overlapping_guards());
        REQUIRE_FALSE(report.deterministic());
        // Both guards hold on 6..9; ascending enumeration reports 6 first.
        CHECK(report.violations.front().vals.get("v") == 6);
        CHECK(report.violations.size() == 4);
    }
    SUBCASE("a single transition cannot conflict") {
        Efsm single = overlapping_guards();
        single.transitions.pop_back();
        CHECK(check_deterministic(single).deterministic());
    }
}

TEST_CASE("to_sdl_form recognizes complementary pairs") {
    const EfsmSdl original = updown_counter();
    const auto result = to_sdl_form(to_efsm(original));
    REQUIRE(result.ok());
    CHECK(result.machine->pairs.size() == 2);

    // The flattened machine's pairs come back in the original orientation.
    const TransitionPair* at_one = find_pair(*result.machine, "I", "a");
    REQUIRE(at_one != nullptr);
    CHECK(to_string(*at_one->pred) == "v>7");
    CHECK(at_one->then_branch.dest == "II");
    CHECK(at_one->else_branch.dest == "I");
}

TEST_CASE("to_sdl_form accepts semantic complements") {
    // v>7 and v<=7 are complementary on [0,9] but not syntactic negations.
    Efsm m;
    m.states = {"s"};
    m.inputs = {"a"};
    m.outputs = {"z"};
    m.vars = {{"v", 0, 9}};
    m.init_state = "s";
    m.init_vals.set("v", 0);
    m.transitions.push_back({"s", "s", "a", "z", parse_predicate("v > 7"), {}});
    m.transitions.push_back({"s", "s", "a", "z", parse_predicate("v <= 7"), {}});
    CHECK(to_sdl_form(m).ok());
}

TEST_CASE("to_sdl_form rejections") {
    SUBCASE("three transitions at one (state, input)") {
        Efsm m = overlapping_guards();
        m.transitions.push_back({"s", "s", "a", "z", parse_predicate("v == 0"), {}});
        const auto result = to_sdl_form(m);
        CHECK_FALSE(result.ok());
        REQUIRE(result.problems.size() == 1);
        CHECK(result.problems[0].find("3 transitions") != std::string::npos);
    }
    SUBCASE("strict complements are rejected with a witness") {
        Efsm m;
        m.states = {"s"};
        m.inputs = {"a"};
        m.outputs = {"z"};
        m.vars = {{"v", 0, 9}};
        m.init_state = "s";
        m.init_vals.set("v", 0);
        m.transitions.push_back({"s", "s", "a", "z", parse_predicate("v > 7"), {}});
        m.transitions.push_back({"s", "s", "a", "z", parse_predicate("v < 7"), {}});
        const auto result = to_sdl_form(m);
        REQUIRE_FALSE(result.ok());
        CHECK(result.problems[0].find("v=7") != std::string::npos);
    }
}

TEST_CASE("sdl_transition selects branches") {
    const EfsmSdl m = updown_counter();

    auto then_branch = sdl_transition(m, "I", "a", true);
    REQUIRE(then_branch.has_value());
    CHECK(then_branch->dest == "II");
    CHECK(then_branch->output == "n");
    CHECK(to_string(then_branch->update) == "v := v+1");

    auto else_branch = sdl_transition(m, "II", "a", false);
    REQUIRE(else_branch.has_value());
    CHECK(else_branch->dest == "II");
    CHECK(else_branch->output == "n");
    CHECK(to_string(else_branch->update) == "v := v-1");

    CHECK_FALSE(sdl_transition(m, "I", "b", true).has_value());
}

TEST_CASE("exactly one branch fires in every configuration") {
    const EfsmSdl m = updown_counter();
    const Efsm flat = to_efsm(m);
    for (const auto& pair : m.pairs) {
        for (const auto& vals : enumerate_valuations(m.vars)) {
            // The pair's predicate and its negation partition the valuations,
            const bool bin = eval_pred(*pair.pred, vals);
            CHECK(eval_pred(*negated(pair.pred), vals) == !bin);
            // and the flattened step fires the branch selected by bin.
            Config c{pair.src, vals};
            const auto branch = sdl_transition(m, pair.src, pair.input, bin);
            const auto next = eval_update(branch->update, vals, m.vars);
            const auto s = step(flat, c, pair.input);
            if (next) {
                REQUIRE(s.ok());
                CHECK(s.config.state == branch->dest);
                CHECK(s.config.vals == *next);
                CHECK(s.output == branch->output);
            } else {
                CHECK(s.status == StepStatus::DomainError);
            }
        }
    }
}

TEST_CASE("validate catches ill-formed machines") {
    EfsmSdl m = updown_counter();
    CHECK(validate(m).empty());

    SUBCASE("unknown initial state") {
        m.init_state = "III";
        CHECK_FALSE(validate(m).empty());
    }
    SUBCASE("out-of-domain initial value") {
        m.init_vals.set("v", 12);
        CHECK_FALSE(validate(m).empty());
    }
    SUBCASE("duplicate pair") {
        m.pairs.push_back(m.pairs[0]);
        CHECK_FALSE(validate(m).empty());
    }
    SUBCASE("undeclared variable in a predicate") {
        m.pairs[0].pred = parse_predicate("w > 0");
        CHECK_FALSE(validate(m).empty());
    }
    SUBCASE("empty variable domain") {
        m.vars[0] = {"v", 5, 2};
        CHECK_FALSE(validate(m).empty());
    }
}

}  // TEST_SUITE

#include <doctest.h>

#include "efsmdes/emit.hpp"
#include "efsmdes/transform.hpp"
#include "switch_interp.hpp"
#include "test_support.hpp"

using namespace efsmdes;
using test::updown_counter;

TEST_SUITE("emit") {

TEST_CASE("emitted code carries the branch structure") {
    const std::string code = emit_code(updown_counter());

    CHECK(code.find("enum State {I, II}; static State s;") != std::string::npos);
    CHECK(code.find("enum Input {a}; enum Output {m, n};") != std::string::npos);
    CHECK(code.find("static int v;") != std::string::npos);
    CHECK(code.find("{ s=I; v=0; }") != std::string::npos);

    CHECK(code.find("if(v>7)") != std::string::npos);
    CHECK(code.find("{s=II; o=n; v=v+1;}") != std::string::npos);
    CHECK(code.find("{s=I; o=m; v=v+1;}") != std::string::npos);
    CHECK(code.find("if(v<=3)") != std::string::npos);
    CHECK(code.find("{s=I; o=m; v=v-1;}") != std::string::npos);
    CHECK(code.find("{s=II; o=n; v=v-1;}") != std::string::npos);

    // The true branch follows the if directly.
    CHECK(code.find("if(v>7)") < code.find("{s=II; o=n; v=v+1;}"));
}

TEST_CASE("emission is deterministic") {
    const EfsmSdl m = updown_counter();
    CHECK(emit_code(m) == emit_code(m));
    CHECK(emit_dot(extract_controlled_des(m)) == emit_dot(extract_controlled_des(m)));
}

TEST_CASE("a machine without pairs emits enumerations and empty switches") {
    EfsmSdl m = updown_counter();
    m.pairs.clear();
    const std::string code = emit_code(m);
    CHECK(code.find("enum State {I, II}") != std::string::npos);
    CHECK(code.find("switch(s)") != std::string::npos);
    CHECK(code.find("if(") == std::string::npos);
}

TEST_CASE("the interpreted model matches the machine on the counter") {
    const EfsmSdl m = updown_counter();
    const SwitchModel model = build_switch_model(m);
    const Efsm flat = to_efsm(m);
    for (const std::size_t len : {0u, 1u, 17u, 50u}) {
        const auto inputs = test::repeat_event("a", len);
        const RunResult machine = run(flat, inputs);
        const RunResult interpreted = test::interpret_switch(model, inputs);
        CHECK(machine.status == interpreted.status);
        CHECK(machine.outputs == interpreted.outputs);
        CHECK(machine.final_config == interpreted.final_config);
    }
}

TEST_CASE("cross-referencing updates are staged through scratch variables") {
    EfsmSdl m;
    m.states = {"s"};
    m.inputs = {"a"};
    m.outputs = {"z"};
    m.vars = {{"x", 0, 9}, {"y", 0, 9}};
    m.init_state = "s";
    m.init_vals.set("x", 1);
    m.init_vals.set("y", 2);
    const auto swap = parse_update("x := y; y := x");
    m.pairs.push_back({"s", "a", BoolExpr::constant(true), Branch{"s", "z", swap},
                       Branch{"s", "z", swap}});

    const SwitchModel model = build_switch_model(m);
    CHECK(model.scratch == std::vector<std::string>{"__x", "__y"});

    const std::string code = emit_code(m);
    CHECK(code.find("static int __x, __y;") != std::string::npos);
    CHECK(code.find("__x=y;") != std::string::npos);
    CHECK(code.find("x=__x;") != std::string::npos);

    // One interpreted step performs the swap, exactly like the machine.
    const RunResult interpreted = test::interpret_switch(model, {"a"});
    REQUIRE(interpreted.ok());
    CHECK(interpreted.final_config.vals.get("x") == 2);
    CHECK(interpreted.final_config.vals.get("y") == 1);
}

TEST_CASE("independent updates stay inline") {
    const SwitchModel model = build_switch_model(updown_counter());
    CHECK(model.scratch.empty());
}

TEST_CASE("plant DOT export") {
    const MealyAutomaton g = extract_controlled_des(updown_counter());
    const std::string dot = emit_dot(g);

    CHECK(dot.find("digraph mealy {") != std::string::npos);
    CHECK(dot.find("__init -> \"I\";") != std::string::npos);
    CHECK(dot.find("\"I\" -> \"II\" [label=\"⟨a,true⟩/n\"];") != std::string::npos);
    CHECK(dot.find("\"II\" -> \"II\" [label=\"⟨a,false⟩/n\"];") != std::string::npos);

    std::size_t edges = 0;
    for (std::size_t at = dot.find(" -> "); at != std::string::npos;
         at = dot.find(" -> ", at + 1))
        ++edges;
    CHECK(edges == 5);  // four transitions plus the initial marker
}

TEST_CASE("machine DOT export labels guards and updates") {
    const std::string dot = emit_dot(to_efsm(updown_counter()));
    CHECK(dot.find("a [v>7] / n ; v := v+1") != std::string::npos);
    CHECK(dot.find("a [!(v>7)] / m ; v := v+1") != std::string::npos);
}

TEST_CASE("a machine without transitions renders nodes only") {
    EfsmSdl m = updown_counter();
    m.pairs.clear();
    const std::string dot = emit_dot(to_efsm(m));
    CHECK(dot.find("\"I\";") != std::string::npos);
    CHECK(dot.find("\"II\";") != std::string::npos);
    CHECK(dot.find("label=\"a") == std::string::npos);
}

TEST_CASE("supervisor DOT export annotates states with their patterns") {
    const Supervisor phi = extract_supervisor(updown_counter());
    const std::string dot = emit_dot(phi);
    CHECK(dot.find("(v=2,I)\\nψ: {⟨a,false⟩}") != std::string::npos);

    const PlainAutomaton reduced = reduce(phi);
    const std::string reduced_dot = emit_dot(reduced);
    for (const auto& state : reduced.states)
        CHECK(reduced_dot.find("\"" + state + "\"") != std::string::npos);
}

TEST_CASE("interpreted models track machines on random instances") {
    test::MachineGen gen(7741);
    for (int round = 0; round < 40; ++round) {
        const EfsmSdl m = gen.next();
        const SwitchModel model = build_switch_model(m);
        const Efsm flat = to_efsm(m);
        const std::vector<EventId> base(m.inputs.begin(), m.inputs.end());

        std::vector<EventId> inputs;
        for (int k = 0; k < 20; ++k) inputs.push_back(base[gen.raw() % base.size()]);

        const RunResult machine = run(flat, inputs);
        const RunResult interpreted = test::interpret_switch(model, inputs);
        CHECK(machine.status == interpreted.status);
        CHECK(machine.failed_at == interpreted.failed_at);
        CHECK(machine.outputs == interpreted.outputs);
        CHECK(machine.final_config.state == interpreted.final_config.state);
        CHECK(machine.final_config.vals == interpreted.final_config.vals);
    }
}

}  // TEST_SUITE

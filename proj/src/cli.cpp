#include "efsmdes/cli.hpp"

#include <algorithm>
#include <fstream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "efsmdes/analysis.hpp"
#include "efsmdes/emit.hpp"
#include "efsmdes/machine_io.hpp"

namespace efsmdes {

namespace {

std::optional<EfsmSdl> load_machine(const std::string& path, std::ostream& err) {
    ParseResult parsed = parse_machine_file(path);
    if (!parsed.ok()) {
        for (const auto& d : parsed.diagnostics) err << "error " << d.to_string() << "\n";
        return std::nullopt;
    }
    return std::move(parsed.machine);
}

bool write_file(const std::string& path, const std::string& text, std::ostream& err) {
    std::ofstream out(path);
    if (!out) {
        err << "error: cannot write " << path << "\n";
        return false;
    }
    out << text;
    return true;
}

std::vector<std::string> split_list(const std::string& text) {
    std::vector<std::string> out;
    std::string token;
    for (const char c : text) {
        if (c == ',' || std::isspace(static_cast<unsigned char>(c))) {
            if (!token.empty()) out.push_back(std::move(token));
            token.clear();
        } else {
            token += c;
        }
    }
    if (!token.empty()) out.push_back(std::move(token));
    return out;
}

// "I,v=2" -> configuration with state I and valuation v=2.
std::optional<Config> parse_anchor(const std::string& text, const EfsmSdl& m,
                                   std::ostream& err) {
    const auto tokens = split_list(text);
    if (tokens.empty()) {
        err << "error: empty anchor\n";
        return std::nullopt;
    }
    Config anchor;
    anchor.state = tokens[0];
    if (m.states.count(anchor.state) == 0) {
        err << "error: anchor state " << anchor.state << " is not a machine state\n";
        return std::nullopt;
    }
    for (std::size_t i = 1; i < tokens.size(); ++i) {
        const auto eq = tokens[i].find('=');
        if (eq == std::string::npos) {
            err << "error: anchor entry '" << tokens[i] << "' is not var=value\n";
            return std::nullopt;
        }
        const std::string name = tokens[i].substr(0, eq);
        std::int64_t value = 0;
        try {
            value = std::stoll(tokens[i].substr(eq + 1));
        } catch (const std::exception&) {
            err << "error: anchor value in '" << tokens[i] << "' is not an integer\n";
            return std::nullopt;
        }
        anchor.vals.set(name, value);
    }
    if (auto problem = check_valuation(m.vars, anchor.vals)) {
        err << "error: anchor valuation: " << *problem << "\n";
        return std::nullopt;
    }
    return anchor;
}

void print_mealy(const MealyAutomaton& g, const std::string& title, std::ostream& out) {
    out << title << "\n";
    out << "  states: " << g.states.size() << ", alphabet: " << g.alphabet.size()
        << " events, transitions: " << g.transition_count() << ", initial: " << g.initial
        << "\n";
    for (const auto& [key, value] : g.transitions()) {
        out << "  (" << key.first << ", " << key.second.to_string() << ") -> " << value.first
            << " / " << value.second << "\n";
    }
}

int cmd_validate(const std::string& file, std::ostream& out, std::ostream& err) {
    ParseResult parsed = parse_machine_file(file);
    if (!parsed.ok()) {
        for (const auto& d : parsed.diagnostics) err << "error " << d.to_string() << "\n";
        return 1;
    }
    const EfsmSdl& m = *parsed.machine;
    out << "ok: " << m.states.size() << " states, " << m.inputs.size() << " inputs, "
        << m.outputs.size() << " outputs, " << m.vars.size() << " variables, "
        << m.pairs.size() << " pairs\n";
    return 0;
}

int cmd_extract_des(const std::string& file, const std::string& dot, std::ostream& out,
                    std::ostream& err) {
    auto m = load_machine(file, err);
    if (!m) return 1;
    const MealyAutomaton g = extract_controlled_des(*m);
    print_mealy(g, "controlled DES", out);
    if (!dot.empty() && !write_file(dot, emit_dot(g), err)) return 1;
    return 0;
}

int cmd_extract_sup(const std::string& file, const std::string& dot, std::ostream& out,
                    std::ostream& err) {
    auto m = load_machine(file, err);
    if (!m) return 1;
    const Supervisor phi = extract_supervisor(*m);
    out << "supervisor\n";
    out << "  states: " << phi.s.states.size() << ", transitions: " << phi.s.xi.size()
        << ", initial: " << phi.s.initial << "\n";
    for (const auto& x : phi.s.states) out << "  " << x << "  psi=" << phi.pattern(x).to_string() << "\n";
    for (const auto& [key, dest] : phi.s.xi)
        out << "  (" << key.first << ", " << key.second.to_string() << ") -> " << dest << "\n";
    if (!dot.empty() && !write_file(dot, emit_dot(phi), err)) return 1;
    return 0;
}

int cmd_reduce(const std::string& file, const std::string& dot, std::ostream& out,
               std::ostream& err) {
    auto m = load_machine(file, err);
    if (!m) return 1;
    const PlainAutomaton reduced = reduce(extract_supervisor(*m));
    out << "reduced supervisor automaton\n";
    out << "  states: " << reduced.states.size() << ", transitions: " << reduced.xi.size()
        << ", initial: " << reduced.initial << "\n";
    for (const auto& x : reduced.states) out << "  " << x << "\n";
    for (const auto& [key, dest] : reduced.xi)
        out << "  (" << key.first << ", " << key.second.to_string() << ") -> " << dest << "\n";
    if (!dot.empty() && !write_file(dot, emit_dot(reduced), err)) return 1;
    return 0;
}

int cmd_product(const std::string& file, const std::string& dot, std::ostream& out,
                std::ostream& err) {
    auto m = load_machine(file, err);
    if (!m) return 1;
    const MealyAutomaton g = extract_controlled_des(*m);
    const SupervisedSystem system = sync_product(reduce(extract_supervisor(*m)), g);
    print_mealy(system, "supervised system (reduced supervisor x plant)", out);
    if (!dot.empty() && !write_file(dot, emit_dot(system), err)) return 1;
    return 0;
}

int cmd_simulate(const std::string& file, const std::string& inputs_text, int steps,
                 std::ostream& out, std::ostream& err) {
    auto m = load_machine(file, err);
    if (!m) return 1;
    std::vector<EventId> inputs = split_list(inputs_text);
    if (steps > 0) {
        if (inputs.size() != 1) {
            err << "error: --steps expands a single input event\n";
            return 2;
        }
        inputs.assign(static_cast<std::size_t>(steps), inputs[0]);
    }
    for (const auto& i : inputs) {
        if (m->inputs.count(i) == 0) {
            err << "error: unknown input event " << i << "\n";
            return 1;
        }
    }

    const RunResult result = run(to_efsm(*m), inputs);
    out << "outputs:";
    for (const auto& o : result.outputs) out << " " << o;
    out << "\n";
    if (!result.ok()) {
        out << "halt: "
            << (result.status == StepStatus::Disabled ? "disabled" : "domain error")
            << " at step " << result.failed_at << "\n";
    }
    out << "final: " << result.final_config.to_string() << "\n";
    return 0;
}

int cmd_equiv(const std::string& file, std::size_t horizon, std::size_t budget, bool as_json,
              std::ostream& out, std::ostream& err) {
    auto m = load_machine(file, err);
    if (!m) return 1;
    const EquivalenceReport report = check_equivalence(*m, horizon, budget);
    out << (as_json ? report_to_json(report) : report_to_text(report)) << "\n";
    return report.equivalent() ? 0 : 1;
}

int cmd_regex(const std::string& file, const std::string& anchor_text, std::ostream& out,
              std::ostream& err) {
    auto m = load_machine(file, err);
    if (!m) return 1;
    std::optional<Config> anchor;
    if (!anchor_text.empty()) {
        anchor = parse_anchor(anchor_text, *m, err);
        if (!anchor) return 1;
    }
    const PeriodicResult result = derive_periodic(*m, anchor);
    if (!result.ok()) {
        switch (result.status) {
            case PeriodicStatus::NotAutonomous: err << "error: not autonomous: "; break;
            case PeriodicStatus::Halts: err << "error: run halts: "; break;
            default: err << "error: "; break;
        }
        err << result.detail << "\n";
        return 1;
    }
    out << "inputs:   " << render_input_expr(*result.cycle) << "\n";
    out << "outputs:  " << render_output_expr(*result.cycle) << "\n";
    out << "combined: " << render_combined(*result.cycle) << "\n";
    out << "anchor:   " << result.cycle->anchor << "\n";
    return 0;
}

int cmd_codegen(const std::string& file, const std::string& output_path, std::ostream& out,
                std::ostream& err) {
    auto m = load_machine(file, err);
    if (!m) return 1;
    const std::string code = emit_code(*m);
    if (output_path.empty()) {
        out << code;
        return 0;
    }
    return write_file(output_path, code, err) ? 0 : 1;
}

}  // namespace

int cli_dispatch(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
    CLI::App app{"EFSM-to-DES toolchain: turn an SDL-style machine into a controlled "
                 "Mealy automaton plus supervisor, and check the two equivalent"};
    app.name("efsmdes");
    app.require_subcommand(1);

    std::string file, dot, inputs_text, anchor_text, output_path;
    int steps = 0;
    std::size_t horizon = 0, budget = 0;
    bool as_json = false;

    auto add_file = [&](CLI::App* cmd) {
        cmd->add_option("file", file, "machine JSON file")->required();
    };

    auto* validate = app.add_subcommand("validate", "Parse and validate a machine file");
    add_file(validate);

    auto* extract_des = app.add_subcommand("extract-des", "Extract the controlled DES");
    add_file(extract_des);
    extract_des->add_option("--dot", dot, "write the automaton as DOT");

    auto* extract_sup = app.add_subcommand("extract-sup", "Extract the supervisor");
    add_file(extract_sup);
    extract_sup->add_option("--dot", dot, "write the supervisor as DOT");

    auto* reduce_cmd = app.add_subcommand("reduce", "Reduce the extracted supervisor");
    add_file(reduce_cmd);
    reduce_cmd->add_option("--dot", dot, "write the reduced automaton as DOT");

    auto* product = app.add_subcommand(
        "product", "Synchronized product of the reduced supervisor and the plant");
    add_file(product);
    product->add_option("--dot", dot, "write the product as DOT");

    auto* simulate = app.add_subcommand("simulate", "Run the machine on an input sequence");
    add_file(simulate);
    simulate->add_option("--inputs", inputs_text, "input events, comma or space separated")
        ->required();
    simulate->add_option("--steps", steps, "repeat a single input this many times");

    auto* equiv = app.add_subcommand(
        "equiv", "Check the machine equivalent to its derived control model");
    add_file(equiv);
    equiv->add_option("--horizon", horizon, "maximum input sequence length")->required();
    equiv->add_option("--budget", budget, "extra random sequences beyond the exhaustive part");
    equiv->add_flag("--json", as_json, "machine-readable report");

    auto* regex_cmd = app.add_subcommand(
        "regex", "Ultimately periodic expressions for a single-input machine");
    add_file(regex_cmd);
    regex_cmd->add_option("--anchor", anchor_text,
                          "close the cycle at this configuration, e.g. I,v=2");

    auto* codegen = app.add_subcommand("codegen", "Emit switch-style source code");
    add_file(codegen);
    codegen->add_option("-o,--output", output_path, "write code here instead of stdout");

    try {
        std::reverse(args.begin(), args.end());
        app.parse(args);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return 2;
    }

    try {
        if (validate->parsed()) return cmd_validate(file, out, err);
        if (extract_des->parsed()) return cmd_extract_des(file, dot, out, err);
        if (extract_sup->parsed()) return cmd_extract_sup(file, dot, out, err);
        if (reduce_cmd->parsed()) return cmd_reduce(file, dot, out, err);
        if (product->parsed()) return cmd_product(file, dot, out, err);
        if (simulate->parsed()) return cmd_simulate(file, inputs_text, steps, out, err);
        if (equiv->parsed()) return cmd_equiv(file, horizon, budget, as_json, out, err);
        if (regex_cmd->parsed()) return cmd_regex(file, anchor_text, out, err);
        if (codegen->parsed()) return cmd_codegen(file, output_path, out, err);
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
    err << "error: no subcommand\n";
    return 2;
}

}  // namespace efsmdes

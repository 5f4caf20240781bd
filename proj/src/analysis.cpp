#include "efsmdes/analysis.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <random>
#include <sstream>

#include <json.hpp>

namespace efsmdes {

// ── Bounded equivalence ─────────────────────────────────────────────────────

namespace {

// Largest sequence length (capped at horizon) whose exhaustive enumeration
// stays within 4096 sequences of that exact length.
std::size_t exhaustive_length(std::size_t alphabet_size, std::size_t horizon) {
    if (alphabet_size <= 1) return horizon;
    std::size_t length = 0;
    std::uint64_t count = 1;
    while (length < horizon && count * alphabet_size <= 4096) {
        count *= alphabet_size;
        ++length;
    }
    return length;
}

std::string halt_text(StepStatus status) {
    switch (status) {
        case StepStatus::Disabled: return "disabled (no pair on this input)";
        case StepStatus::DomainError: return "halted (update leaves the domain)";
        default: return "halted";
    }
}

// Runs machine and system in lockstep on one base input sequence; nullopt
// means they agree on every position (including where both are undefined).
std::optional<Counterexample> compare_sequence(const EfsmSdl& m, const SupervisedSystem& system,
                                               const std::vector<EventId>& s) {
    Config c = m.initial();
    StateId p = system.initial;

    for (std::size_t j = 0; j < s.size(); ++j) {
        const EventId& i = s[j];

        // Machine side: the pair at (state, input) fires the branch selected
        // by its predicate, unless no pair exists or the update escapes.
        const TransitionPair* pair = find_pair(m, c.state, i);
        std::optional<std::pair<Config, EventId>> machine_step;
        StepStatus halt = StepStatus::Disabled;
        bool bin = false;
        if (pair != nullptr) {
            bin = eval_pred(*pair->pred, c.vals);
            const Branch& branch = bin ? pair->then_branch : pair->else_branch;
            auto next = eval_update(branch.update, c.vals, m.vars);
            if (next) {
                machine_step = {Config{branch.dest, std::move(*next)}, branch.output};
            } else {
                halt = StepStatus::DomainError;
            }
        }

        if (!machine_step) {
            // The system must be undefined on both liftings of this input.
            for (const bool b : {false, true}) {
                if (system.defined(p, {i, b}))
                    return Counterexample{s, j, halt_text(halt),
                                          "enables " + PairedEvent{i, b}.to_string()};
            }
            return std::nullopt;  // both models stop here
        }

        const PairedEvent sigma{i, bin};
        if (system.defined(p, sigma.partner()))
            return Counterexample{s, j, "fires " + sigma.to_string(),
                                  "also enables conflicting " + sigma.partner().to_string()};
        if (!system.defined(p, sigma))
            return Counterexample{s, j, "output " + machine_step->second,
                                  "undefined on " + sigma.to_string()};
        const EventId system_out = *system.lambda(p, sigma);
        if (system_out != machine_step->second)
            return Counterexample{s, j, "output " + machine_step->second,
                                  "output " + system_out};

        p = *system.delta(p, sigma);
        c = std::move(machine_step->first);
    }
    return std::nullopt;
}

}  // namespace

EquivalenceReport check_equivalence_vs(const EfsmSdl& m, const SupervisedSystem& system,
                                       std::size_t horizon, std::size_t budget,
                                       std::uint64_t seed) {
    EquivalenceReport report;
    report.horizon = horizon;

    const std::vector<EventId> inputs(m.inputs.begin(), m.inputs.end());

    // Exhaustive phase, in length order then lexicographic, so the first
    // counterexample found is the canonical shortest one.
    const std::size_t exhaustive = inputs.empty() ? 0 : exhaustive_length(inputs.size(), horizon);
    std::vector<std::vector<EventId>> level{{}};
    for (std::size_t len = 0; len <= exhaustive; ++len) {
        for (const auto& s : level) {
            ++report.checked;
            if (!report.counterexample) {
                report.counterexample = compare_sequence(m, system, s);
                if (report.counterexample) return report;
            }
        }
        if (len == exhaustive) break;
        std::vector<std::vector<EventId>> next;
        next.reserve(level.size() * inputs.size());
        for (const auto& s : level) {
            for (const auto& i : inputs) {
                auto extended = s;
                extended.push_back(i);
                next.push_back(std::move(extended));
            }
        }
        level = std::move(next);
    }

    // Random phase for lengths the exhaustive phase could not cover.
    if (exhaustive < horizon && !inputs.empty()) {
        std::mt19937_64 rng(seed);
        std::uniform_int_distribution<std::size_t> pick_len(exhaustive + 1, horizon);
        std::uniform_int_distribution<std::size_t> pick_event(0, inputs.size() - 1);
        for (std::size_t n = 0; n < budget; ++n) {
            std::vector<EventId> s(pick_len(rng));
            for (auto& e : s) e = inputs[pick_event(rng)];
            ++report.checked;
            report.counterexample = compare_sequence(m, system, s);
            if (report.counterexample) return report;
        }
    }
    return report;
}

EquivalenceReport check_equivalence(const EfsmSdl& m, std::size_t horizon, std::size_t budget,
                                    std::uint64_t seed) {
    const MealyAutomaton plant = extract_controlled_des(m);
    const Supervisor phi = extract_supervisor(m);
    return check_equivalence_vs(m, couple(phi, plant), horizon, budget, seed);
}

bool replay_counterexample(const EfsmSdl& m, const SupervisedSystem& system,
                           const Counterexample& cex) {
    const auto again = compare_sequence(m, system, cex.inputs);
    return again && again->position == cex.position && again->efsm_outcome == cex.efsm_outcome &&
           again->des_outcome == cex.des_outcome;
}

std::string report_to_text(const EquivalenceReport& report) {
    std::ostringstream out;
    if (report.equivalent()) {
        out << "equivalent (horizon " << report.horizon << ", " << report.checked
            << " sequences checked)";
        return out.str();
    }
    const auto& cex = *report.counterexample;
    out << "counterexample after " << report.checked << " sequences\n";
    out << "  inputs:";
    for (const auto& i : cex.inputs) out << " " << i;
    out << "\n  at position " << cex.position << ": machine " << cex.efsm_outcome
        << ", control model " << cex.des_outcome;
    return out.str();
}

std::string report_to_json(const EquivalenceReport& report) {
    nlohmann::json doc;
    doc["horizon"] = report.horizon;
    doc["checked"] = report.checked;
    doc["verdict"] = report.equivalent() ? "equivalent" : "counterexample";
    if (report.counterexample) {
        const auto& cex = *report.counterexample;
        doc["counterexample"] = {{"inputs", cex.inputs},
                                 {"position", cex.position},
                                 {"efsm", cex.efsm_outcome},
                                 {"des", cex.des_outcome}};
    }
    return doc.dump(2);
}

// ── Ultimately periodic runs ────────────────────────────────────────────────

namespace {

// One deterministic walker interface over both machine kinds.
struct WalkStep {
    EventId input;   // base event
    EventId output;
    std::string next_label;
};

// Factors the walk into prefix and period once `anchor_of` the cycle is
// fixed. `labels[k]` is the configuration after k steps.
PeriodicResult factor(const std::vector<std::string>& labels,
                      const std::vector<EventId>& ins, const std::vector<EventId>& outs,
                      std::size_t first, std::size_t revisit,
                      const std::optional<std::string>& anchor,
                      const std::function<std::optional<WalkStep>(const std::string&)>& advance) {
    std::size_t start = first;
    const std::size_t period_len = revisit - first;

    std::vector<std::string> all_labels = labels;
    std::vector<EventId> all_ins = ins;
    std::vector<EventId> all_outs = outs;

    if (anchor) {
        std::size_t at = 0;
        while (at < all_labels.size() && all_labels[at] != *anchor) ++at;
        if (at == all_labels.size())
            return {PeriodicStatus::BadAnchor, std::nullopt,
                    "anchor " + *anchor + " is not reachable"};
        if (at < first)
            return {PeriodicStatus::BadAnchor, std::nullopt,
                    "anchor " + *anchor + " is reached but not on the cycle"};
        start = at;
        // Extend the walk so a full period starting at the anchor exists.
        while (all_ins.size() < start + period_len) {
            auto step = advance(all_labels.back());
            if (!step)
                return {PeriodicStatus::Halts, std::nullopt, "run halted while extending cycle"};
            all_ins.push_back(step->input);
            all_outs.push_back(step->output);
            all_labels.push_back(step->next_label);
        }
    }

    UltimatelyPeriodic u;
    u.anchor = all_labels[start];
    u.prefix_inputs.assign(all_ins.begin(), all_ins.begin() + start);
    u.prefix_outputs.assign(all_outs.begin(), all_outs.begin() + start);
    u.period_inputs.assign(all_ins.begin() + start, all_ins.begin() + start + period_len);
    u.period_outputs.assign(all_outs.begin() + start, all_outs.begin() + start + period_len);
    return {PeriodicStatus::Ok, std::move(u), ""};
}

PeriodicResult walk_periodic(const std::string& initial,
                             const std::function<std::optional<WalkStep>(const std::string&)>& advance,
                             const std::function<std::string(const std::string&)>& classify,
                             const std::optional<std::string>& anchor) {
    std::vector<std::string> labels{initial};
    std::vector<EventId> ins, outs;
    std::map<std::string, std::size_t> first_seen{{initial, 0}};

    while (true) {
        const std::string verdict = classify(labels.back());
        if (!verdict.empty()) return {PeriodicStatus::NotAutonomous, std::nullopt, verdict};
        auto step = advance(labels.back());
        if (!step)
            return {PeriodicStatus::Halts, std::nullopt,
                    "run halts at " + labels.back() + " after " + std::to_string(ins.size()) +
                        " steps"};
        ins.push_back(step->input);
        outs.push_back(step->output);
        labels.push_back(step->next_label);

        auto [it, inserted] = first_seen.insert({labels.back(), labels.size() - 1});
        if (!inserted)
            return factor(labels, ins, outs, it->second, labels.size() - 1, anchor, advance);
    }
}

}  // namespace

PeriodicResult derive_periodic(const EfsmSdl& m, const std::optional<Config>& anchor) {
    std::map<std::string, Config> configs;  // label -> configuration
    const Config init = m.initial();
    configs[init.to_string()] = init;

    auto classify = [&](const std::string& label) -> std::string {
        const Config& c = configs.at(label);
        std::size_t processable = 0;
        for (const auto& i : m.inputs)
            if (find_pair(m, c.state, i) != nullptr) ++processable;
        if (processable == 1) return "";
        return "configuration " + label + " admits " + std::to_string(processable) +
               " base input events";
    };

    auto advance = [&](const std::string& label) -> std::optional<WalkStep> {
        const Config& c = configs.at(label);
        for (const auto& i : m.inputs) {
            const TransitionPair* pair = find_pair(m, c.state, i);
            if (pair == nullptr) continue;
            const bool bin = eval_pred(*pair->pred, c.vals);
            const Branch& branch = bin ? pair->then_branch : pair->else_branch;
            auto next = eval_update(branch.update, c.vals, m.vars);
            if (!next) return std::nullopt;
            Config succ{branch.dest, std::move(*next)};
            std::string succ_label = succ.to_string();
            configs.emplace(succ_label, std::move(succ));
            return WalkStep{i, branch.output, std::move(succ_label)};
        }
        return std::nullopt;
    };

    return walk_periodic(init.to_string(), advance, classify,
                         anchor ? std::optional<std::string>(anchor->to_string()) : std::nullopt);
}

PeriodicResult derive_periodic(const MealyAutomaton& system, const std::optional<StateId>& anchor) {
    auto classify = [&](const StateId& q) -> std::string {
        std::size_t defined = 0;
        for (const auto& sigma : system.alphabet)
            if (system.defined(q, sigma)) ++defined;
        if (defined <= 1) return "";  // zero defined events halts the walk instead
        return "state " + q + " admits " + std::to_string(defined) + " events";
    };

    auto advance = [&](const StateId& q) -> std::optional<WalkStep> {
        for (const auto& sigma : system.alphabet) {
            if (!system.defined(q, sigma)) continue;
            return WalkStep{sigma.base, *system.lambda(q, sigma), *system.delta(q, sigma)};
        }
        return std::nullopt;
    };

    return walk_periodic(system.initial, advance, classify, anchor);
}

// ── Expression rendering ────────────────────────────────────────────────────

namespace {

std::string run_length_text(const std::vector<std::string>& atoms) {
    std::string out;
    std::size_t i = 0;
    while (i < atoms.size()) {
        std::size_t j = i;
        while (j < atoms.size() && atoms[j] == atoms[i]) ++j;
        if (!out.empty()) out += " ";
        out += atoms[i];
        if (j - i > 1) out += "^" + std::to_string(j - i);
        i = j;
    }
    return out;
}

std::string sequence_expr(const std::vector<std::string>& prefix,
                          const std::vector<std::string>& period) {
    const std::string head = run_length_text(prefix);
    const std::string cycle = "(" + run_length_text(period) + ")*";
    return head.empty() ? cycle : head + " " + cycle;
}

std::vector<std::string> combined_atoms(const std::vector<EventId>& ins,
                                        const std::vector<EventId>& outs) {
    std::vector<std::string> atoms;
    atoms.reserve(ins.size());
    for (std::size_t i = 0; i < ins.size(); ++i)
        atoms.push_back("(" + ins[i] + "/" + outs[i] + ")");
    return atoms;
}

}  // namespace

std::string render_input_expr(const UltimatelyPeriodic& u) {
    return sequence_expr({u.prefix_inputs.begin(), u.prefix_inputs.end()},
                         {u.period_inputs.begin(), u.period_inputs.end()});
}

std::string render_output_expr(const UltimatelyPeriodic& u) {
    return sequence_expr({u.prefix_outputs.begin(), u.prefix_outputs.end()},
                         {u.period_outputs.begin(), u.period_outputs.end()});
}

std::string render_combined(const UltimatelyPeriodic& u) {
    return sequence_expr(combined_atoms(u.prefix_inputs, u.prefix_outputs),
                         combined_atoms(u.period_inputs, u.period_outputs));
}

}  // namespace efsmdes

#include "efsmdes/machine_io.hpp"

#include <cctype>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

namespace efsmdes {

using nlohmann::json;

bool valid_identifier(const std::string& name) {
    if (name.empty()) return false;
    if (!std::isalpha(static_cast<unsigned char>(name[0])) && name[0] != '_') return false;
    for (const char c : name)
        if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_') return false;
    return true;
}

namespace {

class MachineReader {
public:
    explicit MachineReader(const json& doc) : doc_(doc) {}

    ParseResult read() {
        ParseResult result;
        if (!doc_.is_object()) {
            fail("", "document must be a JSON object");
            result.diagnostics = std::move(diagnostics_);
            return result;
        }

        EfsmSdl m;
        read_names("/states", "states", m.states);
        read_names("/inputs", "inputs", m.inputs);
        read_names("/outputs", "outputs", m.outputs);
        read_vars(m);
        read_init(m);
        read_pairs(m);

        if (diagnostics_.empty()) result.machine = std::move(m);
        result.diagnostics = std::move(diagnostics_);
        return result;
    }

private:
    void fail(const std::string& path, const std::string& message) {
        diagnostics_.push_back({path, message});
    }

    const json* field(const std::string& key, json::value_t type, const char* type_name) {
        if (!doc_.contains(key)) {
            fail("/" + key, "missing required key");
            return nullptr;
        }
        const json& value = doc_.at(key);
        if (value.type() != type) {
            fail("/" + key, std::string("expected ") + type_name);
            return nullptr;
        }
        return &value;
    }

    void read_names(const std::string& path, const std::string& key, std::set<StateId>& out) {
        const json* array = field(key, json::value_t::array, "an array of names");
        if (array == nullptr) return;
        for (std::size_t i = 0; i < array->size(); ++i) {
            const std::string item_path = path + "/" + std::to_string(i);
            const json& item = (*array)[i];
            if (!item.is_string()) {
                fail(item_path, "expected a name string");
                continue;
            }
            const std::string name = item.get<std::string>();
            if (!valid_identifier(name)) {
                fail(item_path, "'" + name + "' is not a valid identifier");
                continue;
            }
            if (!out.insert(name).second) fail(item_path, "duplicate name " + name);
        }
    }

    void read_vars(EfsmSdl& m) {
        const json* array = field("vars", json::value_t::array, "an array of declarations");
        if (array == nullptr) return;
        for (std::size_t i = 0; i < array->size(); ++i) {
            const std::string path = "/vars/" + std::to_string(i);
            const json& item = (*array)[i];
            if (!item.is_object() || !item.contains("name") || !item.contains("lo") ||
                !item.contains("hi")) {
                fail(path, "expected {name, lo, hi}");
                continue;
            }
            if (!item["name"].is_string() || !item["lo"].is_number_integer() ||
                !item["hi"].is_number_integer()) {
                fail(path, "name must be a string, lo and hi integers");
                continue;
            }
            VarDecl decl{item["name"].get<std::string>(), item["lo"].get<std::int64_t>(),
                         item["hi"].get<std::int64_t>()};
            if (!valid_identifier(decl.name)) {
                fail(path + "/name", "'" + decl.name + "' is not a valid identifier");
                continue;
            }
            if (find_var(m.vars, decl.name) != nullptr) {
                fail(path + "/name", "variable " + decl.name + " declared twice");
                continue;
            }
            if (decl.lo > decl.hi) {
                fail(path, "empty domain [" + std::to_string(decl.lo) + "," +
                               std::to_string(decl.hi) + "]");
                continue;
            }
            m.vars.push_back(std::move(decl));
        }
    }

    void read_init(EfsmSdl& m) {
        const json* init = field("init", json::value_t::object, "an object {state, vals}");
        if (init == nullptr) return;
        if (!init->contains("state") || !(*init)["state"].is_string()) {
            fail("/init/state", "expected a state name");
        } else {
            m.init_state = (*init)["state"].get<std::string>();
            if (m.states.count(m.init_state) == 0)
                fail("/init/state", "unknown state " + m.init_state);
        }
        if (!init->contains("vals") || !(*init)["vals"].is_object()) {
            fail("/init/vals", "expected an object of variable values");
            return;
        }
        for (const auto& [name, value] : (*init)["vals"].items()) {
            const std::string path = "/init/vals/" + name;
            const VarDecl* decl = find_var(m.vars, name);
            if (decl == nullptr) {
                fail(path, "unknown variable " + name);
                continue;
            }
            if (!value.is_number_integer()) {
                fail(path, "expected an integer");
                continue;
            }
            const std::int64_t v = value.get<std::int64_t>();
            if (!decl->contains(v))
                fail(path, name + "=" + std::to_string(v) + " is outside [" +
                               std::to_string(decl->lo) + "," + std::to_string(decl->hi) + "]");
            m.init_vals.set(name, v);
        }
        for (const auto& decl : m.vars)
            if (!m.init_vals.contains(decl.name))
                fail("/init/vals", "missing initial value for variable " + decl.name);
    }

    BoolExprPtr read_pred(const std::string& path, const json& pair, const EfsmSdl& m) {
        if (!pair.contains("pred") || !pair["pred"].is_string()) {
            fail(path + "/pred", "expected a predicate string");
            return nullptr;
        }
        try {
            auto pred = parse_predicate(pair["pred"].get<std::string>());
            std::vector<std::string> used;
            collect_vars(*pred, used);
            for (const auto& name : used)
                if (find_var(m.vars, name) == nullptr)
                    fail(path + "/pred", "undeclared variable " + name);
            return pred;
        } catch (const ExprParseError& e) {
            fail(path + "/pred", e.what());
            return nullptr;
        }
    }

    std::optional<Branch> read_branch(const std::string& path, const json& pair,
                                      const std::string& key, const EfsmSdl& m) {
        if (!pair.contains(key) || !pair[key].is_object()) {
            fail(path + "/" + key, "expected an object {dest, output, update}");
            return std::nullopt;
        }
        const json& b = pair[key];
        Branch branch;
        bool good = true;
        if (!b.contains("dest") || !b["dest"].is_string()) {
            fail(path + "/" + key + "/dest", "expected a state name");
            good = false;
        } else {
            branch.dest = b["dest"].get<std::string>();
            if (m.states.count(branch.dest) == 0) {
                fail(path + "/" + key + "/dest", "unknown state " + branch.dest);
                good = false;
            }
        }
        if (!b.contains("output") || !b["output"].is_string()) {
            fail(path + "/" + key + "/output", "expected an output name");
            good = false;
        } else {
            branch.output = b["output"].get<std::string>();
            if (m.outputs.count(branch.output) == 0) {
                fail(path + "/" + key + "/output", "unknown output " + branch.output);
                good = false;
            }
        }
        if (b.contains("update")) {
            if (!b["update"].is_string()) {
                fail(path + "/" + key + "/update", "expected an update string");
                good = false;
            } else {
                try {
                    branch.update = parse_update(b["update"].get<std::string>());
                    for (const auto& name : collect_vars(branch.update))
                        if (find_var(m.vars, name) == nullptr) {
                            fail(path + "/" + key + "/update", "undeclared variable " + name);
                            good = false;
                        }
                } catch (const ExprParseError& e) {
                    fail(path + "/" + key + "/update", e.what());
                    good = false;
                }
            }
        }
        if (!good) return std::nullopt;
        return branch;
    }

    void read_pairs(EfsmSdl& m) {
        const json* array = field("pairs", json::value_t::array, "an array of transition pairs");
        if (array == nullptr) return;
        std::set<std::pair<StateId, EventId>> seen;
        for (std::size_t i = 0; i < array->size(); ++i) {
            const std::string path = "/pairs/" + std::to_string(i);
            const json& item = (*array)[i];
            if (!item.is_object()) {
                fail(path, "expected an object");
                continue;
            }
            TransitionPair pair;
            bool good = true;
            if (!item.contains("src") || !item["src"].is_string()) {
                fail(path + "/src", "expected a state name");
                good = false;
            } else {
                pair.src = item["src"].get<std::string>();
                if (m.states.count(pair.src) == 0) {
                    fail(path + "/src", "unknown state " + pair.src);
                    good = false;
                }
            }
            if (!item.contains("input") || !item["input"].is_string()) {
                fail(path + "/input", "expected an input name");
                good = false;
            } else {
                pair.input = item["input"].get<std::string>();
                if (m.inputs.count(pair.input) == 0) {
                    fail(path + "/input", "unknown input " + pair.input);
                    good = false;
                }
            }
            if (good && !seen.insert({pair.src, pair.input}).second) {
                fail(path, "duplicate pair at (" + pair.src + ", " + pair.input +
                               "); one pair per (state, input) keeps the machine deterministic");
                good = false;
            }
            pair.pred = read_pred(path, item, m);
            auto then_branch = read_branch(path, item, "then", m);
            auto else_branch = read_branch(path, item, "else", m);
            if (!good || pair.pred == nullptr || !then_branch || !else_branch) continue;
            pair.then_branch = std::move(*then_branch);
            pair.else_branch = std::move(*else_branch);
            m.pairs.push_back(std::move(pair));
        }
    }

    const json& doc_;
    std::vector<Diagnostic> diagnostics_;
};

}  // namespace

ParseResult parse_machine(const std::string& text) {
    json doc = json::parse(text, nullptr, /*allow_exceptions=*/false);
    if (doc.is_discarded()) {
        ParseResult result;
        result.diagnostics.push_back({"", "not valid JSON"});
        return result;
    }
    return MachineReader(doc).read();
}

ParseResult parse_machine_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        ParseResult result;
        result.diagnostics.push_back({"", "cannot open " + path});
        return result;
    }
    std::ostringstream text;
    text << in.rdbuf();
    return parse_machine(text.str());
}

std::string serialize_machine(const EfsmSdl& m, int indent) {
    json doc;
    doc["states"] = m.states;
    doc["inputs"] = m.inputs;
    doc["outputs"] = m.outputs;
    doc["vars"] = json::array();
    for (const auto& decl : m.vars)
        doc["vars"].push_back({{"name", decl.name}, {"lo", decl.lo}, {"hi", decl.hi}});
    doc["init"]["state"] = m.init_state;
    doc["init"]["vals"] = json::object();
    for (const auto& [name, value] : m.init_vals) doc["init"]["vals"][name] = value;
    doc["pairs"] = json::array();
    for (const auto& pair : m.pairs) {
        json entry;
        entry["src"] = pair.src;
        entry["input"] = pair.input;
        entry["pred"] = to_string(*pair.pred);
        for (const auto& [key, branch] :
             {std::make_pair("then", &pair.then_branch), std::make_pair("else", &pair.else_branch)}) {
            entry[key] = {{"dest", branch->dest},
                          {"output", branch->output},
                          {"update", to_string(branch->update)}};
        }
        doc["pairs"].push_back(std::move(entry));
    }
    return doc.dump(indent) + "\n";
}

}  // namespace efsmdes

// ============================================================================
// efsmdes/machine_io.hpp — machine file format
// ============================================================================
//
// Machines are stored as JSON documents:
//
//   {
//     "states":  ["I", "II"],
//     "inputs":  ["a"],
//     "outputs": ["m", "n"],
//     "vars":    [{"name": "v", "lo": 0, "hi": 9}],
//     "init":    {"state": "I", "vals": {"v": 0}},
//     "pairs":   [{"src": "I", "input": "a", "pred": "v > 7",
//                  "then": {"dest": "II", "output": "n", "update": "v := v + 1"},
//                  "else": {"dest": "I",  "output": "m", "update": "v := v + 1"}}]
//   }
//
// Predicates and updates use the expression grammar from efsmdes/expr.hpp.
// Every diagnostic carries a JSON-pointer-style path to the offending value.
// ============================================================================

#ifndef EFSMDES_MACHINE_IO_HPP
#define EFSMDES_MACHINE_IO_HPP

#include <optional>
#include <string>
#include <vector>

#include "efsmdes/efsm.hpp"

namespace efsmdes {

struct Diagnostic {
    std::string path;  // "/pairs/0/pred"
    std::string message;

    std::string to_string() const { return path + ": " + message; }
};

struct ParseResult {
    std::optional<EfsmSdl> machine;
    std::vector<Diagnostic> diagnostics;

    bool ok() const { return machine.has_value(); }
};

ParseResult parse_machine(const std::string& text);
ParseResult parse_machine_file(const std::string& path);

std::string serialize_machine(const EfsmSdl& m, int indent = 2);

/// Identifier rule for states, events, and variables: [A-Za-z_][A-Za-z0-9_]*
bool valid_identifier(const std::string& name);

}  // namespace efsmdes

#endif  // EFSMDES_MACHINE_IO_HPP

#pragma once

// Level-2 descriptions: deterministic, complete Moore machines whose states
// carry fixed-width bit-vector labels. The labels are the physical encoding;
// everything the Level-1 abstraction later quotients away lives here.

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "substrate/errors.hpp"

namespace substrate {

struct EncodedMachine {
    std::string name;
    uint32_t width = 0;                     // bits per state label
    std::vector<std::string> states;        // distinct labels of `width` chars over {0,1}
    std::vector<std::string> inputs;
    std::vector<std::string> outputs;
    std::string initial;
    // Deterministic, total transition and Moore output maps.
    std::map<std::pair<std::string, std::string>, std::string> transition;
    std::map<std::string, std::string> output;
    // Optional display names for the functional blocks the states fall into.
    std::map<std::string, std::string> aliases;

    // Throws ValidationError on partial tables, width mismatches, unknown
    // labels, or duplicate states.
    void validate() const;

    bool has_state(const std::string& s) const;
    bool has_input(const std::string& x) const;
};

struct Trace {
    std::vector<std::string> states;  // |inputs| + 1 entries, starts at initial
    std::vector<std::string> outputs; // one per state
    std::vector<std::string> inputs;
};

// Bit-level dependency graph: edge (j -> i) means bit i's next value depends
// on bit j's current value, as witnessed by a single-bit flip between two
// reachable state labels.
struct ComponentGraph {
    uint32_t width = 0;
    std::set<std::pair<uint32_t, uint32_t>> edges; // (source bit j, target bit i)

    bool has_edge(uint32_t j, uint32_t i) const { return edges.count({j, i}) > 0; }
    bool has_cycle() const;
};

std::pair<std::string, std::string> step(const EncodedMachine& m, const std::string& state,
                                         const std::string& input);
Trace run(const EncodedMachine& m, const std::vector<std::string>& inputs);

std::set<std::string> reachable_states(const EncodedMachine& m);
ComponentGraph dependency_graph(const EncodedMachine& m);

// Exhaustively compares output sequences over every input sequence of length
// <= horizon. Throws HorizonTooLarge when the sequence count exceeds budget.
bool io_equivalent(const EncodedMachine& m1, const EncodedMachine& m2, uint32_t horizon,
                   uint64_t budget = 65536);

// The tollbooth fixture pair: one mod-8 vehicle counter realized twice.
// mod8_feedback is a 3-bit feedback shift register walking all eight labels
// (its component graph is cyclic); mod8_feedforward re-encodes the same
// counter phases in a 4-bit even-parity code, where no single-bit flip lands
// on a valid state and the measured component graph is empty.
EncodedMachine mod8_feedback();
EncodedMachine mod8_feedforward();

EncodedMachine load_machine(const std::string& path);
EncodedMachine machine_from_json_text(const std::string& text);
std::string machine_to_json_text(const EncodedMachine& m);

} // namespace substrate

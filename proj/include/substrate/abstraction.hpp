#pragma once

// Level-2 -> Level-1 abstraction. The quotient of an encoded machine under
// output-equivalence is its functional machine; the abstraction map sends
// each encoded state to its block. Functional-state identifiers are
// canonical ("F0", "F1", ... in breadth-first discovery order from the
// initial block, inputs taken in lexicographic order), so two bisimilar
// machines yield literally identical functional machines. Alias tables give
// blocks display names without affecting the structure.

#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "substrate/encoded_machine.hpp"

namespace substrate {

struct FunctionalMachine {
    std::vector<std::string> states; // canonical ids in BFS order: F0, F1, ...
    std::vector<std::string> inputs;
    std::vector<std::string> outputs;
    std::string initial;
    std::map<std::pair<std::string, std::string>, std::string> transition;
    std::map<std::string, std::string> output;
    std::map<std::string, std::string> display; // canonical id -> alias (when given)

    // Alias when one was declared for the block, canonical id otherwise.
    const std::string& display_name(const std::string& canonical_id) const;

    friend bool operator==(const FunctionalMachine& a, const FunctionalMachine& b) {
        return a.states == b.states && a.inputs == b.inputs && a.initial == b.initial &&
               a.transition == b.transition && a.output == b.output;
    }
};

struct AbstractionMap {
    std::string source;                         // encoded machine name
    std::map<std::string, std::string> mapping; // encoded state -> canonical functional id
    std::map<std::string, std::string> display; // canonical id -> alias
};

struct BisimWitness {
    std::set<std::pair<std::string, std::string>> relation; // (state of m1, state of m2)
    bool relates(const std::string& a, const std::string& b) const { return relation.count({a, b}) > 0; }
};

// Restriction to the states reachable from initial.
EncodedMachine reachable(const EncodedMachine& m);

// Partition refinement on output-equivalence. Requires a reachable-restricted
// machine; the result is the minimal quotient.
std::pair<FunctionalMachine, AbstractionMap> quotient(const EncodedMachine& m);

// Returns a bisimulation relation between the reachable parts, or nullopt if
// none exists. Implemented as a quotient-isomorphism check.
std::optional<BisimWitness> bisimilar(const EncodedMachine& m1, const EncodedMachine& m2);

// True iff the output is constant on every abstraction block and the induced
// block -> output map is non-invertible (so the functional-state trace is not
// recoverable from outputs alone).
bool check_coarse_graining(const EncodedMachine& m, const AbstractionMap& abs_map);

// Functional state of one encoded state, alias-resolved. Throws UnknownState
// for labels outside the map's domain.
std::string abs_apply(const AbstractionMap& abs_map, const std::string& encoded_state);

} // namespace substrate

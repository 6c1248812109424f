#pragma once

// Pluggable prediction and inference theories.
//
// Level1Functional predicts from functional states only: the dataset's trace
// is pushed through an abstraction (machine quotient, witness-certified
// network correspondence, or the simulated-registry correspondence for
// universal-machine runs) and the per-state experience sets are unioned.
// FeedbackSensitive and DimensionSensitive are the Level-2-sensitive foils:
// the first reads the component graph's cyclicity, the second the hidden
// dimension. FeedbackSensitive stands in for causal-structure measures; it
// is a cycle check, not an integrated-information calculus.

#include <map>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "substrate/abstraction.hpp"
#include "substrate/dataset.hpp"
#include "substrate/experience.hpp"
#include "substrate/system.hpp"

namespace substrate {

enum class TheoryKind { Level1Functional, FeedbackSensitive, DimensionSensitive };

std::string theory_name(TheoryKind k);
TheoryKind theory_from_name(const std::string& name);

struct TheoryConfig {
    TheoryKind kind = TheoryKind::Level1Functional;
    // Optional explicit pred' table keyed by functional-state name (alias
    // when the machine declares one). Empty means the injective default
    // s -> {"exp:<s>"}.
    std::map<std::string, std::set<std::string>> assignment;
    double witness_tol = 1e-9;
};

struct InfConfig {
    std::string rule = "digest";
    // Optional report table keyed by the hex digest of the inference
    // content; empty means the injective default "report:<digest>".
    std::map<std::string, std::string> report_table;
};

// The abstraction regime a Level-1 theory is evaluated under: either a
// machine abstraction map (functional ids derived from the dataset's state
// labels) or an externally established functional trace (networks, TMs).
struct MachineAbstraction {
    AbstractionMap map;
};
struct DeclaredTrace {
    std::vector<std::vector<std::string>> ids; // functional ids per battery item
};
using AbstractionRegime = std::variant<MachineAbstraction, DeclaredTrace>;

struct Level1Theory {
    std::map<std::string, std::set<std::string>> assignment; // empty -> injective default
    AbstractionRegime regime;
};

// Union of the per-functional-state experience sets over the dataset's trace.
ExperienceSet pred_level1(const Level1Theory& theory, const Dataset& dataset);

// {"cyclic"} or {"acyclic"} from the machine's component graph.
ExperienceSet pred_feedback(const System& system, const Dataset& dataset);

// {"dim:<hidden_dim>"} from the dataset's hidden-trace header.
ExperienceSet pred_dim(const Dataset& dataset);

// Report-based inference: a function of the inference content alone.
Experience inf_from_outputs(const Dataset& dataset, const InfConfig& config);

// State-label traces of an encoded-machine dataset, one list per battery item.
std::vector<std::vector<std::string>> decode_state_traces(const Dataset& dataset);

// Assignment lookup with the injective default.
ExperienceSet assigned_experiences(const std::map<std::string, std::set<std::string>>& assignment,
                                   const std::string& functional_id);

// Canonical structural digest of a Turing machine (independent of state and
// symbol spellings beyond the canonical index order).
std::string tm_digest(const TuringMachine& tm);

} // namespace substrate

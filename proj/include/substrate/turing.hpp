#pragma once

// Turing machine 7-tuple semantics. States and tape symbols are strings at
// the API; the runner interns them for speed. The transition function is
// partial and undefined on accepting states.

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "substrate/errors.hpp"

namespace substrate {

struct TmRule {
    std::string next_state;
    std::string write;
    char move = 'R'; // 'L' or 'R'

    friend bool operator==(const TmRule&, const TmRule&) = default;
};

struct TuringMachine {
    std::string name;
    std::vector<std::string> states;
    std::vector<std::string> tape_alphabet;
    std::string blank;
    std::vector<std::string> input_alphabet; // subset of tape_alphabet minus blank
    std::string initial;
    std::set<std::string> accepting;
    std::map<std::pair<std::string, std::string>, TmRule> transition; // (state, read) -> rule

    void validate() const;

    friend bool operator==(const TuringMachine&, const TuringMachine&) = default;
};

// Snapshot of a run: registry state, finite-support tape, head position.
struct Configuration {
    std::string registry;
    std::map<int64_t, std::string> tape; // positions outside the map read blank
    int64_t head = 0;

    const std::string& symbol_at(int64_t pos, const TuringMachine& tm) const;
};

enum class RunStatus { Halted, FuelExhausted, Stuck };

std::string run_status_name(RunStatus s);

struct RunResult {
    RunStatus status = RunStatus::Stuck;
    std::vector<std::string> final_tape;     // trimmed: leading/trailing blanks removed
    std::vector<std::string> registry_trace; // q0, then the state after every step
    uint64_t steps = 0;
};

// One transition. `next` is empty when the machine is terminal; `terminal`
// then says whether the registry is accepting (Halted) or delta is simply
// undefined (Stuck).
struct TmStepResult {
    std::optional<Configuration> next;
    RunStatus terminal = RunStatus::Halted;
};

TmStepResult tm_step(const TuringMachine& tm, const Configuration& config);

// Writes the input at positions 0.., head at 0, registry at initial, then
// iterates up to `fuel` steps.
RunResult tm_run(const TuringMachine& tm, const std::vector<std::string>& input, uint64_t fuel);

// Shipped fixtures (all halt on every input over their alphabets).
TuringMachine tm_unary_successor();
TuringMachine tm_binary_increment();
TuringMachine tm_even_parity();

TuringMachine load_turing_machine(const std::string& path);
TuringMachine tm_from_json_text(const std::string& text);
std::string tm_to_json_text(const TuringMachine& tm);

namespace detail {

// Dense-index view of a machine for tight simulation loops. Symbol/state
// order follows the canonical encoder convention: initial state first and
// blank symbol first, remaining entries sorted by name.
struct IndexedTm {
    explicit IndexedTm(const TuringMachine& tm);

    const TuringMachine& tm;
    std::vector<std::string> state_names;  // index -> name
    std::vector<std::string> symbol_names; // index -> name
    std::map<std::string, int> state_index;
    std::map<std::string, int> symbol_index;
    std::vector<bool> is_accepting; // by state index

    // rule[state * n_symbols + symbol]: packed (next, write, move) or -1.
    struct Packed {
        int next = -1;
        int write = -1;
        int move = 0; // -1 left, +1 right
    };
    std::vector<Packed> rules;

    int n_states() const { return static_cast<int>(state_names.size()); }
    int n_symbols() const { return static_cast<int>(symbol_names.size()); }
    const Packed& rule(int state, int symbol) const {
        return rules[static_cast<size_t>(state) * symbol_names.size() + static_cast<size_t>(symbol)];
    }
};

// Growable two-sided tape of symbol indices; cells default to blank (0).
class Tape {
public:
    int read(int64_t pos) const;
    void write(int64_t pos, int symbol);
    int64_t min_used() const { return min_used_; }
    int64_t max_used() const { return max_used_; }

private:
    std::vector<int> right_; // positions 0, 1, 2, ...
    std::vector<int> left_;  // positions -1, -2, ...
    int64_t min_used_ = 0;
    int64_t max_used_ = -1;
};

} // namespace detail

} // namespace substrate

#include "substrate/turing.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace substrate {

using nlohmann::json;

void TuringMachine::validate() const {
    if (states.empty()) throw ValidationError("tm '" + name + "': no states");
    std::set<std::string> state_set(states.begin(), states.end());
    if (state_set.size() != states.size()) throw ValidationError("tm '" + name + "': duplicate states");
    std::set<std::string> tape_set(tape_alphabet.begin(), tape_alphabet.end());
    if (tape_set.size() != tape_alphabet.size())
        throw ValidationError("tm '" + name + "': duplicate tape symbols");
    if (!tape_set.count(blank)) throw ValidationError("tm '" + name + "': blank not in tape alphabet");
    for (const auto& s : input_alphabet) {
        if (s == blank) throw ValidationError("tm '" + name + "': blank cannot be an input symbol");
        if (!tape_set.count(s))
            throw ValidationError("tm '" + name + "': input symbol '" + s + "' not in tape alphabet");
    }
    if (!state_set.count(initial)) throw ValidationError("tm '" + name + "': unknown initial state");
    for (const auto& f : accepting)
        if (!state_set.count(f)) throw ValidationError("tm '" + name + "': unknown accepting state");
    for (const auto& [key, rule] : transition) {
        if (!state_set.count(key.first))
            throw ValidationError("tm '" + name + "': transition from unknown state '" + key.first + "'");
        if (accepting.count(key.first))
            throw ValidationError("tm '" + name + "': transition defined on accepting state '" +
                                  key.first + "'");
        if (!tape_set.count(key.second))
            throw ValidationError("tm '" + name + "': transition reads unknown symbol");
        if (!state_set.count(rule.next_state) || !tape_set.count(rule.write))
            throw ValidationError("tm '" + name + "': transition targets unknown state or symbol");
        if (rule.move != 'L' && rule.move != 'R')
            throw ValidationError("tm '" + name + "': move must be L or R");
    }
}

const std::string& Configuration::symbol_at(int64_t pos, const TuringMachine& tm) const {
    auto it = tape.find(pos);
    return it == tape.end() ? tm.blank : it->second;
}

TmStepResult tm_step(const TuringMachine& tm, const Configuration& config) {
    if (tm.accepting.count(config.registry)) return {std::nullopt, RunStatus::Halted};
    const std::string& sym = config.symbol_at(config.head, tm);
    auto it = tm.transition.find({config.registry, sym});
    if (it == tm.transition.end()) return {std::nullopt, RunStatus::Stuck};
    Configuration next = config;
    next.registry = it->second.next_state;
    if (it->second.write == tm.blank)
        next.tape.erase(config.head);
    else
        next.tape[config.head] = it->second.write;
    next.head += it->second.move == 'L' ? -1 : 1;
    return {std::move(next), RunStatus::Halted};
}

namespace detail {

IndexedTm::IndexedTm(const TuringMachine& machine) : tm(machine) {
    state_names.push_back(machine.initial);
    std::vector<std::string> rest_states;
    for (const auto& q : machine.states)
        if (q != machine.initial) rest_states.push_back(q);
    std::sort(rest_states.begin(), rest_states.end());
    state_names.insert(state_names.end(), rest_states.begin(), rest_states.end());

    symbol_names.push_back(machine.blank);
    std::vector<std::string> rest_symbols;
    for (const auto& a : machine.tape_alphabet)
        if (a != machine.blank) rest_symbols.push_back(a);
    std::sort(rest_symbols.begin(), rest_symbols.end());
    symbol_names.insert(symbol_names.end(), rest_symbols.begin(), rest_symbols.end());
    for (size_t i = 0; i < state_names.size(); ++i) state_index[state_names[i]] = static_cast<int>(i);
    for (size_t i = 0; i < symbol_names.size(); ++i) symbol_index[symbol_names[i]] = static_cast<int>(i);
    is_accepting.assign(state_names.size(), false);
    for (const auto& f : machine.accepting) is_accepting[static_cast<size_t>(state_index.at(f))] = true;
    rules.assign(state_names.size() * symbol_names.size(), Packed{});
    for (const auto& [key, rule] : machine.transition) {
        Packed p;
        p.next = state_index.at(rule.next_state);
        p.write = symbol_index.at(rule.write);
        p.move = rule.move == 'L' ? -1 : 1;
        rules[static_cast<size_t>(state_index.at(key.first)) * symbol_names.size() +
              static_cast<size_t>(symbol_index.at(key.second))] = p;
    }
}

int Tape::read(int64_t pos) const {
    if (pos >= 0)
        return pos < static_cast<int64_t>(right_.size()) ? right_[static_cast<size_t>(pos)] : 0;
    size_t idx = static_cast<size_t>(-pos - 1);
    return idx < left_.size() ? left_[idx] : 0;
}

void Tape::write(int64_t pos, int symbol) {
    if (pos >= 0) {
        if (pos >= static_cast<int64_t>(right_.size())) right_.resize(static_cast<size_t>(pos) + 1, 0);
        right_[static_cast<size_t>(pos)] = symbol;
    } else {
        size_t idx = static_cast<size_t>(-pos - 1);
        if (idx >= left_.size()) left_.resize(idx + 1, 0);
        left_[idx] = symbol;
    }
    if (symbol != 0) {
        min_used_ = std::min(min_used_, pos);
        max_used_ = std::max(max_used_, pos);
    }
}

} // namespace detail

namespace {

std::vector<std::string> trimmed_tape(const detail::IndexedTm& ix, const detail::Tape& tape) {
    int64_t lo = tape.min_used(), hi = tape.max_used();
    while (lo <= hi && tape.read(lo) == 0) ++lo;
    while (hi >= lo && tape.read(hi) == 0) --hi;
    std::vector<std::string> out;
    for (int64_t p = lo; p <= hi; ++p) out.push_back(ix.symbol_names[static_cast<size_t>(tape.read(p))]);
    return out;
}

} // namespace

std::string run_status_name(RunStatus s) {
    switch (s) {
    case RunStatus::Halted: return "Halted";
    case RunStatus::FuelExhausted: return "FuelExhausted";
    case RunStatus::Stuck: return "Stuck";
    }
    return "Stuck";
}

RunResult tm_run(const TuringMachine& tm, const std::vector<std::string>& input, uint64_t fuel) {
    detail::IndexedTm ix(tm);
    for (const auto& s : input)
        if (std::find(tm.input_alphabet.begin(), tm.input_alphabet.end(), s) == tm.input_alphabet.end())
            throw InvalidInputSymbol("tm '" + tm.name + "': input symbol '" + s + "' not in Sigma");

    detail::Tape tape;
    for (size_t i = 0; i < input.size(); ++i)
        tape.write(static_cast<int64_t>(i), ix.symbol_index.at(input[i]));

    RunResult r;
    int state = 0; // initial
    int64_t head = 0;
    r.registry_trace.push_back(ix.state_names[0]);
    for (;;) {
        if (ix.is_accepting[static_cast<size_t>(state)]) {
            r.status = RunStatus::Halted;
            break;
        }
        if (r.steps >= fuel) {
            r.status = RunStatus::FuelExhausted;
            break;
        }
        const auto& rule = ix.rule(state, tape.read(head));
        if (rule.next < 0) {
            r.status = RunStatus::Stuck;
            break;
        }
        tape.write(head, rule.write);
        head += rule.move;
        state = rule.next;
        ++r.steps;
        r.registry_trace.push_back(ix.state_names[static_cast<size_t>(state)]);
    }
    r.final_tape = trimmed_tape(ix, tape);
    return r;
}

TuringMachine tm_unary_successor() {
    TuringMachine tm;
    tm.name = "unary_successor";
    tm.states = {"scan", "halt"};
    tm.tape_alphabet = {"_", "1"};
    tm.blank = "_";
    tm.input_alphabet = {"1"};
    tm.initial = "scan";
    tm.accepting = {"halt"};
    tm.transition[{"scan", "1"}] = {"scan", "1", 'R'};
    tm.transition[{"scan", "_"}] = {"halt", "1", 'R'};
    tm.validate();
    return tm;
}

TuringMachine tm_binary_increment() {
    TuringMachine tm;
    tm.name = "binary_increment";
    tm.states = {"scan", "carry", "halt"};
    tm.tape_alphabet = {"_", "0", "1"};
    tm.blank = "_";
    tm.input_alphabet = {"0", "1"};
    tm.initial = "scan";
    tm.accepting = {"halt"};
    // Scan to the end, then add one from the least significant digit leftward.
    tm.transition[{"scan", "0"}] = {"scan", "0", 'R'};
    tm.transition[{"scan", "1"}] = {"scan", "1", 'R'};
    tm.transition[{"scan", "_"}] = {"carry", "_", 'L'};
    tm.transition[{"carry", "1"}] = {"carry", "0", 'L'};
    tm.transition[{"carry", "0"}] = {"halt", "1", 'R'};
    tm.transition[{"carry", "_"}] = {"halt", "1", 'R'}; // overflow grows the tape leftward
    tm.validate();
    return tm;
}

TuringMachine tm_even_parity() {
    TuringMachine tm;
    tm.name = "even_parity";
    tm.states = {"even", "odd", "halt"};
    tm.tape_alphabet = {"_", "0", "1"};
    tm.blank = "_";
    tm.input_alphabet = {"0", "1"};
    tm.initial = "even";
    tm.accepting = {"halt"};
    // Consume the word left to right, then write the parity verdict.
    tm.transition[{"even", "0"}] = {"even", "_", 'R'};
    tm.transition[{"even", "1"}] = {"odd", "_", 'R'};
    tm.transition[{"odd", "0"}] = {"odd", "_", 'R'};
    tm.transition[{"odd", "1"}] = {"even", "_", 'R'};
    tm.transition[{"even", "_"}] = {"halt", "1", 'R'};
    tm.transition[{"odd", "_"}] = {"halt", "0", 'R'};
    tm.validate();
    return tm;
}

namespace {

TuringMachine tm_from_json(const json& j, const std::string& origin) {
    TuringMachine tm;
    try {
        tm.name = j.value("name", origin);
        for (const auto& s : j.at("states")) tm.states.push_back(s.get<std::string>());
        for (const auto& s : j.at("tape_alphabet")) tm.tape_alphabet.push_back(s.get<std::string>());
        tm.blank = j.at("blank").get<std::string>();
        for (const auto& s : j.at("input_alphabet")) tm.input_alphabet.push_back(s.get<std::string>());
        tm.initial = j.at("initial").get<std::string>();
        for (const auto& s : j.at("accepting")) tm.accepting.insert(s.get<std::string>());
        for (const auto& row : j.at("transitions")) {
            if (!row.is_array() || row.size() != 5)
                throw ValidationError(origin + ": transitions rows must be "
                                               "[state, read, next_state, write, move]");
            std::string from = row[0].get<std::string>();
            std::string read = row[1].get<std::string>();
            TmRule rule;
            rule.next_state = row[2].get<std::string>();
            rule.write = row[3].get<std::string>();
            std::string mv = row[4].get<std::string>();
            if (mv != "L" && mv != "R") throw ValidationError(origin + ": move must be \"L\" or \"R\"");
            rule.move = mv[0];
            if (tm.transition.count({from, read}))
                throw ValidationError(origin + ": duplicate transition for (" + from + ", " + read + ")");
            tm.transition[{from, read}] = rule;
        }
    } catch (const json::exception& e) {
        throw ParseError(origin + ": " + e.what());
    }
    tm.validate();
    return tm;
}

} // namespace

TuringMachine tm_from_json_text(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw ParseError(std::string("tm JSON: ") + e.what());
    }
    return tm_from_json(j, "tm");
}

TuringMachine load_turing_machine(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open tm file '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    json j;
    try {
        j = json::parse(ss.str());
    } catch (const json::exception& e) {
        throw ParseError(path + ": " + e.what());
    }
    return tm_from_json(j, path);
}

std::string tm_to_json_text(const TuringMachine& tm) {
    json j;
    j["name"] = tm.name;
    j["states"] = tm.states;
    j["tape_alphabet"] = tm.tape_alphabet;
    j["blank"] = tm.blank;
    j["input_alphabet"] = tm.input_alphabet;
    j["initial"] = tm.initial;
    j["accepting"] = std::vector<std::string>(tm.accepting.begin(), tm.accepting.end());
    json rows = json::array();
    for (const auto& [key, rule] : tm.transition)
        rows.push_back({key.first, key.second, rule.next_state, rule.write, std::string(1, rule.move)});
    j["transitions"] = rows;
    return j.dump(2) + "\n";
}

} // namespace substrate

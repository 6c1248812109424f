#include "substrate/encoded_machine.hpp"

#include <algorithm>
#include <deque>
#include <fstream>
#include <functional>
#include <sstream>

#include "json.hpp"

namespace substrate {

using nlohmann::json;

void EncodedMachine::validate() const {
    if (states.empty()) throw ValidationError("machine '" + name + "': no states");
    if (inputs.empty()) throw ValidationError("machine '" + name + "': empty input alphabet");
    if (outputs.empty()) throw ValidationError("machine '" + name + "': empty output alphabet");
    std::set<std::string> state_set(states.begin(), states.end());
    if (state_set.size() != states.size())
        throw ValidationError("machine '" + name + "': duplicate state labels");
    for (const auto& s : states) {
        if (s.size() != width)
            throw ValidationError("machine '" + name + "': state '" + s + "' does not have width " +
                                  std::to_string(width));
        if (s.find_first_not_of("01") != std::string::npos)
            throw ValidationError("machine '" + name + "': state '" + s + "' is not a bit string");
    }
    if (!state_set.count(initial))
        throw ValidationError("machine '" + name + "': initial state '" + initial + "' not declared");
    std::set<std::string> input_set(inputs.begin(), inputs.end());
    std::set<std::string> output_set(outputs.begin(), outputs.end());
    for (const auto& s : states) {
        auto it = output.find(s);
        if (it == output.end())
            throw ValidationError("machine '" + name + "': no output for state '" + s + "'");
        if (!output_set.count(it->second))
            throw ValidationError("machine '" + name + "': output symbol '" + it->second +
                                  "' not in output alphabet");
        for (const auto& x : inputs) {
            auto t = transition.find({s, x});
            if (t == transition.end())
                throw ValidationError("machine '" + name + "': partial transition table, missing (" + s +
                                      ", " + x + ")");
            if (!state_set.count(t->second))
                throw ValidationError("machine '" + name + "': transition target '" + t->second +
                                      "' not a state");
        }
    }
    if (transition.size() != states.size() * inputs.size())
        throw ValidationError("machine '" + name + "': transition entries for undeclared pairs");
    for (const auto& [s, x] : transition) {
        (void)x;
        if (!state_set.count(s.first) || !input_set.count(s.second))
            throw ValidationError("machine '" + name + "': transition from unknown (state, input)");
    }
    for (const auto& [s, a] : aliases) {
        (void)a;
        if (!state_set.count(s))
            throw ValidationError("machine '" + name + "': alias for unknown state '" + s + "'");
    }
}

bool EncodedMachine::has_state(const std::string& s) const {
    return std::find(states.begin(), states.end(), s) != states.end();
}

bool EncodedMachine::has_input(const std::string& x) const {
    return std::find(inputs.begin(), inputs.end(), x) != inputs.end();
}

std::pair<std::string, std::string> step(const EncodedMachine& m, const std::string& state,
                                         const std::string& input) {
    if (!m.has_state(state)) throw UnknownState("machine '" + m.name + "': unknown state '" + state + "'");
    if (!m.has_input(input)) throw UnknownInput("machine '" + m.name + "': unknown input '" + input + "'");
    const std::string& next = m.transition.at({state, input});
    return {next, m.output.at(next)};
}

Trace run(const EncodedMachine& m, const std::vector<std::string>& inputs) {
    Trace t;
    t.inputs = inputs;
    t.states.push_back(m.initial);
    t.outputs.push_back(m.output.at(m.initial));
    std::string cur = m.initial;
    for (const auto& x : inputs) {
        auto [next, out] = step(m, cur, x);
        t.states.push_back(next);
        t.outputs.push_back(out);
        cur = next;
    }
    return t;
}

std::set<std::string> reachable_states(const EncodedMachine& m) {
    std::set<std::string> seen{m.initial};
    std::deque<std::string> work{m.initial};
    std::vector<std::string> sorted_inputs = m.inputs;
    std::sort(sorted_inputs.begin(), sorted_inputs.end());
    while (!work.empty()) {
        std::string s = work.front();
        work.pop_front();
        for (const auto& x : sorted_inputs) {
            const std::string& next = m.transition.at({s, x});
            if (seen.insert(next).second) work.push_back(next);
        }
    }
    return seen;
}

bool ComponentGraph::has_cycle() const {
    // DFS with colors over the bit nodes.
    std::vector<std::vector<uint32_t>> adj(width);
    for (const auto& [j, i] : edges) adj[j].push_back(i);
    std::vector<int> color(width, 0);
    std::function<bool(uint32_t)> visit = [&](uint32_t v) {
        color[v] = 1;
        for (uint32_t w : adj[v]) {
            if (color[w] == 1) return true;
            if (color[w] == 0 && visit(w)) return true;
        }
        color[v] = 2;
        return false;
    };
    for (uint32_t v = 0; v < width; ++v)
        if (color[v] == 0 && visit(v)) return true;
    return false;
}

ComponentGraph dependency_graph(const EncodedMachine& m) {
    ComponentGraph g;
    g.width = m.width;
    std::set<std::string> reach = reachable_states(m);
    for (const auto& s : reach) {
        for (uint32_t j = 0; j < m.width; ++j) {
            std::string flipped = s;
            flipped[j] = flipped[j] == '0' ? '1' : '0';
            // Flips landing outside the reachable state set are skipped: the
            // machine is only defined on its declared states.
            if (!reach.count(flipped)) continue;
            for (const auto& x : m.inputs) {
                const std::string& a = m.transition.at({s, x});
                const std::string& b = m.transition.at({flipped, x});
                for (uint32_t i = 0; i < m.width; ++i)
                    if (a[i] != b[i]) g.edges.insert({j, i});
            }
        }
    }
    return g;
}

bool io_equivalent(const EncodedMachine& m1, const EncodedMachine& m2, uint32_t horizon,
                   uint64_t budget) {
    auto in1 = m1.inputs, in2 = m2.inputs;
    std::sort(in1.begin(), in1.end());
    std::sort(in2.begin(), in2.end());
    if (in1 != in2) throw AlphabetMismatch("io_equivalent: input alphabets differ");
    auto out1 = m1.outputs, out2 = m2.outputs;
    std::sort(out1.begin(), out1.end());
    std::sort(out2.begin(), out2.end());
    if (out1 != out2) throw AlphabetMismatch("io_equivalent: output alphabets differ");

    uint64_t count = 1; // the empty sequence
    uint64_t per_level = 1;
    for (uint32_t l = 1; l <= horizon; ++l) {
        per_level *= in1.size();
        count += per_level;
        if (count > budget)
            throw HorizonTooLarge("io_equivalent: " + std::to_string(count) +
                                  " sequences exceed budget " + std::to_string(budget));
    }

    if (m1.output.at(m1.initial) != m2.output.at(m2.initial)) return false;
    // Depth-first walk of the product machine; equivalent to enumerating all
    // input sequences of length <= horizon.
    std::function<bool(const std::string&, const std::string&, uint32_t)> walk =
        [&](const std::string& s1, const std::string& s2, uint32_t depth) {
            if (depth == horizon) return true;
            for (const auto& x : in1) {
                const std::string& n1 = m1.transition.at({s1, x});
                const std::string& n2 = m2.transition.at({s2, x});
                if (m1.output.at(n1) != m2.output.at(n2)) return false;
                if (!walk(n1, n2, depth + 1)) return false;
            }
            return true;
        };
    return walk(m1.initial, m2.initial, 0);
}

namespace {

EncodedMachine cycle_machine(std::string name, uint32_t width, std::vector<std::string> phase_labels,
                             const std::string& gate_phase_label) {
    // Phases A..H in order; single "car" input advances the cycle; the gate
    // output is raised on the H phase (every 8th vehicle).
    EncodedMachine m;
    m.name = std::move(name);
    m.width = width;
    m.states = phase_labels;
    m.inputs = {"car"};
    m.outputs = {"0", "1"};
    m.initial = phase_labels[0];
    static const char* kPhaseNames = "ABCDEFGH";
    for (size_t i = 0; i < phase_labels.size(); ++i) {
        m.transition[{phase_labels[i], "car"}] = phase_labels[(i + 1) % phase_labels.size()];
        m.output[phase_labels[i]] = phase_labels[i] == gate_phase_label ? "1" : "0";
        m.aliases[phase_labels[i]] = std::string(1, kPhaseNames[i]);
    }
    m.validate();
    return m;
}

} // namespace

EncodedMachine mod8_feedback() {
    // A 3-bit feedback shift register whose state sequence covers the full
    // cube; every bit's next value depends on the current state, so the
    // component graph is cyclic.
    return cycle_machine("mod8_feedback", 3,
                         {"000", "010", "101", "110", "111", "011", "001", "100"}, "100");
}

EncodedMachine mod8_feedforward() {
    // Same counter phases, encoded as 4-bit even-parity words (the 3-bit
    // phase pattern plus a parity bit). Any single-bit flip has odd parity
    // and leaves the state set, so no dependency edge is measurable.
    return cycle_machine("mod8_feedforward", 4,
                         {"0000", "0101", "0110", "1100", "0011", "1010", "1001", "1111"}, "1111");
}

namespace {

EncodedMachine machine_from_json(const json& j, const std::string& origin) {
    if (!j.is_object()) throw ParseError(origin + ": machine file must be a JSON object");
    EncodedMachine m;
    try {
        m.name = j.value("name", origin);
        for (const auto& s : j.at("states")) m.states.push_back(s.get<std::string>());
        if (m.states.empty()) throw ValidationError(origin + ": machine has no states");
        m.width = static_cast<uint32_t>(m.states.front().size());
        for (const auto& s : j.at("inputs")) m.inputs.push_back(s.get<std::string>());
        for (const auto& s : j.at("outputs")) m.outputs.push_back(s.get<std::string>());
        m.initial = j.at("initial").get<std::string>();
        if (j.contains("output"))
            for (const auto& [state, out] : j.at("output").items())
                m.output[state] = out.get<std::string>();
        for (const auto& row : j.at("transitions")) {
            if (!row.is_array() || (row.size() != 3 && row.size() != 4))
                throw ValidationError(origin + ": transitions rows must be [state, input, next] or "
                                               "[state, input, next, output-of-next]");
            std::string from = row[0].get<std::string>();
            std::string input = row[1].get<std::string>();
            std::string to = row[2].get<std::string>();
            auto key = std::make_pair(from, input);
            if (m.transition.count(key))
                throw ValidationError(origin + ": duplicate transition for (" + from + ", " + input + ")");
            m.transition[key] = to;
            if (row.size() == 4) {
                std::string out = row[3].get<std::string>();
                auto it = m.output.find(to);
                if (it != m.output.end() && it->second != out)
                    throw ValidationError(origin + ": conflicting outputs declared for state '" + to + "'");
                m.output[to] = out;
            }
        }
        if (j.contains("aliases"))
            for (const auto& [state, alias] : j.at("aliases").items())
                m.aliases[state] = alias.get<std::string>();
    } catch (const json::exception& e) {
        throw ParseError(origin + ": " + e.what());
    }
    m.validate();
    return m;
}

} // namespace

EncodedMachine machine_from_json_text(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw ParseError(std::string("machine JSON: ") + e.what());
    }
    return machine_from_json(j, "machine");
}

EncodedMachine load_machine(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open machine file '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    json j;
    try {
        j = json::parse(ss.str());
    } catch (const json::exception& e) {
        throw ParseError(path + ": " + e.what());
    }
    return machine_from_json(j, path);
}

std::string machine_to_json_text(const EncodedMachine& m) {
    json j;
    j["name"] = m.name;
    j["states"] = m.states;
    j["inputs"] = m.inputs;
    j["outputs"] = m.outputs;
    j["initial"] = m.initial;
    json out = json::object();
    for (const auto& [s, o] : m.output) out[s] = o;
    j["output"] = out;
    json rows = json::array();
    for (const auto& [key, to] : m.transition) rows.push_back({key.first, key.second, to});
    j["transitions"] = rows;
    if (!m.aliases.empty()) {
        json al = json::object();
        for (const auto& [s, a] : m.aliases) al[s] = a;
        j["aliases"] = al;
    }
    return j.dump(2) + "\n";
}

} // namespace substrate
